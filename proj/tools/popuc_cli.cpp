// popuc: generate para-orthogonal polynomial systems on the unit circle,
// run the Verblunsky/DG coefficient transforms, and verify the built-in
// explicit families against the pipeline.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "popuc/popuc.hpp"

namespace fs = std::filesystem;
using popuc::cplx;

namespace {

// exit codes of the external contract
constexpr int kExitVerifyFail = 1;
constexpr int kExitBadInput = 2;
constexpr int kExitChainViolation = 3;
constexpr int kExitAlphaOutOfDisk = 4;
constexpr int kExitSppcsRefusal = 5;

struct BadInput : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct AlphaOutOfDisk : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<double> parse_real_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            out.push_back(std::stod(tok));
        } catch (const std::exception&) {
            throw BadInput("cannot parse number '" + tok + "'");
        }
    }
    if (out.empty()) throw BadInput("empty numeric list");
    return out;
}

cplx parse_complex(const std::string& text) {
    const auto v = parse_real_list(text);
    if (v.size() == 1) return cplx(v[0]);
    if (v.size() == 2) return cplx(v[0], v[1]);
    throw BadInput("complex values are 're' or 're,im', got '" + text + "'");
}

nlohmann::json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw BadInput("cannot open file: " + path);
    try {
        return nlohmann::json::parse(in);
    } catch (const std::exception& e) {
        throw BadInput("malformed JSON in " + path + ": " + e.what());
    }
}

std::vector<cplx> parse_complex_values(const nlohmann::json& values) {
    std::vector<cplx> out;
    for (const auto& v : values) {
        if (v.is_number()) {
            out.emplace_back(v.get<double>());
        } else if (v.is_array() && v.size() == 2) {
            out.emplace_back(v[0].get<double>(), v[1].get<double>());
        } else {
            throw BadInput("sequence entries must be numbers or [re, im] pairs");
        }
    }
    return out;
}

/// --alpha accepts: "zeros" (with --n entries), a JSON sequence file, or an
/// inline comma-separated real list.
std::vector<cplx> load_alpha(const std::string& spec, std::size_t count) {
    std::vector<cplx> a;
    if (spec == "zeros") {
        a.assign(count, cplx(0.0));
    } else if (fs::exists(spec)) {
        const auto j = load_json_file(spec);
        if (!j.contains("values")) throw BadInput("sequence file needs a 'values' array");
        a = parse_complex_values(j["values"]);
    } else {
        for (double x : parse_real_list(spec)) a.emplace_back(x);
    }
    for (const cplx& x : a)
        if (!(std::abs(x) < 1.0)) throw AlphaOutOfDisk("|alpha| >= 1 in input");
    if (a.size() < count)
        throw BadInput("alpha sequence too short: need " + std::to_string(count) +
                       " entries, got " + std::to_string(a.size()));
    return a;
}

std::vector<double> load_real_sequence(const std::string& spec) {
    if (fs::exists(spec)) {
        const auto j = load_json_file(spec);
        if (!j.contains("values")) throw BadInput("sequence file needs a 'values' array");
        std::vector<double> out;
        for (const auto& v : parse_complex_values(j["values"])) {
            if (std::abs(v.imag()) > 0.0) throw BadInput("expected a real sequence");
            out.push_back(v.real());
        }
        return out;
    }
    return parse_real_list(spec);
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw BadInput("cannot write " + path.string());
    out << content;
}

struct Sink {
    fs::path dir;
    bool to_stdout = false;
    popuc::io::Json combined = popuc::io::Json::object();

    explicit Sink(const std::string& out) {
        if (out == "-") {
            to_stdout = true;
        } else {
            dir = out;
            fs::create_directories(dir);
        }
    }
    void add_json(const std::string& name, popuc::io::Json j) {
        if (to_stdout)
            combined.set(name, std::move(j));
        else
            write_file(dir / (name + ".json"), j.dump());
    }
    void add_csv(const std::string& name, const std::string& csv) {
        if (to_stdout)
            combined.set(name + "_csv", popuc::io::Json::str(csv));
        else
            write_file(dir / (name + ".csv"), csv);
    }
    void finish() {
        if (to_stdout) std::fputs(combined.dump().c_str(), stdout);
    }
};

struct GenerateOptions {
    int example = 0;
    std::size_t n = 8;
    double d1 = 0.25;
    double lambda = 0.5, eta = 0.0, t = 0.0;
    std::string c_text, d_text; // example 1: scalar c; otherwise inline lists/files
    std::string out = "out";
    std::string quadrature = "hat";
};

int cmd_generate(const GenerateOptions& opt) {
    std::vector<double> c, d;
    const std::size_t n = opt.n;
    const std::size_t levels = n + 2; // room for the nu extraction
    if (opt.example == 1) {
        const double cval = opt.c_text.empty() ? 0.0 : parse_real_list(opt.c_text).at(0);
        const popuc::reference::Example1 ex{cval, opt.d1};
        c = ex.c_seq(levels);
        d = ex.d_seq(levels);
    } else if (opt.example == 2) {
        const popuc::reference::Example2 ex{opt.t};
        std::vector<cplx> a(levels);
        for (std::size_t i = 0; i < levels; ++i) a[i] = ex.alpha(i);
        const auto dg1 =
            popuc::t_family(popuc::VerblunskySeq(a), cplx(0.5), opt.t, levels - 1);
        c = dg1.c;
        d.assign(1, opt.d1);
        d.insert(d.end(), dg1.d_tail.begin(), dg1.d_tail.end());
    } else if (opt.example == 3) {
        const popuc::reference::Example3 ex(opt.lambda, opt.eta, opt.d1);
        c = ex.c_seq(levels);
        d = ex.d_seq(levels);
    } else {
        if (opt.c_text.empty() || opt.d_text.empty())
            throw BadInput("generate needs either --example or both --c and --d");
        c = load_real_sequence(opt.c_text);
        d = load_real_sequence(opt.d_text);
    }
    if (c.size() < n || d.size() < n)
        throw BadInput("need c and d through index n = " + std::to_string(n));

    const std::size_t N = std::min({c.size(), d.size(), levels});
    const auto pair = popuc::generate_rq(c, d, N);

    Sink sink(opt.out);

    popuc::io::Json polys = popuc::io::Json::array();
    for (std::size_t k = 0; k <= n; ++k)
        polys.push(popuc::io::polynomial_json("R_" + std::to_string(k), pair.R(k)));
    for (std::size_t k = 1; k <= n; ++k) {
        polys.push(popuc::io::polynomial_json("Q_" + std::to_string(k), pair.Q(k)));
        polys.push(popuc::io::polynomial_json("A_hat_" + std::to_string(k),
                                              popuc::a_hat(pair, k)));
    }
    popuc::io::Json polydoc = popuc::io::Json::object();
    polydoc.set("level", popuc::io::Json::integer(long(n)));
    polydoc.set("polynomials", std::move(polys));
    sink.add_json("polynomials", std::move(polydoc));

    const auto ladder = popuc::zero_ladder(pair, n);
    const auto hat = popuc::quadrature_hat(pair, ladder[n - 1]);
    sink.add_csv("zeros", popuc::io::zeros_weights_csv(ladder[n - 1].angles, &hat));
    if (opt.quadrature == "tilde") {
        const auto tilde = popuc::quadrature_tilde(pair, ladder[n - 1]);
        sink.add_csv("quadrature", popuc::io::zeros_weights_csv(ladder[n - 1].angles, &tilde));
    } else {
        sink.add_csv("quadrature", popuc::io::zeros_weights_csv(ladder[n - 1].angles, &hat));
    }

    if (N >= 3) {
        auto table = popuc::nu_table(pair, int(N) - 2);
        popuc::mu_hat_moments(table);
        if (popuc::is_positive_chain(pair.d_seq(), N).ok) popuc::mu_tilde_moments(table);
        sink.add_json("moments", popuc::io::moment_table_json(table));
    }
    sink.finish();
    return 0;
}

struct TransformOptions {
    std::string direction;
    std::string alpha = "zeros";
    std::string c_list, d_list;
    std::string rho0 = "-1";
    std::string I_text;
    int example = 0;
    double t = 0.0, M0 = 0.0, d1 = 0.25, lambda = 0.5, eta = 0.0, c1 = 0.0;
    std::size_t n = 16;
    std::string out = "-";
};

/// I for the measure selected by --example (or --I).
cplx resolve_I(const TransformOptions& opt) {
    if (!opt.I_text.empty()) return parse_complex(opt.I_text);
    if (opt.example == 1 || opt.example == 2) return cplx(0.5);
    if (opt.example == 3)
        return popuc::pv_integral(
                   {popuc::BuiltinMeasure::example3_weight, 0.0, opt.lambda, opt.eta})
            .I;
    return cplx(0.5);
}

std::vector<cplx> resolve_alpha(const TransformOptions& opt, std::size_t count) {
    if (opt.example == 2) {
        const popuc::reference::Example2 ex{opt.t};
        std::vector<cplx> a(std::max<std::size_t>(count, opt.n + 1));
        for (std::size_t i = 0; i < a.size(); ++i) a[i] = ex.alpha(i);
        return a;
    }
    if (opt.example == 3) {
        const popuc::reference::Example3 ex(opt.lambda, opt.eta, opt.d1);
        std::vector<cplx> a(std::max<std::size_t>(count, opt.n + 1));
        for (std::size_t i = 0; i < a.size(); ++i) a[i] = ex.alpha_hat(i);
        return a;
    }
    if (opt.example == 1) return std::vector<cplx>(count, cplx(0.0));
    return load_alpha(opt.alpha, count);
}

int cmd_transform(const TransformOptions& opt) {
    Sink sink(opt.out);
    const std::size_t n = opt.n;

    if (opt.direction == "opuc-to-dg1") {
        const popuc::VerblunskySeq alpha(resolve_alpha(opt, n));
        const cplx rho0 = parse_complex(opt.rho0);
        const auto dg1 = popuc::dg1_from_opuc(alpha, rho0, n);
        sink.add_json("c", popuc::io::sequence_json("c", 1, dg1.c));
        sink.add_json("d", popuc::io::sequence_json("d", 2, dg1.d_tail));
        sink.add_json("m", popuc::io::sequence_json("mfrak", 0, dg1.m));
        // round-trip residual through the recurrence and back
        const auto pair = popuc::dg1_to_recurrence(dg1, opt.d1, n + 1);
        const auto back = popuc::opuc_from_dg1(pair, n);
        double resid = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            resid = std::max(resid, std::abs(back.alpha[i] - alpha[i]));
        popuc::io::Json rep = popuc::io::Json::object();
        rep.set("round_trip_max_residual", popuc::io::Json::number(resid));
        sink.add_json("consistency", std::move(rep));
    } else if (opt.direction == "dg1-to-opuc") {
        if (opt.c_list.empty() || opt.d_list.empty())
            throw BadInput("dg1-to-opuc needs --c and --d (d starts at d_1)");
        const auto c = load_real_sequence(opt.c_list);
        const auto d = load_real_sequence(opt.d_list);
        if (c.size() < n + 1 || d.size() < n + 1)
            throw BadInput("need c and d through index n+1");
        const auto pair = popuc::generate_rq(c, d, n + 1);
        const auto res = popuc::opuc_from_dg1(pair, n);
        sink.add_json("alpha_hat", popuc::io::sequence_json("alpha_hat", 0, res.alpha.values()));
        sink.add_json("kappa_inv_sq",
                      popuc::io::sequence_json("kappa_inv_sq", 0, res.kappa_inv_sq));
        // round trip back through the coefficient map
        const cplx rho0 = -std::conj(cplx(1.0, c[0])) / cplx(1.0, c[0]);
        const auto dg1 = popuc::dg1_from_opuc(res.alpha, rho0, n);
        double resid = 0.0;
        for (std::size_t k = 0; k < n; ++k)
            resid = std::max(resid, std::abs(dg1.c[k] - c[k]));
        for (std::size_t k = 0; k + 1 < n; ++k)
            resid = std::max(resid, std::abs(dg1.d_tail[k] - d[k + 1]));
        popuc::io::Json rep = popuc::io::Json::object();
        rep.set("round_trip_max_residual", popuc::io::Json::number(resid));
        sink.add_json("consistency", std::move(rep));
    } else if (opt.direction == "dg2-tilde") {
        if (opt.c_list.empty() || opt.d_list.empty())
            throw BadInput("dg2-tilde needs --c and --d (a full positive chain sequence)");
        const auto c = load_real_sequence(opt.c_list);
        const auto d = load_real_sequence(opt.d_list);
        if (c.size() < n || d.size() < n) throw BadInput("need c and d through index n");
        const auto pair = popuc::generate_rq(c, d, std::min(c.size(), d.size()));
        const auto res = popuc::opuc_tilde_from_dg2(pair, n);
        sink.add_json("alpha_tilde",
                      popuc::io::sequence_json("alpha_tilde", 0, res.alpha.values()));
        popuc::io::Json rep = popuc::io::Json::object();
        rep.set("M0", popuc::io::Json::number(res.M0));
        rep.set("M0_converged", popuc::io::Json::boolean(res.M0_converged));
        sink.add_json("consistency", std::move(rep));
    } else if (opt.direction == "applic1") {
        const popuc::VerblunskySeq alpha(resolve_alpha(opt, n + 1));
        const auto ah = popuc::weight_transform_forward(alpha, n);
        sink.add_json("alpha_hat", popuc::io::sequence_json("alpha_hat", 0, ah.values()));
    } else if (opt.direction == "applic2") {
        const popuc::VerblunskySeq alpha(resolve_alpha(opt, n));
        const cplx I = resolve_I(opt);
        const auto at = popuc::weight_transform_inverse(alpha, opt.M0, I, n);
        sink.add_json("alpha_tilde", popuc::io::sequence_json("alpha_tilde", 0, at.values()));
    } else if (opt.direction == "t-family") {
        const popuc::VerblunskySeq alpha(resolve_alpha(opt, n));
        const cplx I = resolve_I(opt);
        const auto dg1 = popuc::t_family(alpha, I, opt.t, n);
        sink.add_json("c", popuc::io::sequence_json("c", 1, dg1.c));
        sink.add_json("d", popuc::io::sequence_json("d", 2, dg1.d_tail));
        sink.add_json("m", popuc::io::sequence_json("mfrak", 0, dg1.m));
    } else if (opt.direction == "dg-symmetric") {
        const auto a = resolve_alpha(opt, n + 1);
        std::vector<double> ar;
        ar.reserve(a.size());
        for (const cplx& x : a) {
            if (std::abs(x.imag()) > 0.0)
                throw BadInput("dg-symmetric needs real Verblunsky coefficients");
            ar.push_back(x.real());
        }
        const auto coeffs = popuc::dg_symmetric_coeffs(ar, n);
        sink.add_json("d1_kind", popuc::io::sequence_json("d_first_kind", 2, coeffs.d1_seq));
        sink.add_json("d2_kind", popuc::io::sequence_json("d_second_kind", 2, coeffs.d2_seq));
    } else {
        throw BadInput("unknown transform direction: " + opt.direction);
    }
    sink.finish();
    return 0;
}

struct VerifyOptions {
    int example = 1;
    double c = 0.0, d1 = 0.25, t = 0.0, lambda = 0.5, eta = 0.0;
    std::size_t n = 30;
    double tol = 1e-10;
};

int cmd_verify(const VerifyOptions& opt) {
    std::vector<popuc::verify::CheckResult> checks;
    if (opt.example == 1) {
        checks = popuc::verify::example1_checks(opt.c, opt.d1, opt.n);
    } else if (opt.example == 2) {
        checks = popuc::verify::example2_checks(opt.t, opt.n);
    } else if (opt.example == 3) {
        checks = popuc::verify::example3_checks(opt.lambda, opt.eta, opt.d1, opt.n, opt.tol);
    } else {
        throw BadInput("verify needs --example 1, 2 or 3");
    }
    bool all = true;
    for (const auto& chk : checks) {
        all = all && chk.pass;
        std::printf("%s  %-42s max residual %.3e (tol %.1e)\n", chk.pass ? "PASS" : "FAIL",
                    chk.name.c_str(), chk.max_residual, chk.tolerance);
    }
    if (!all) std::fprintf(stderr, "verify: one or more checks failed\n");
    return all ? 0 : kExitVerifyFail;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"para-orthogonal polynomials on the unit circle: generation, "
                 "transforms, zeros and quadrature"};
    app.require_subcommand(1);

    GenerateOptions gen;
    auto* cg = app.add_subcommand("generate",
                                  "build R_n/Q_n systems, zeros, quadrature and moment tables");
    cg->add_option("--example", gen.example, "built-in family id (1, 2 or 3)");
    cg->add_option("--n", gen.n, "level to generate")->check(CLI::PositiveNumber);
    cg->add_option("--c", gen.c_text,
                   "example 1: scalar c; otherwise inline list or JSON file with c_1,c_2,...");
    cg->add_option("--d", gen.d_text, "inline list or JSON file with d_1,d_2,...");
    cg->add_option("--d1", gen.d1, "free d_1 (default 0.25)");
    cg->add_option("--lambda", gen.lambda, "example 3 lambda (> -1)");
    cg->add_option("--eta", gen.eta, "example 3 eta");
    cg->add_option("--t", gen.t, "example 2 family parameter");
    cg->add_option("--out", gen.out, "output directory, or - for stdout");
    cg->add_option("--quadrature", gen.quadrature, "hat (default) or tilde")
        ->check(CLI::IsMember({"hat", "tilde"}));

    TransformOptions tr;
    auto* ct = app.add_subcommand("transform", "coefficient maps between OPUC and DG data");
    ct->add_option("direction", tr.direction,
                   "opuc-to-dg1 | dg1-to-opuc | dg2-tilde | applic1 | applic2 | "
                   "t-family | dg-symmetric")
        ->required();
    ct->add_option("--alpha", tr.alpha, "'zeros', a JSON sequence file, or an inline list");
    ct->add_option("--c", tr.c_list, "inline list or JSON file with c_1,c_2,...");
    ct->add_option("--d", tr.d_list, "inline list or JSON file with d_1,d_2,...");
    ct->add_option("--rho0", tr.rho0, "seed rho_0, 're' or 're,im' (default -1)");
    ct->add_option("--I", tr.I_text, "principal value integral I, 're' or 're,im'");
    ct->add_option("--example", tr.example, "take alpha/I from a built-in measure (1, 2, 3)");
    ct->add_option("--t", tr.t, "t-family parameter");
    ct->add_option("--M0", tr.M0, "mass at z=1 for applic2")->check(CLI::Range(0.0, 0.999));
    ct->add_option("--d1", tr.d1, "free d_1 for round trips (default 0.25)");
    ct->add_option("--lambda", tr.lambda, "example 3 lambda");
    ct->add_option("--eta", tr.eta, "example 3 eta");
    ct->add_option("--n", tr.n, "output length")->check(CLI::PositiveNumber);
    ct->add_option("--out", tr.out, "output directory, or - for stdout (default)");

    VerifyOptions vf;
    auto* cv = app.add_subcommand("verify", "oracle-vs-pipeline comparison for an example");
    cv->add_option("--example", vf.example, "example id (1, 2 or 3)")->required();
    cv->add_option("--c", vf.c, "example 1 c");
    cv->add_option("--d1", vf.d1, "free d_1");
    cv->add_option("--t", vf.t, "example 2 t");
    cv->add_option("--lambda", vf.lambda, "example 3 lambda");
    cv->add_option("--eta", vf.eta, "example 3 eta");
    cv->add_option("--n", vf.n, "depth of the comparison")->check(CLI::PositiveNumber);
    cv->add_option("--tol", vf.tol, "primary tolerance (default 1e-10)")
        ->envname("POPUC_TOL");

    CLI11_PARSE(app, argc, argv);

    try {
        if (cg->parsed()) return cmd_generate(gen);
        if (ct->parsed()) return cmd_transform(tr);
        if (cv->parsed()) return cmd_verify(vf);
    } catch (const AlphaOutOfDisk& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitAlphaOutOfDisk;
    } catch (const popuc::SppcsRefusal& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitSppcsRefusal;
    } catch (const popuc::ChainError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitChainViolation;
    } catch (const BadInput& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitBadInput;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitVerifyFail;
    }
    return 0;
}
