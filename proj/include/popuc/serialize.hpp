#ifndef POPUC_SERIALIZE_HPP
#define POPUC_SERIALIZE_HPP

#include <cstdio>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "popuc/complex_poly.hpp"
#include "popuc/measures.hpp"
#include "popuc/zeros.hpp"

namespace popuc::io {

/// Fixed 17-significant-digit formatting; the value round-trips exactly and
/// the output is byte-stable across runs.
inline std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

/// Minimal ordered JSON document builder. nlohmann/json is used for input
/// parsing, but its dump() emits shortest-round-trip floats; output here
/// must be byte-identical with a fixed float format, hence this writer.
class Json {
public:
    using Array = std::vector<Json>;
    using Object = std::vector<std::pair<std::string, Json>>;

    Json() : value_(nullptr) {}

    static Json object() {
        Json j;
        j.value_ = Object{};
        return j;
    }
    static Json array() {
        Json j;
        j.value_ = Array{};
        return j;
    }
    static Json number(double v) {
        Json j;
        j.value_ = v;
        return j;
    }
    static Json integer(long v) {
        Json j;
        j.value_ = v;
        return j;
    }
    static Json boolean(bool v) {
        Json j;
        j.value_ = v;
        return j;
    }
    static Json str(std::string v) {
        Json j;
        j.value_ = std::move(v);
        return j;
    }
    static Json complex(cplx z) {
        Json j = array();
        j.push(number(z.real()));
        j.push(number(z.imag()));
        return j;
    }

    Json& set(const std::string& key, Json v) {
        std::get<Object>(value_).emplace_back(key, std::move(v));
        return *this;
    }
    Json& push(Json v) {
        std::get<Array>(value_).push_back(std::move(v));
        return *this;
    }

    std::string dump(int indent = 2) const {
        std::string out;
        write(out, indent, 0);
        out.push_back('\n');
        return out;
    }

private:
    std::variant<std::nullptr_t, bool, long, double, std::string, Array, Object> value_;

    static void write_escaped(std::string& out, const std::string& s) {
        out.push_back('"');
        for (char ch : s) {
            switch (ch) {
                case '"': out += "\\\""; break;
                case '\\': out += "\\\\"; break;
                case '\n': out += "\\n"; break;
                case '\t': out += "\\t"; break;
                case '\r': out += "\\r"; break;
                default:
                    if (static_cast<unsigned char>(ch) < 0x20) {
                        char buf[8];
                        std::snprintf(buf, sizeof(buf), "\\u%04x", ch);
                        out += buf;
                    } else {
                        out.push_back(ch);
                    }
            }
        }
        out.push_back('"');
    }

    void write(std::string& out, int indent, int depth) const {
        const std::string pad(std::size_t(indent) * std::size_t(depth), ' ');
        const std::string pad_in(std::size_t(indent) * std::size_t(depth + 1), ' ');
        if (std::holds_alternative<std::nullptr_t>(value_)) {
            out += "null";
        } else if (auto* b = std::get_if<bool>(&value_)) {
            out += *b ? "true" : "false";
        } else if (auto* i = std::get_if<long>(&value_)) {
            out += std::to_string(*i);
        } else if (auto* d = std::get_if<double>(&value_)) {
            out += format_g17(*d);
        } else if (auto* s = std::get_if<std::string>(&value_)) {
            write_escaped(out, *s);
        } else if (auto* a = std::get_if<Array>(&value_)) {
            if (a->empty()) {
                out += "[]";
                return;
            }
            // arrays of scalars stay on one line; nested structures wrap
            bool scalar = true;
            for (const auto& v : *a)
                scalar = scalar && !std::holds_alternative<Object>(v.value_) &&
                         !std::holds_alternative<Array>(v.value_);
            if (scalar) {
                out.push_back('[');
                for (std::size_t i = 0; i < a->size(); ++i) {
                    if (i) out += ", ";
                    (*a)[i].write(out, indent, depth);
                }
                out.push_back(']');
            } else {
                out += "[\n";
                for (std::size_t i = 0; i < a->size(); ++i) {
                    out += pad_in;
                    (*a)[i].write(out, indent, depth + 1);
                    if (i + 1 < a->size()) out.push_back(',');
                    out.push_back('\n');
                }
                out += pad + "]";
            }
        } else if (auto* o = std::get_if<Object>(&value_)) {
            if (o->empty()) {
                out += "{}";
                return;
            }
            out += "{\n";
            for (std::size_t i = 0; i < o->size(); ++i) {
                out += pad_in;
                write_escaped(out, (*o)[i].first);
                out += ": ";
                (*o)[i].second.write(out, indent, depth + 1);
                if (i + 1 < o->size()) out.push_back(',');
                out.push_back('\n');
            }
            out += pad + "}";
        }
    }
};

inline Json sequence_json(const std::string& name, long start_index,
                          std::span<const double> values) {
    Json j = Json::object();
    j.set("name", Json::str(name));
    j.set("start_index", Json::integer(start_index));
    Json arr = Json::array();
    for (double v : values) arr.push(Json::number(v));
    j.set("values", std::move(arr));
    return j;
}

inline Json sequence_json(const std::string& name, long start_index,
                          std::span<const cplx> values) {
    Json j = Json::object();
    j.set("name", Json::str(name));
    j.set("start_index", Json::integer(start_index));
    Json arr = Json::array();
    for (const cplx& v : values) arr.push(Json::complex(v));
    j.set("values", std::move(arr));
    return j;
}

inline Json polynomial_json(const std::string& name, const ComplexPoly& p) {
    Json j = Json::object();
    j.set("name", Json::str(name));
    j.set("degree", Json::integer(long(p.degree())));
    Json arr = Json::array();
    for (const cplx& c : p.coeffs()) arr.push(Json::complex(c));
    j.set("coeffs", std::move(arr));
    return j;
}

inline Json moment_table_json(const MomentTable& t) {
    const auto map_json = [](const std::map<int, cplx>& m) {
        Json j = Json::object();
        if (m.empty()) {
            j.set("start_index", Json::integer(0));
            j.set("values", Json::array());
            return j;
        }
        j.set("start_index", Json::integer(m.begin()->first));
        Json arr = Json::array();
        for (const auto& [k, v] : m) arr.push(Json::complex(v)); // std::map is index-ordered
        j.set("values", std::move(arr));
        return j;
    };
    Json j = Json::object();
    j.set("d1", Json::number(t.d1));
    j.set("scale", Json::number(t.scale));
    j.set("nu", map_json(t.nu));
    if (!t.mu_hat.empty()) j.set("mu_hat", map_json(t.mu_hat));
    if (!t.mu_tilde.empty()) j.set("mu_tilde", map_json(t.mu_tilde));
    return j;
}

inline Json quadrature_json(const QuadratureRule& rule) {
    Json j = Json::object();
    j.set("level", Json::integer(long(rule.level)));
    j.set("kind", Json::str(rule.kind == RuleKind::hat ? "hat" : "tilde"));
    Json th = Json::array();
    for (double a : rule.angles) th.push(Json::number(a));
    j.set("theta", std::move(th));
    Json w = Json::array();
    for (double x : rule.weights) w.push(Json::number(x));
    j.set("weights", std::move(w));
    if (rule.mass_at_one) j.set("mass_at_one", Json::number(*rule.mass_at_one));
    return j;
}

/// CSV with header j,theta,weight. A tilde rule's mass at angle 0 becomes
/// the j = 0 row; plain zero sets (no rule) write weight 0.
inline std::string zeros_weights_csv(std::span<const double> angles,
                                     const QuadratureRule* rule = nullptr) {
    std::string out = "j,theta,weight\n";
    if (rule && rule->mass_at_one)
        out += "0," + format_g17(0.0) + "," + format_g17(*rule->mass_at_one) + "\n";
    for (std::size_t j = 0; j < angles.size(); ++j) {
        const double w = rule ? rule->weights[j] : 0.0;
        out += std::to_string(j + 1) + "," + format_g17(angles[j]) + "," + format_g17(w) + "\n";
    }
    return out;
}

} // namespace popuc::io

#endif
