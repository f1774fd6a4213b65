#ifndef POPUC_POPUC_HPP
#define POPUC_POPUC_HPP

// Umbrella header: para-orthogonal polynomials on the unit circle from
// three term recurrences, chain-sequence analysis, circle zeros and
// quadrature, and the Verblunsky-coefficient transforms.

#include "popuc/chain_sequence.hpp"
#include "popuc/complex_poly.hpp"
#include "popuc/errors.hpp"
#include "popuc/measures.hpp"
#include "popuc/recurrence.hpp"
#include "popuc/reference.hpp"
#include "popuc/serialize.hpp"
#include "popuc/special.hpp"
#include "popuc/transforms.hpp"
#include "popuc/verify.hpp"
#include "popuc/zeros.hpp"

#endif
