#pragma once

#include "qgw/okq_functions.hpp"

#include <string>

namespace qgw::cli {

/// Elements of O(K_q) from text: alpha, beta, gamma, delta, u(m,i,j), the
/// scalars q, v, i (numeric mode) and numbers, combined with + - * /, ^n and
/// ^* (star). Juxtaposition multiplies, so "2v^2" is accepted.
PWFunction parsePW(const Field& f, const std::string& text);

/// A text that evaluates to a multiple of the unit.
Scalar parseScalar(const Field& f, const std::string& text);

/// Complex number: "0.3+0.2i", "-1", "2i"; a trailing "/hbar" divides by
/// log(q)/2pi.
cplx parseComplex(const std::string& text, double q);

/// "1/2", "0.5" or "3" as a positive real.
double parseReal(const std::string& text);

}  // namespace qgw::cli
