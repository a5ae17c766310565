#pragma once

#include "qgw/uq_algebra.hpp"

#include <random>

namespace qgw {

/// Random PBW element: 1..maxTerms monomials of degree <= maxDegree with
/// small integer coefficients, optionally scaled by powers of v.
PBWElement randomPBW(const Field& f, std::mt19937_64& rng, int maxDegree = 4, int maxTerms = 3);

}  // namespace qgw
