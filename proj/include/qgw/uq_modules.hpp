#pragma once

#include "qgw/matrix.hpp"
#include "qgw/uq_algebra.hpp"

#include <string>
#include <utility>
#include <vector>

namespace qgw {

/// Finite-dimensional weight module: basis of weight vectors and the
/// generator matrices in that basis. For numeric Verma modules with complex
/// highest weight the actual weights are weightShift + weights[i].
struct WeightModule {
    Field field;
    std::vector<HalfInt> weights;
    cplx weightShift = 0;
    Mat E, F, K, Kinv;
    std::string label;

    int dim() const { return static_cast<int>(weights.size()); }
};

WeightModule irreducible(const Field& f, HalfInt m);
/// Cached spin-m irreducible (shared, immutable).
const WeightModule& irrep(const Field& f, HalfInt m);
WeightModule verma(const Field& f, HalfInt m, int depth);
WeightModule verma(const Field& f, cplx m, int depth);
WeightModule tensor(const WeightModule& a, const WeightModule& b);
WeightModule dual(const WeightModule& a);

/// Matrix of a PBW element acting on the module.
Mat act(const WeightModule& mod, const PBWElement& x);

/// Residuals of KE = q^2 EK, KF = q^-2 FK and [E,F] = (K - K^-1)/(q - q^-1)
/// applied to the first `cols` basis vectors (all when cols < 0). Returns the
/// largest entry magnitude (exact mode: 0 when all vanish, 1 otherwise).
double relationResidual(const WeightModule& mod, int cols = -1);

struct CGSummand {
    HalfInt k;
    Mat incl;  // (d1 d2) x (2k+1)
    Mat proj;  // (2k+1) x (d1 d2)
};

struct CGDecomposition {
    HalfInt m1, m2;
    std::vector<CGSummand> summands;  // k descending
    const CGSummand* find(HalfInt k) const;
};

/// Decomposition of V(m1) (x) V(m2) with biorthogonal inclusions and
/// projections. Memoized per (field, m1, m2).
const CGDecomposition& clebschGordan(const Field& f, HalfInt m1, HalfInt m2);

/// Basis of ker(E) grouped by weight; vectors normalized so the first nonzero
/// coordinate is 1.
std::vector<std::pair<HalfInt, Mat>> highestWeightVectors(const WeightModule& mod);

/// Desk-scale check of 0 -> M(-m-1) -> M(m) -> V(m) -> 0 on a truncated window.
struct BGGReport {
    bool singularAnnihilated = false;
    bool submoduleMatches = false;
    bool quotientMatches = false;
    bool dimensionsMatch = false;
    bool ok() const { return singularAnnihilated && submoduleMatches && quotientMatches && dimensionsMatch; }
};
BGGReport bggCheck(const Field& f, HalfInt m, int depth);

std::string toJson(const WeightModule& mod);

}  // namespace qgw
