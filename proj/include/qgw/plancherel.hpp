#pragma once

#include "qgw/principal_series.hpp"

#include <string>
#include <vector>

namespace qgw {

/// hbar = log(q) / 2 pi; the circle t_q has length |1/hbar|.
double hbar(double q);
double circleLength(double q);

/// (q^z - q^-z) / (q - q^-1).
cplx qnumComplex(double q, cplx z);

/// Point (mu, lambda) of the unitary dual; lambda is the real angle on t_q
/// and labels the representation with parameter i lambda.
struct PlancherelPoint {
    HalfInt mu;
    double lam = 0;
    double density = 0;  // |[mu + i lambda]_q|^2 / 2
};
PlancherelPoint plancherelPoint(double q, HalfInt mu, double lam);

/// Uniform nodes on t_q and the values of mu where an integrand can be nonzero.
struct QuadratureGrid {
    int N = 0;
    std::vector<double> nodes;
    std::vector<HalfInt> mus;
};
/// Angular frequency bound of the integrand for DK spins <= windowTwice/2.
int frequencyBound(int windowTwice);
int defaultNodes(int windowTwice);
QuadratureGrid quadratureGrid(double q, int N, int maxDKTwice);

/// sum_m dim_q V(m) Tr(x_m pi_m(q^-H)).
Scalar haarPsiHat(const DKElement& x);
/// phi(a) psiHat(x).
Scalar haarPhiG(const PWFunction& a, const DKElement& x);

/// u = |v_i><v^j| on V(m) times <v^k| . |v_l> on V(m').
DoubleElement specialElement(const Field& f, HalfInt m, HalfInt mp, int i, int j, int k, int l);

/// Tr(pi(u) pi(q^-H)) at (mu, i lambda). Finite because the DK legs of u act
/// with finite rank. Throws std::invalid_argument for DK legs equal to the
/// unit and std::out_of_range when the window is below a DK spin of u.
cplx plancherelIntegrand(double q, const DoubleElement& u, HalfInt mu, double lam, int windowTwice);

/// Tr(pi_{mu,lambda}(u)) without the Duflo-Moore factor.
cplx principalTrace(double q, const DoubleElement& u, HalfInt mu, cplx lam, int windowTwice);

struct PlancherelReport {
    double q = 0;
    int N = 0;
    int windowTwice = 0;
    bool special = false;
    cplx epsilon;
    cplx integral;
    double absError = 0;
    std::vector<std::pair<HalfInt, cplx>> perMu;
    cplx trace0Minus1;
    cplx trace10;
    std::string toJson() const;
};

/// Quadrature of the integrand against the measure, compared with eps(u).
/// Evaluation is spread over QGW_THREADS threads (default: hardware
/// concurrency); the reduction order is fixed.
PlancherelReport plancherelVerify(const DoubleElement& u, double q, int N, int windowTwice);

/// Thread cap from QGW_THREADS.
unsigned threadCount();

}  // namespace qgw
