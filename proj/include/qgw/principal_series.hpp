#pragma once

#include "qgw/gq_double.hpp"

#include <string>
#include <utility>
#include <vector>

namespace qgw {

/// Truncation of Gamma(E_mu): matrix coefficients <v^i| . |v_mu>_{V(m)} with
/// |mu| <= m <= window/2, m = mu mod 1. Ordered by spin, then i.
struct SectionSpace {
    HalfInt mu;
    int windowTwice = 0;
    std::vector<std::pair<int, int>> basis;  // (2m, i)

    int dim() const { return static_cast<int>(basis.size()); }
    /// Column of v_mu inside V(t/2).
    int column(int t) const { return (t - mu.twice()) / 2; }
    /// Position of (t, i), or -1 outside the window.
    int index(int t, int i) const;
    PWFunction element(const Field& f, int n) const;
    /// Coordinates of a section; components above the window are dropped.
    /// Throws std::domain_error when f has a component outside Gamma(E_mu).
    Mat toVector(const PWFunction& f) const;
    PWFunction fromVector(const Mat& v) const;
};

SectionSpace sectionSpace(HalfInt mu, int windowTwice);

/// Complex parameter lambda; exact mode requires an integer value.
struct Lambda {
    cplx z;
    bool integral = false;
    int n = 0;
    static Lambda integer(int n) { return {cplx(n, 0), true, n}; }
    static Lambda complex(cplx z) { return {z, false, 0}; }
};

/// Operator on a SectionSpace window. Columns of spin <= window - growth are
/// free of truncation effects.
struct PrincipalOp {
    Mat mat;
    int growthTwice = 0;
};

/// pi(x) f = f <| S(x): block-diagonal, S(x)_m^t on each spin.
PrincipalOp piDK(const Field& f, const SectionSpace& sec, const DKElement& x);
/// The same for an element of U_q acting through its image.
PrincipalOp piU(const Field& f, const SectionSpace& sec, const PBWElement& x);

/// Assignment of the three Sweedler legs a_(1) (x) a_(2) (x) a_(3) to the
/// roles P (paired with q^{(lambda+1)H}), L (left factor), R (right factor
/// under S), listed in leg order.
enum class LegOrder { PLR, PRL, LPR, LRP, RPL, RLP };
const std::vector<LegOrder>& allLegOrders();
std::string legOrderName(LegOrder o);
/// The assignment fixed by the selection tests.
inline constexpr LegOrder kLegOrder = LegOrder::LPR;

/// Lambda-free parts of piPW: pairs (w, M) with
/// piPW = sum_w q^{(lambda+1) w} M, w the doubled weight of the paired leg.
std::vector<std::pair<int, Mat>> piPWComponents(const Field& f, const SectionSpace& sec, const PWFunction& a,
                                                LegOrder order = kLegOrder);
/// q^{(lambda+1) w}.
Scalar lambdaWeight(const Field& f, const Lambda& lam, int w);

/// Twisted adjoint action of a on the window (output truncated to the window).
PrincipalOp piPW(const Field& f, const SectionSpace& sec, const Lambda& lam, const PWFunction& a,
                 LegOrder order = kLegOrder);

/// Haar inner product on the window basis.
Mat sectionGram(const Field& f, const SectionSpace& sec);

/// Largest entry of A - B over the columns of spin <= window - growth.
double interiorDistance(const SectionSpace& sec, const Mat& a, const Mat& b, int growthTwice);

/// Diagnostics for one leg order at (mu, lambda) on a window.
struct LegOrderReport {
    LegOrder order;
    bool preservesSections = false;
    double homomorphismResidual = 0;  // pi(ab) - pi(a) pi(b), interior columns
    double ydResidual = 0;
};
LegOrderReport legOrderReport(const Field& f, HalfInt mu, const Lambda& lam, int windowTwice, LegOrder order);

/// Yetter-Drinfeld compatibility of (piDK, piPW) on the window for DK samples
/// at spins <= window/2 and all a of spin 1/2.
YDReport principalYD(const Field& f, HalfInt mu, const Lambda& lam, int windowTwice, LegOrder order = kLegOrder);

/// Max over a sample of |<pi(u^*) f, g> - <f, pi(u) g>| for interior f, g.
/// The sample: spin-1/2 coefficients, identities at each spin, and the
/// images of K, E, F.
struct UnitarityReport {
    double maxDeviation = 0;
    int samples = 0;
};
UnitarityReport unitarityCheck(double q, HalfInt mu, cplx lam, int windowTwice);

/// Max entry difference of piPW for the spin-1/2 coefficients at lambda and
/// lambda + i/hbar, hbar = log(q)/(2 pi).
double periodicityResidual(double q, HalfInt mu, cplx lam, int windowTwice);

}  // namespace qgw
