#pragma once

#include "qgw/matrix.hpp"
#include "qgw/uq_algebra.hpp"

#include <compare>
#include <map>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace qgw {

/// Element of O(K_q) in Peter-Weyl coordinates: comp[2m] is the (2m+1)-square
/// matrix C with a = sum_ij C_ij <v^i| . |v_j>_{V(m)}.
class PWFunction {
public:
    PWFunction() = default;
    explicit PWFunction(const Field& f) : f_(f) {}

    static PWFunction zero(const Field& f) { return PWFunction(f); }
    static PWFunction unit(const Field& f);
    /// Matrix coefficient <v^i| . |v_j>_{V(m)}.
    static PWFunction coefficient(const Field& f, HalfInt m, int i, int j);
    static PWFunction component(HalfInt m, const Mat& c);

    const Field& field() const { return f_; }
    const std::map<int, Mat>& components() const { return comp_; }
    /// Component at spin m, zero matrix when absent.
    Mat at(HalfInt m) const;
    void set(HalfInt m, const Mat& c);
    void add(HalfInt m, const Mat& c);
    int maxTwice() const { return comp_.empty() ? -1 : comp_.rbegin()->first; }

    PWFunction operator+(const PWFunction& o) const;
    PWFunction operator-(const PWFunction& o) const;
    PWFunction operator-() const { return scaled(Scalar::integer(f_, -1)); }
    PWFunction scaled(const Scalar& s) const;
    bool isZero(double tol = kDefaultTol) const;
    bool equals(const PWFunction& o, double tol = kDefaultTol) const;
    double distance(const PWFunction& o) const;

    std::string toJson() const;

private:
    Field f_;
    std::map<int, Mat> comp_;
};

/// Basis matrix coefficient u^m_ij, m = t/2.
struct PWBasis {
    int t = 0, i = 0, j = 0;
    auto operator<=>(const PWBasis&) const = default;
};

PWFunction pwBasis(const Field& f, const PWBasis& b);

/// Sparse element of the n-fold tensor power of O(K_q) in the basis of
/// matrix coefficients.
class PWMulti {
public:
    PWMulti() = default;
    PWMulti(const Field& f, int arity) : f_(f), arity_(arity) {}

    static PWMulti fromFunction(const PWFunction& a);
    static PWMulti pure(const std::vector<PWFunction>& legs);

    const Field& field() const { return f_; }
    int arity() const { return arity_; }
    const std::map<std::vector<PWBasis>, Scalar>& terms() const { return terms_; }
    void add(const std::vector<PWBasis>& k, const Scalar& c);

    PWMulti operator+(const PWMulti& o) const;
    PWMulti operator-(const PWMulti& o) const;
    PWMulti scaled(const Scalar& s) const;
    bool isZero(double tol = kDefaultTol) const;
    bool equals(const PWMulti& o, double tol = kDefaultTol) const;
    PWFunction toFunction() const;

private:
    Field f_;
    int arity_ = 1;
    std::map<std::vector<PWBasis>, Scalar> terms_;
};
using PWTensor = PWMulti;

PWFunction pwMultiply(const PWFunction& a, const PWFunction& b);
/// Only the spin-k component of the product.
Mat pwMultiplySpin(const PWFunction& a, const PWFunction& b, HalfInt k);
PWTensor pwCoproduct(const PWFunction& a);
Scalar pwCounit(const PWFunction& a);
PWFunction pwAntipode(const PWFunction& a);
PWFunction pwAntipodeInverse(const PWFunction& a);
PWFunction pwStar(const PWFunction& a);

/// Delta applied to one leg.
PWMulti coproductLeg(const PWMulti& t, int leg);
/// eps applied to one leg.
PWMulti counitLeg(const PWMulti& t, int leg);
enum class PWLeg { Id, S, Star };
/// sum f(a1) g(a2) for a two-leg tensor.
PWFunction multiplyLegs(const PWMulti& t, PWLeg left, PWLeg right);
/// Leg-wise product of two tensors of equal arity.
PWMulti multiplyLegwise(const PWMulti& a, const PWMulti& b);
/// Map applied to every leg.
PWMulti mapLegs(const PWMulti& t, PWLeg map);

/// Skew pairing (X, a) = sum_m Tr(C_m^t pi_m(X)).
Scalar pair(const PBWElement& x, const PWFunction& a);
/// (X1 (x) ... (x) Xn, t) = sum prod (Xk, tk).
Scalar pair(const Tensor& xs, const PWMulti& t);

/// Image of a PBW monomial in V(m) under pi, pi o S, pi o S^-1 and
/// X -> pi(S^-1(X)^*) (the last is conjugate-linear in coefficients).
enum class Twist { None, S, Sinv, SinvStar };
Mat monomialImage(const Field& f, HalfInt m, const Mono& x, Twist tw = Twist::None);
Mat elementImage(const PBWElement& x, HalfInt m, Twist tw = Twist::None);

/// Per-spin linear maps on coefficients. Entry [i*d+j] lists (k, l, c) with
/// map(u_ij) = sum c u_kl. Antipode: (X, S(a)) = (S^-1(X), a); star:
/// (X, a^*) = conj((S^-1(X)^*, a)).
using SparseMap = std::vector<std::vector<std::tuple<int, int, Scalar>>>;
struct SpinTables {
    SparseMap S, Sinv, star;
};
const SpinTables& spinTables(const Field& f, HalfInt m);
/// Monomials whose images span End(V(m)), grouped by weight shift.
std::vector<Mono> spinBasis(HalfInt m);
/// Apply a per-spin sparse map to a coefficient matrix (conjugating the
/// input entries when conjugate is set).
Mat applySparse(const SparseMap& map, const Mat& c, bool conjugate = false);

/// Woronowicz generators: spin-1/2 matrix coefficients in the unitary basis
/// (v_{1/2}, q^{-1/2} v_{-1/2}); the weight basis itself has |v_{-1/2}|^2 = q.
PWFunction alpha(const Field& f);
PWFunction beta(const Field& f);
PWFunction gamma(const Field& f);
PWFunction delta(const Field& f);

}  // namespace qgw
