#pragma once

#include "qgw/okq_functions.hpp"

#include <functional>
#include <map>
#include <string>

namespace qgw {

/// Element of D(K_q) = (+)_m End(V(m)): finitely many spin blocks with the
/// entrywise (blockwise) product. Pairs with O(K_q) by (x, u^m_ij) = x_m[i,j].
class DKElement {
public:
    DKElement() = default;
    explicit DKElement(const Field& f) : f_(f) {}

    /// Identity operator on V(m), zero on the other blocks.
    static DKElement identityAt(const Field& f, HalfInt m);
    static DKElement component(HalfInt m, const Mat& x);
    /// Restriction of a PBW element to the spins 0..maxTwice/2.
    static DKElement fromPBW(const PBWElement& x, int maxTwice);

    const Field& field() const { return f_; }
    const std::map<int, Mat>& components() const { return comp_; }
    Mat at(HalfInt m) const;
    void set(HalfInt m, const Mat& x);
    int maxTwice() const { return comp_.empty() ? -1 : comp_.rbegin()->first; }

    DKElement operator+(const DKElement& o) const;
    DKElement operator-(const DKElement& o) const;
    DKElement operator*(const DKElement& o) const;
    DKElement scaled(const Scalar& s) const;
    bool isZero(double tol = kDefaultTol) const;
    bool equals(const DKElement& o, double tol = kDefaultTol) const;

    std::string toJson() const;

private:
    Field f_;
    std::map<int, Mat> comp_;
};

/// Multiplier of D(K_q): a spin-indexed family of operators, evaluated lazily.
class Multiplier {
public:
    Multiplier(const Field& f, std::function<Mat(HalfInt)> eval, std::string label)
        : f_(f), eval_(std::move(eval)), label_(std::move(label)) {}

    static Multiplier unit(const Field& f);
    /// q^{kH}; q^H acts on V(m) as K.
    static Multiplier qH(const Field& f, int k);
    static Multiplier fromPBW(const PBWElement& x);
    static Multiplier fromDK(const DKElement& x);

    const Field& field() const { return f_; }
    const std::string& label() const { return label_; }
    Mat at(HalfInt m) const { return eval_(m); }
    Multiplier operator*(const Multiplier& o) const;

private:
    Field f_;
    std::function<Mat(HalfInt)> eval_;
    std::string label_;
};

Scalar dkPair(const DKElement& x, const PWFunction& a);
Scalar dkPair(const Multiplier& x, const PWFunction& a);
/// (Delta x, b (x) a) = (x, ab).
Scalar dkPairCoproduct(const DKElement& x, const PWFunction& b, const PWFunction& a);
/// Spin-0 scalar, equal to (x, 1).
Scalar dkCounit(const DKElement& x);
/// Transpose of the antipode inverse of O(K_q): extends S on U_q.
DKElement dkAntipode(const DKElement& x);
DKElement dkAntipodeInverse(const DKElement& x);
/// (x^*, a) = conj((x, S(a)^*)).
DKElement dkStar(const DKElement& x);

/// Invariant inner product on V(m): <v_i, v_j> = g_i delta_ij with g_0 = 1,
/// making E^* = KF, F^* = EK^-1, K^* = K.
Mat hermitianForm(const Field& f, HalfInt m);
/// Adjoint of an operator on V(m) for that inner product.
Mat hilbertAdjoint(const Mat& x, HalfInt m);

/// Haar state: the spin-0 coefficient.
Scalar haarPhi(const PWFunction& a);
/// a_(1) phi(a_(2)) and phi(a_(1)) a_(2).
PWFunction haarLeftAverage(const PWFunction& a);
PWFunction haarRightAverage(const PWFunction& a);
bool haarInvarianceCheck(const PWFunction& a);
/// <f, g> = phi(f^* g).
Scalar innerProduct(const PWFunction& f, const PWFunction& g);
/// Gram matrix of <.,.> on the matrix coefficients of spin m (row-major order).
Mat gramMatrix(const Field& f, HalfInt m);
/// Smallest eigenvalue of a numeric Hermitian matrix.
double minHermitianEigenvalue(const Mat& g);

/// X |> f = (X, f_(2)) f_(1) and f <| X = (X, f_(1)) f_(2).
PWFunction hitLeft(const Multiplier& x, const PWFunction& f);
PWFunction hitRight(const PWFunction& f, const Multiplier& x);
/// lambda(X) f = f <| S(X), rho(X) f = X |> f.
PWFunction regularLambda(const PBWElement& x, const PWFunction& f);
PWFunction regularLambda(const DKElement& x, const PWFunction& f);
PWFunction regularRho(const PBWElement& x, const PWFunction& f);
PWFunction regularRho(const DKElement& x, const PWFunction& f);

/// f^_m[k,l] = phi(u^m_kl f).
DKElement fourier(const PWFunction& f);
/// Matrix of the Fourier map on spin m coefficients (row-major in both).
Mat fourierMatrix(const Field& f, HalfInt m);
PWFunction inverseFourier(const DKElement& x);
/// a * b = phi(S^-1(b_(1)) a) b_(2).
PWFunction convolve(const PWFunction& a, const PWFunction& b);

Scalar qdim(const Field& f, HalfInt m);
/// (1/dim_q) Tr(S^* T pi_m(q^H)).
Scalar twistedHS(const Mat& s, const Mat& t, HalfInt m);

/// Both sides of the Peter-Weyl identity for f, g: the phi inner product, the
/// sum of twisted HS forms with the 1/dim_q prefactor, and the same sum
/// weighted by dim_q instead.
struct PeterWeylSides {
    Scalar inner, invDimWeighted, dimWeighted;
};
PeterWeylSides peterWeylSides(const PWFunction& f, const PWFunction& g);

}  // namespace qgw
