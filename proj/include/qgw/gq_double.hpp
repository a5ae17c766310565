#pragma once

#include "qgw/dkq_convolution.hpp"

#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace qgw {

/// Basis of D(K_q): the matrix unit |v_i><v^j| on V(t/2). t = -1 stands for
/// the unit multiplier.
using DKBasis = PWBasis;
inline constexpr DKBasis kDKUnit{-1, 0, 0};

/// Element of D(G_q) = D(K_q) |x| O(K_q) in the basis e^m_ij |x| u^s_kl.
class DoubleElement {
public:
    using Key = std::pair<DKBasis, PWBasis>;

    DoubleElement() = default;
    explicit DoubleElement(const Field& f) : f_(f) {}

    static DoubleElement unit(const Field& f);
    /// x |x| a.
    static DoubleElement pure(const DKElement& x, const PWFunction& a);
    /// 1 |x| a.
    static DoubleElement fromO(const PWFunction& a);
    /// x |x| 1.
    static DoubleElement fromDK(const DKElement& x);

    const Field& field() const { return f_; }
    const std::map<Key, Scalar>& terms() const { return terms_; }
    void add(const Key& k, const Scalar& c);
    /// Largest spin (twice) among the DK legs and among the O legs.
    int maxDKTwice() const;
    int maxPWTwice() const;

    DoubleElement operator+(const DoubleElement& o) const;
    DoubleElement operator-(const DoubleElement& o) const;
    DoubleElement scaled(const Scalar& s) const;
    bool isZero(double tol = kDefaultTol) const;
    bool equals(const DoubleElement& o, double tol = kDefaultTol) const;

    /// {"schema", "mode", "terms": [{"dk": [t,i,j], "pw": [t,i,j], "coeff"}]}
    std::string toJson() const;

private:
    Field f_;
    std::map<Key, Scalar> terms_;
};

/// Exchange coefficient z = (y_(1), u_ik) y_(2) (S(y_(3)), u_lj) for
/// a = u^s_ij: (z, c) = (y, S^-1(u_lj) c u_ik). Finitely supported.
DKElement exchangeCoefficient(const DKElement& y, HalfInt s, int i, int j, int k, int l);
/// All of them for spin s, indexed ((i d + j) d + k) d + l with d = 2s+1.
std::vector<DKElement> exchangeCoefficients(const DKElement& y, HalfInt s);

DoubleElement doubleMultiply(const DoubleElement& s, const DoubleElement& t);
/// The exchange relation a y = sum_kl z_kl(y) |x| u_kl for a = u^s_ij.
DoubleElement exchange(const PWFunction& a, const DKElement& y);

/// Coproduct of D(K_q) with both legs truncated to spins <= window/2:
/// coefficient of e_b (x) e_a is (x, u_a u_b).
std::map<std::pair<DKBasis, DKBasis>, Scalar> dkCoproduct(const DKElement& x, int windowTwice);

/// Two-leg tensor in D(G_q) (x) D(G_q).
class DoubleTensor {
public:
    using Key = std::pair<DoubleElement::Key, DoubleElement::Key>;

    DoubleTensor() = default;
    explicit DoubleTensor(const Field& f) : f_(f) {}
    const Field& field() const { return f_; }
    const std::map<Key, Scalar>& terms() const { return terms_; }
    void add(const Key& k, const Scalar& c);

    DoubleTensor operator-(const DoubleTensor& o) const;
    /// Leg-wise product.
    DoubleTensor operator*(const DoubleTensor& o) const;
    /// Drop terms whose DK legs exceed spin window/2.
    DoubleTensor truncated(int windowTwice) const;
    bool isZero(double tol = kDefaultTol) const;
    bool equals(const DoubleTensor& o, double tol = kDefaultTol) const;
    /// Apply the counit to one leg.
    DoubleElement counitLeg(int leg) const;

private:
    Field f_;
    std::map<Key, Scalar> terms_;
};

/// Untwisted coproduct with DK legs truncated to spins <= window/2. Throws
/// when the element itself has DK legs beyond the window.
DoubleTensor doubleCoproduct(const DoubleElement& s, int windowTwice);
Scalar doubleCounit(const DoubleElement& s);
/// S(x a) = S(a) S(x) and (x a)^* = a^* x^*, re-ordered by the exchange relation.
DoubleElement doubleAntipode(const DoubleElement& s);
DoubleElement doubleStar(const DoubleElement& s);

/// Representation data on a common finite space.
struct DoubleRep {
    int dim = 0;
    std::function<Mat(const DKElement&)> dk;
    std::function<Mat(const PWFunction&)> pw;
};

/// Compatibility pi(a) pi(y) = sum_kl pi(z_kl(y)) pi(u_kl) for all sampled
/// y and all matrix coefficients a of spin <= maxPWTwice/2.
struct YDReport {
    bool ok = false;
    double maxResidual = 0;  // numeric mode; exact mode reports 0 or 1
};
YDReport ydCheck(const DoubleRep& rep, const std::vector<DKElement>& ys, int maxPWTwice, double tol = kDefaultTol);

}  // namespace qgw
