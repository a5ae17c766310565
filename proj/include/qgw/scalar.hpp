#pragma once

#include <gmpxx.h>

#include <complex>
#include <compare>
#include <string>
#include <variant>
#include <vector>

namespace qgw {

using cplx = std::complex<double>;

/// Half-integer stored as twice its value.
class HalfInt {
public:
    constexpr HalfInt() = default;
    constexpr HalfInt(int n) : twice_(2 * n) {}
    static constexpr HalfInt fromTwice(int t) {
        HalfInt h;
        h.twice_ = t;
        return h;
    }

    constexpr int twice() const { return twice_; }
    constexpr bool isInteger() const { return twice_ % 2 == 0; }
    double toDouble() const { return twice_ / 2.0; }

    constexpr HalfInt operator+(HalfInt o) const { return fromTwice(twice_ + o.twice_); }
    constexpr HalfInt operator-(HalfInt o) const { return fromTwice(twice_ - o.twice_); }
    constexpr HalfInt operator-() const { return fromTwice(-twice_); }
    HalfInt& operator+=(HalfInt o) { twice_ += o.twice_; return *this; }
    HalfInt& operator-=(HalfInt o) { twice_ -= o.twice_; return *this; }
    constexpr auto operator<=>(const HalfInt&) const = default;

    HalfInt abs() const { return fromTwice(twice_ < 0 ? -twice_ : twice_); }
    /// Same class in ½ℤ/ℤ.
    bool congruent(HalfInt o) const { return ((twice_ - o.twice_) % 2) == 0; }

    std::string str() const;
    static HalfInt parse(const std::string& s);

private:
    int twice_ = 0;
};

/// Laurent polynomial in v with rational coefficients: sum_k c[k] v^(low+k).
struct LPoly {
    int low = 0;
    std::vector<mpq_class> c;

    bool isZero() const { return c.empty(); }
    int high() const { return low + static_cast<int>(c.size()) - 1; }
    void trim();

    static LPoly constant(const mpq_class& x);
    static LPoly monomial(const mpq_class& x, int e);

    LPoly operator+(const LPoly& o) const;
    LPoly operator-(const LPoly& o) const;
    LPoly operator*(const LPoly& o) const;
    LPoly operator-() const;
    LPoly scaled(const mpq_class& x) const;
    bool operator==(const LPoly& o) const { return low == o.low && c == o.c; }

    cplx eval(cplx v) const;
    std::string str(const char* var = "v", int expDiv = 1) const;
};

/// Reduced fraction of Laurent polynomials; the denominator is an ordinary
/// monic polynomial with nonzero constant term.
class RatFunc {
public:
    RatFunc() : den_(LPoly::constant(1)) {}
    RatFunc(long n);
    RatFunc(const mpq_class& x);
    RatFunc(LPoly num, LPoly den);

    static RatFunc vpow(int e);

    const LPoly& num() const { return num_; }
    const LPoly& den() const { return den_; }
    bool isZero() const { return num_.isZero(); }
    bool isPolynomial() const { return den_.c.size() == 1; }

    RatFunc operator+(const RatFunc& o) const;
    RatFunc operator-(const RatFunc& o) const;
    RatFunc operator*(const RatFunc& o) const;
    RatFunc operator/(const RatFunc& o) const;
    RatFunc operator-() const;
    RatFunc inv() const;
    bool operator==(const RatFunc& o) const { return num_ == o.num_ && den_ == o.den_; }

    cplx eval(cplx v) const;
    /// Integer-coefficient text "(num)/(den)".
    std::string str() const;
    static RatFunc parse(const std::string& s);

private:
    LPoly num_, den_;
    void normalize();
};

/// Scalar context: the exact field Q(v) or complex numbers at a fixed real q.
struct Field {
    bool exact = true;
    double q = 0.0;

    static Field Exact() { return {true, 0.0}; }
    static Field Numeric(double q);
    bool operator==(const Field& o) const { return exact == o.exact && (exact || q == o.q); }
    std::string key() const;
};

inline constexpr double kDefaultTol = 1e-9;

class Scalar {
public:
    Scalar() : f_(Field::Exact()), x_(RatFunc()) {}
    Scalar(const Field& f, RatFunc r);
    Scalar(const Field& f, cplx z);

    static Scalar zero(const Field& f);
    static Scalar one(const Field& f);
    static Scalar integer(const Field& f, long n);
    static Scalar rational(const Field& f, const mpq_class& x);
    /// v^e with v = q^{1/2}.
    static Scalar vpow(const Field& f, int e);
    /// q^a for half-integer a.
    static Scalar qpow(const Field& f, HalfInt a) { return vpow(f, a.twice()); }
    /// q^z for complex z (numeric only).
    static Scalar qpowComplex(const Field& f, cplx z);

    const Field& field() const { return f_; }
    bool exact() const { return f_.exact; }
    const RatFunc& rat() const;
    cplx value() const;

    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator*(const Scalar& o) const;
    Scalar operator/(const Scalar& o) const;
    Scalar operator-() const;
    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
    Scalar inv() const;
    Scalar conj() const;

    bool isZero(double tol = kDefaultTol) const;
    bool isOne() const;
    /// Exact: structural equality. Numeric: absolute tolerance.
    bool equals(const Scalar& o, double tol = kDefaultTol) const;
    /// Magnitude for pivoting (numeric) or 0/1 (exact).
    double magnitude() const;

    /// Evaluate an exact scalar at v = v0.
    cplx eval(cplx v0) const;
    /// Convert an exact scalar to numeric mode at q (v = sqrt(q)).
    Scalar toNumeric(double q) const;

    std::string str() const;

private:
    Field f_;
    std::variant<RatFunc, cplx> x_;
    void checkField(const Scalar& o) const;
};

Scalar qnum(const Field& f, HalfInt a);
inline Scalar qnum(const Field& f, int a) { return qnum(f, HalfInt(a)); }
/// Real-argument q-number in numeric mode.
Scalar qnumReal(const Field& f, double a);
Scalar qnumComplex(const Field& f, cplx z);

}  // namespace qgw
