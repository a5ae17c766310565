#pragma once

#include "qgw/scalar.hpp"

#include <compare>
#include <map>
#include <string>
#include <vector>

namespace qgw {

/// F^a K^b E^c.
struct Mono {
    int a = 0;
    int b = 0;
    int c = 0;
    auto operator<=>(const Mono&) const = default;
    int degree() const { return a + (b < 0 ? -b : b) + c; }
    std::string str() const;
};

class PBWElement {
public:
    explicit PBWElement(const Field& f = Field::Exact()) : f_(f) {}

    static PBWElement zero(const Field& f) { return PBWElement(f); }
    static PBWElement one(const Field& f) { return monomial(f, {}); }
    static PBWElement scalar(const Scalar& s);
    static PBWElement monomial(const Field& f, Mono m, const Scalar& coeff);
    static PBWElement monomial(const Field& f, Mono m) { return monomial(f, m, Scalar::one(f)); }
    static PBWElement E(const Field& f) { return monomial(f, {0, 0, 1}); }
    static PBWElement F(const Field& f) { return monomial(f, {1, 0, 0}); }
    static PBWElement K(const Field& f, int power = 1) { return monomial(f, {0, power, 0}); }

    const Field& field() const { return f_; }
    const std::map<Mono, Scalar>& terms() const { return terms_; }
    bool isZero() const { return terms_.empty(); }
    /// True when the element is a multiple of the unit.
    bool isScalar() const;
    Scalar coeff(const Mono& m) const;
    int degree() const;

    void add(const Mono& m, const Scalar& s);
    PBWElement operator+(const PBWElement& o) const;
    PBWElement operator-(const PBWElement& o) const;
    PBWElement operator-() const;
    PBWElement operator*(const PBWElement& o) const;
    PBWElement scaled(const Scalar& s) const;
    PBWElement pow(int n) const;
    bool operator==(const PBWElement& o) const;

    /// Canonical text over a common denominator, e.g. "(K - K^-1)/(q - q^-1)".
    std::string str() const;

private:
    Field f_;
    std::map<Mono, Scalar> terms_;
};

PBWElement parse(const Field& f, const std::string& text);

/// Normal form of a single monomial product.
PBWElement multiplyMono(const Field& f, const Mono& x, const Mono& y);
/// Normal form of an arbitrary word in E, F, K^n by the three single-step rules.
struct Letter {
    char g;     // 'E', 'F' or 'K'
    int n = 1;  // K exponent
};
PBWElement rewriteWord(const Field& f, const std::vector<Letter>& word);

/// Element of the n-fold tensor power of U_q(sl2) in the PBW basis.
class Tensor {
public:
    Tensor(const Field& f, int arity) : f_(f), arity_(arity) {}
    static Tensor pure(const std::vector<PBWElement>& legs);

    const Field& field() const { return f_; }
    int arity() const { return arity_; }
    const std::map<std::vector<Mono>, Scalar>& terms() const { return terms_; }
    bool isZero() const { return terms_.empty(); }

    void add(const std::vector<Mono>& key, const Scalar& s);
    Tensor operator+(const Tensor& o) const;
    Tensor operator-(const Tensor& o) const;
    Tensor operator*(const Tensor& o) const;
    Tensor scaled(const Scalar& s) const;
    bool operator==(const Tensor& o) const;

private:
    Field f_;
    int arity_;
    std::map<std::vector<Mono>, Scalar> terms_;
};

Tensor coproduct(const PBWElement& x);
/// Apply the coproduct to one leg of a tensor.
Tensor coproductLeg(const Tensor& t, int leg);
Scalar counit(const PBWElement& x);
PBWElement antipode(const PBWElement& x);
PBWElement antipodeInverse(const PBWElement& x);
PBWElement star(const PBWElement& x);
/// Multiply the legs of a 2-tensor, optionally applying S to one leg first.
enum class LegMap { Id, S };
PBWElement multiplyLegs(const Tensor& t, LegMap left = LegMap::Id, LegMap right = LegMap::Id);
/// Apply the counit to one leg, lowering the arity by one.
Tensor counitLeg(const Tensor& t, int leg);

}  // namespace qgw
