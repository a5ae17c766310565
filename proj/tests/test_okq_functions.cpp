#include "doctest.h"
#include "json.hpp"
#include "qgw/okq_functions.hpp"
#include "qgw/sampling.hpp"

#include <random>

using namespace qgw;

namespace {
const Field X = Field::Exact();
HalfInt H(int twice) { return HalfInt::fromTwice(twice); }
Scalar q() { return Scalar::vpow(X, 2); }
PWFunction mul(const PWFunction& a, const PWFunction& b) { return pwMultiply(a, b); }

PWFunction randomPW(const Field& f, std::mt19937_64& rng, int maxTwice, int terms) {
    std::uniform_int_distribution<int> tDist(0, maxTwice), cDist(-3, 3), eDist(-2, 2);
    PWFunction r(f);
    for (int n = 0; n < terms; ++n) {
        int t = tDist(rng);
        std::uniform_int_distribution<int> iDist(0, t);
        Scalar c = Scalar::integer(f, cDist(rng)) * Scalar::vpow(f, 2 * eDist(rng));
        r = r + PWFunction::coefficient(f, H(t), iDist(rng), iDist(rng)).scaled(c);
    }
    return r;
}

// every matrix coefficient with spin <= maxTwice/2
std::vector<PWFunction> fullBasis(const Field& f, int maxTwice) {
    std::vector<PWFunction> out;
    for (int t = 0; t <= maxTwice; ++t)
        for (int i = 0; i <= t; ++i)
            for (int j = 0; j <= t; ++j) out.push_back(PWFunction::coefficient(f, H(t), i, j));
    return out;
}
}  // namespace

TEST_CASE("unit is a two-sided identity") {
    std::mt19937_64 rng(3);
    PWFunction one = PWFunction::unit(X);
    for (int n = 0; n < 5; ++n) {
        PWFunction a = randomPW(X, rng, 3, 3);
        CHECK(mul(one, a).equals(a));
        CHECK(mul(a, one).equals(a));
    }
}

TEST_CASE("Woronowicz relations") {
    PWFunction a = alpha(X), b = beta(X), c = gamma(X), d = delta(X);
    PWFunction one = PWFunction::unit(X);
    CHECK(mul(a, b).equals(mul(b, a).scaled(q())));
    CHECK(mul(a, c).equals(mul(c, a).scaled(q())));
    CHECK(mul(b, d).equals(mul(d, b).scaled(q())));
    CHECK(mul(c, d).equals(mul(d, c).scaled(q())));
    CHECK(mul(b, c).equals(mul(c, b)));
    CHECK((mul(a, d) - mul(b, c).scaled(q())).equals(one));
    CHECK((mul(d, a) - mul(b, c).scaled(q().inv())).equals(one));
    CHECK(b.equals(pwStar(c).scaled(-q())));
    CHECK(d.equals(pwStar(a)));
}

TEST_CASE("printed variants of two Woronowicz relations fail") {
    // beta gamma = gamma delta and delta alpha - q beta gamma = 1 are not identities
    PWFunction a = alpha(X), b = beta(X), c = gamma(X), d = delta(X);
    CHECK_FALSE(mul(b, c).equals(mul(c, d)));
    CHECK_FALSE((mul(d, a) - mul(b, c).scaled(q())).equals(PWFunction::unit(X)));
}

TEST_CASE("weight-basis coefficients carry the norm of v_{-1/2}") {
    // with F v_{1/2} = v_{-1/2} the star relation picks up q^2
    PWFunction b = PWFunction::coefficient(X, H(1), 0, 1);
    PWFunction c = PWFunction::coefficient(X, H(1), 1, 0);
    CHECK(b.equals(pwStar(c).scaled(-q() * q())));
}

TEST_CASE("swapped leg order gives the opposite algebra") {
    // b a computed by the implemented product equals a b in the opposite algebra
    PWFunction a = alpha(X), b = beta(X);
    CHECK_FALSE(mul(b, a).equals(mul(a, b)));
    CHECK(mul(b, a).scaled(q()).equals(mul(a, b)));
}

TEST_CASE("coproduct and counit on generators") {
    PWFunction a = alpha(X), b = beta(X), c = gamma(X);
    PWFunction one = PWFunction::unit(X);
    CHECK(pwCoproduct(one).equals(PWMulti::pure({one, one})));
    CHECK(pwCoproduct(a).equals(PWMulti::pure({a, a}) + PWMulti::pure({b, c})));
    CHECK(counitLeg(pwCoproduct(c), 0).toFunction().equals(c));
    CHECK(counitLeg(pwCoproduct(c), 1).toFunction().equals(c));
    CHECK(pwCounit(a).isOne());
    CHECK(pwCounit(b).isZero());
    CHECK(pwStar(one).equals(one));
}

TEST_CASE("skew pairing examples") {
    PWFunction a = alpha(X), d = delta(X);
    CHECK(pair(PBWElement::K(X), a).equals(q()));
    std::mt19937_64 rng(5);
    for (int n = 0; n < 5; ++n) {
        PWFunction f = randomPW(X, rng, 3, 4);
        CHECK(pair(PBWElement::one(X), f).equals(pwCounit(f)));
    }
    PBWElement e = PBWElement::E(X), fgen = PBWElement::F(X);
    CHECK(pair(e * fgen, d).equals(pair(Tensor::pure({e, fgen}), pwCoproduct(d))));
}

TEST_CASE("skew duality (Delta X, b (x) a) = (X, ab) on a monomial sample") {
    std::vector<PWFunction> gens{alpha(X), beta(X), gamma(X), delta(X), PWFunction::coefficient(X, 1, 0, 2)};
    std::vector<Mono> monos;
    for (int a = 0; a <= 2; ++a)
        for (int b = -1; b <= 1; ++b)
            for (int c = 0; c <= 2; ++c)
                if (a + std::abs(b) + c <= 3) monos.push_back({a, b, c});
    for (const auto& m : monos) {
        PBWElement x = PBWElement::monomial(X, m);
        Tensor dx = coproduct(x);
        for (const auto& a : gens)
            for (const auto& b : gens) CHECK(pair(dx, PWMulti::pure({b, a})).equals(pair(x, mul(a, b))));
    }
}

TEST_CASE("the untwisted antipode transpose violates the antipode identity") {
    // (X, S'(a)) = (S(X), a) is the transpose of S, not of S^-1
    PWFunction a = alpha(X);
    PWTensor d = pwCoproduct(a);
    PWFunction viaTranspose(X);
    for (const auto& [k, c] : d.terms())
        viaTranspose = viaTranspose + pwMultiply(pwAntipodeInverse(pwBasis(X, k[0])), pwBasis(X, k[1])).scaled(c);
    CHECK_FALSE(viaTranspose.equals(PWFunction::unit(X)));
}

TEST_CASE("antipode and star are dual to the algebra maps") {
    std::mt19937_64 rng(17);
    for (int n = 0; n < 12; ++n) {
        PBWElement x = randomPBW(X, rng, 4, 3);
        PWFunction a = randomPW(X, rng, 3, 4);
        CHECK(pair(antipodeInverse(x), a).equals(pair(x, pwAntipode(a))));
        CHECK(pair(antipode(x), a).equals(pair(x, pwAntipodeInverse(a))));
        CHECK(pair(x, pwStar(a)).equals(pair(star(antipodeInverse(x)), a).conj()));
    }
}

TEST_CASE("Hopf axioms on the full span of spins <= 3/2") {
    for (const auto& a : fullBasis(X, 3)) {
        PWTensor d = pwCoproduct(a);
        CHECK(coproductLeg(d, 0).equals(coproductLeg(d, 1)));
        CHECK(counitLeg(d, 0).toFunction().equals(a));
        CHECK(counitLeg(d, 1).toFunction().equals(a));
        PWFunction e = PWFunction::unit(X).scaled(pwCounit(a));
        CHECK(multiplyLegs(d, PWLeg::S, PWLeg::Id).equals(e));
        CHECK(multiplyLegs(d, PWLeg::Id, PWLeg::S).equals(e));
        CHECK(pwStar(pwStar(a)).equals(a));
        CHECK(pwAntipode(pwStar(pwAntipode(pwStar(a)))).equals(a));
        CHECK(pwAntipodeInverse(pwAntipode(a)).equals(a));
        CHECK(pwCoproduct(pwStar(a)).equals(mapLegs(d, PWLeg::Star)));
    }
}

TEST_CASE("products: associativity, star anti-multiplicativity, Delta and eps multiplicative") {
    std::mt19937_64 rng(23);
    for (int n = 0; n < 6; ++n) {
        PWFunction a = randomPW(X, rng, 2, 2), b = randomPW(X, rng, 2, 2), c = randomPW(X, rng, 1, 2);
        CHECK(mul(mul(a, b), c).equals(mul(a, mul(b, c))));
        CHECK(pwStar(mul(a, b)).equals(mul(pwStar(b), pwStar(a))));
        CHECK(pwAntipode(mul(a, b)).equals(mul(pwAntipode(b), pwAntipode(a))));
        CHECK(pwCounit(mul(a, b)).equals(pwCounit(a) * pwCounit(b)));
    }
    for (int n = 0; n < 3; ++n) {
        PWFunction a = randomPW(X, rng, 1, 2), b = randomPW(X, rng, 1, 2);
        CHECK(pwCoproduct(mul(a, b)).equals(multiplyLegwise(pwCoproduct(a), pwCoproduct(b))));
    }
}

TEST_CASE("spin-k product matches the full product") {
    std::mt19937_64 rng(29);
    PWFunction a = randomPW(X, rng, 3, 4), b = randomPW(X, rng, 2, 4);
    PWFunction ab = mul(a, b);
    for (int t = 0; t <= 5; ++t) CHECK(pwMultiplySpin(a, b, H(t)).equals(ab.at(H(t))));
}

TEST_CASE("spin-1/2 generators generate spins <= 3/2") {
    std::vector<PWFunction> gens{alpha(X), beta(X), gamma(X), delta(X)};
    std::vector<PWFunction> words{PWFunction::unit(X)};
    for (int len = 1; len <= 3; ++len) {
        std::vector<PWFunction> next;
        for (const auto& w : words)
            for (const auto& g : gens) next.push_back(mul(w, g));
        words = next;
        int d = len + 1;
        Mat coords(X, static_cast<int>(words.size()), d * d);
        for (size_t r = 0; r < words.size(); ++r) {
            Mat c = words[r].at(H(len));
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j) coords(static_cast<int>(r), i * d + j) = c(i, j);
        }
        CAPTURE(len);
        CHECK(rank(coords) == d * d);
    }
}

TEST_CASE("numeric mode agrees with exact evaluation") {
    Field N = Field::Numeric(0.5);
    PWFunction a = alpha(N), b = beta(N), c = gamma(N), d = delta(N);
    CHECK((pwMultiply(a, d) - pwMultiply(b, c).scaled(Scalar::vpow(N, 2))).equals(PWFunction::unit(N)));
    CHECK(b.equals(pwStar(c).scaled(-Scalar::vpow(N, 2))));
    PWFunction ex = pwMultiply(pwStar(gamma(X)), beta(X));
    PWFunction nu = pwMultiply(pwStar(c), b);
    for (const auto& [t, m] : ex.components()) CHECK(m.toNumeric(0.5).distance(nu.at(H(t))) < 1e-12);
}

TEST_CASE("JSON form") {
    auto j = nlohmann::json::parse(alpha(X).toJson());
    CHECK(j["schema"] == "qgw/1");
    CHECK(j["components"]["1"][0][0] == "(1)/(1)");
}
