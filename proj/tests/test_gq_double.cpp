#include "doctest.h"
#include "json.hpp"
#include "qgw/gq_double.hpp"
#include "qgw/principal_series.hpp"

#include <random>

using namespace qgw;

namespace {
const Field X = Field::Exact();
HalfInt H(int twice) { return HalfInt::fromTwice(twice); }

DoubleElement randomDouble(std::mt19937_64& rng, int maxTwice, int terms) {
    // DK legs include the unit so that products are rarely zero
    std::uniform_int_distribution<int> c(-2, 2), t(0, maxTwice), dk(-1, maxTwice);
    DoubleElement r(X);
    for (int n = 0; n < terms; ++n) {
        int a = dk(rng), b = t(rng);
        std::uniform_int_distribution<int> ia(0, std::max(a, 0)), ib(0, b);
        int v = c(rng);
        if (v == 0) v = 1;
        DKBasis x = a < 0 ? kDKUnit : DKBasis{a, ia(rng), ia(rng)};
        r.add({x, {b, ib(rng), ib(rng)}}, Scalar::integer(X, v) * Scalar::vpow(X, c(rng)));
    }
    return r;
}

DKElement randomDK(std::mt19937_64& rng, int maxTwice) {
    std::uniform_int_distribution<int> c(-2, 2);
    DKElement r(X);
    for (int t = 0; t <= maxTwice; ++t) {
        Mat m(X, t + 1, t + 1);
        for (int i = 0; i <= t; ++i)
            for (int j = 0; j <= t; ++j) m(i, j) = Scalar::integer(X, c(rng)) * Scalar::vpow(X, c(rng));
        r.set(H(t), m);
    }
    return r;
}

PWFunction randomPW(std::mt19937_64& rng, int maxTwice, int terms) {
    std::uniform_int_distribution<int> tDist(0, maxTwice), c(-2, 2);
    PWFunction r(X);
    for (int n = 0; n < terms; ++n) {
        int t = tDist(rng);
        std::uniform_int_distribution<int> i(0, t);
        r = r + PWFunction::coefficient(X, H(t), i(rng), i(rng)).scaled(Scalar::integer(X, c(rng)) * Scalar::vpow(X, c(rng)));
    }
    return r;
}

// (z_kl, c) = (y, S^-1(u_lj) c u_ik), evaluated coefficient by coefficient
DoubleElement exchangeByPairing(const PWFunction& a, const DKElement& y, int maxTwice) {
    DoubleElement r(X);
    for (const auto& [s, am] : a.components()) {
        int d = s + 1;
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                if (am(i, j).isZero(0.0)) continue;
                for (int k = 0; k < d; ++k)
                    for (int l = 0; l < d; ++l) {
                        PWFunction left = pwAntipodeInverse(PWFunction::coefficient(X, H(s), l, j));
                        PWFunction right = PWFunction::coefficient(X, H(s), i, k);
                        DKElement z(X);
                        for (int t = 0; t <= maxTwice; ++t) {
                            Mat m(X, t + 1, t + 1);
                            for (int p = 0; p <= t; ++p)
                                for (int q = 0; q <= t; ++q)
                                    m(p, q) = dkPair(y, pwMultiply(pwMultiply(left, PWFunction::coefficient(X, H(t), p, q)), right));
                            z.set(H(t), m);
                        }
                        r = r + DoubleElement::pure(z, PWFunction::coefficient(X, H(s), k, l)).scaled(am(i, j));
                    }
            }
    }
    return r;
}
}  // namespace

TEST_CASE("products of pure factors") {
    std::mt19937_64 rng(11);
    for (int n = 0; n < 3; ++n) {
        DKElement x = randomDK(rng, 2), y = randomDK(rng, 2);
        CHECK(doubleMultiply(DoubleElement::fromDK(x), DoubleElement::fromDK(y)).equals(DoubleElement::fromDK(x * y)));
        PWFunction a = randomPW(rng, 2, 2), b = randomPW(rng, 2, 2);
        CHECK(doubleMultiply(DoubleElement::fromO(a), DoubleElement::fromO(b)).equals(DoubleElement::fromO(pwMultiply(a, b))));
        CHECK(doubleMultiply(DoubleElement::fromDK(x), DoubleElement::fromO(a)).equals(DoubleElement::pure(x, a)));
    }
    DoubleElement u = DoubleElement::unit(X);
    DoubleElement s = randomDouble(rng, 2, 3);
    CHECK(doubleMultiply(u, s).equals(s));
    CHECK(doubleMultiply(s, u).equals(s));
}

TEST_CASE("exchange relation") {
    DKElement y = DKElement::identityAt(X, H(1));
    DoubleElement viaPairing = exchangeByPairing(alpha(X), y, 3);
    CHECK(exchange(alpha(X), y).equals(viaPairing));
    CHECK(doubleMultiply(DoubleElement::fromO(alpha(X)), DoubleElement::fromDK(y)).equals(viaPairing));

    std::mt19937_64 rng(5);
    DKElement y2 = randomDK(rng, 2);
    PWFunction a = PWFunction::coefficient(X, H(1), 0, 1);
    CHECK(exchange(a, y2).equals(exchangeByPairing(a, y2, 4)));
}

TEST_CASE("counit") {
    CHECK(doubleCounit(DoubleElement::pure(DKElement::identityAt(X, H(0)), PWFunction::unit(X))).isOne());
    DoubleElement u(X);
    u.add({{0, 0, 0}, {0, 0, 0}}, Scalar::one(X));
    CHECK(doubleCounit(u).isOne());
    CHECK(doubleCounit(DoubleElement::unit(X)).isOne());
    DoubleElement off(X);
    off.add({{1, 0, 1}, {0, 0, 0}}, Scalar::one(X));
    CHECK(doubleCounit(off).isZero());

    std::mt19937_64 rng(3);
    for (int n = 0; n < 3; ++n) {
        DoubleElement s = randomDouble(rng, 2, 3);
        DoubleTensor d = doubleCoproduct(s, 4);
        CHECK(d.counitLeg(0).equals(s));
        CHECK(d.counitLeg(1).equals(s));
    }
    DoubleElement wide(X);
    wide.add({{4, 0, 0}, {0, 0, 0}}, Scalar::one(X));
    CHECK_THROWS_AS(doubleCoproduct(wide, 2), std::out_of_range);
}

TEST_CASE("bialgebra maps are multiplicative") {
    std::mt19937_64 rng(7);
    for (int n = 0; n < 4; ++n) {
        DoubleElement s = randomDouble(rng, 1, 2), t = randomDouble(rng, 1, 2);
        DoubleElement st = doubleMultiply(s, t);
        CHECK(doubleCounit(st).equals(doubleCounit(s) * doubleCounit(t)));
        DoubleTensor lhs = doubleCoproduct(st, 4).truncated(2);
        DoubleTensor rhs = (doubleCoproduct(s, 4) * doubleCoproduct(t, 4)).truncated(2);
        CHECK(lhs.equals(rhs));
        CHECK_FALSE(lhs.isZero());
    }
}

TEST_CASE("associativity") {
    std::mt19937_64 rng(2024);
    int nonzero = 0;
    for (int n = 0; n < 12; ++n) {
        DoubleElement a = randomDouble(rng, 2, 2), b = randomDouble(rng, 2, 2), c = randomDouble(rng, 2, 2);
        DoubleElement lhs = doubleMultiply(doubleMultiply(a, b), c);
        CHECK(lhs.equals(doubleMultiply(a, doubleMultiply(b, c))));
        if (!lhs.isZero()) ++nonzero;
    }
    CHECK(nonzero >= 6);
}

TEST_CASE("antipode and star") {
    DoubleElement u = DoubleElement::unit(X);
    CHECK(doubleAntipode(u).equals(u));
    CHECK(doubleStar(u).equals(u));

    for (int t = 0; t <= 1; ++t)
        for (int s = 0; s <= 1; ++s)
            for (int i = 0; i <= t; ++i)
                for (int j = 0; j <= s; ++j) {
                    DKElement x = DKElement::component(H(t), Mat::unit(X, t + 1, t + 1, i, t - i));
                    PWFunction a = PWFunction::coefficient(X, H(s), j, s - j);
                    DoubleElement twice = doubleAntipode(doubleAntipode(DoubleElement::pure(x, a)));
                    CHECK(twice.equals(DoubleElement::pure(dkAntipode(dkAntipode(x)), pwAntipode(pwAntipode(a)))));
                }

    std::mt19937_64 rng(9);
    for (int n = 0; n < 3; ++n) {
        DoubleElement s = randomDouble(rng, 2, 2), t = randomDouble(rng, 1, 2);
        CHECK(doubleStar(doubleStar(s)).equals(s));
        CHECK(doubleAntipode(doubleMultiply(s, t)).equals(doubleMultiply(doubleAntipode(t), doubleAntipode(s))));
        CHECK(doubleStar(doubleMultiply(s, t)).equals(doubleMultiply(doubleStar(t), doubleStar(s))));
    }
}

TEST_CASE("Yetter-Drinfeld check") {
    std::vector<DKElement> ys{DKElement::identityAt(X, H(0)), DKElement::identityAt(X, H(1)),
                              DKElement::fromPBW(PBWElement::K(X), 2), DKElement::fromPBW(PBWElement::E(X), 2)};

    DoubleRep trivial;
    trivial.dim = 1;
    trivial.dk = [](const DKElement& x) { Mat m(X, 1, 1); m(0, 0) = dkCounit(x); return m; };
    trivial.pw = [](const PWFunction& a) { Mat m(X, 1, 1); m(0, 0) = pwCounit(a); return m; };
    CHECK(ydCheck(trivial, ys, 2).ok);

    // left-regular D(K_q) on spins <= 1 with O(K_q) acting by the counit:
    // compatible only when O(K_q) is commutative
    std::vector<int> offsets{0, 1, 5};
    DoubleRep regular;
    regular.dim = 14;
    regular.dk = [&](const DKElement& x) {
        Mat m(X, 14, 14);
        for (int t = 0; t <= 2; ++t) {
            int d = t + 1, off = offsets[static_cast<size_t>(t)];
            Mat xt = x.at(H(t));
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j)
                    for (int k = 0; k < d; ++k)
                        if (!xt(i, k).isZero(0.0)) m(off + i * d + j, off + k * d + j) = xt(i, k);
        }
        return m;
    };
    regular.pw = [](const PWFunction& a) { return Mat::identity(X, 14).scaled(pwCounit(a)); };
    CHECK_FALSE(ydCheck(regular, ys, 1).ok);

    SectionSpace sec = sectionSpace(H(0), 4);
    DoubleRep ps;
    ps.dim = sec.dim();
    ps.dk = [&](const DKElement& x) { return piDK(X, sec, x).mat; };
    ps.pw = [&](const PWFunction& a) { return piPW(X, sec, Lambda::integer(-1), a).mat; };
    CHECK(ydCheck(ps, ys, 1).ok);

    DoubleRep perturbed = ps;
    perturbed.pw = [&](const PWFunction& a) {
        Mat m = piPW(X, sec, Lambda::integer(-1), a).mat;
        m(0, 1) += a.at(H(1))(0, 0);
        return m;
    };
    CHECK_FALSE(ydCheck(perturbed, ys, 1).ok);
}

TEST_CASE("json") {
    DoubleElement s(X);
    s.add({{1, 0, 1}, {2, 1, 0}}, Scalar::vpow(X, 2));
    s.add({kDKUnit, {0, 0, 0}}, Scalar::integer(X, -3));
    auto j = nlohmann::json::parse(s.toJson());
    CHECK(j["schema"] == "qgw/1");
    CHECK(j["terms"].size() == 2);
    bool sawUnit = false;
    for (const auto& t : j["terms"])
        if (t["dk"] == "1") sawUnit = true;
    CHECK(sawUnit);
}
