#include "doctest.h"
#include "qgw/principal_series.hpp"

#include <cmath>
#include <numbers>

using namespace qgw;

namespace {
const Field X = Field::Exact();
HalfInt H(int twice) { return HalfInt::fromTwice(twice); }
double hbar(double q) { return std::log(q) / (2 * std::numbers::pi); }

bool allZero(const Mat& m) {
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            if (!m(i, j).isZero(0.0)) return false;
    return true;
}
}  // namespace

TEST_CASE("section spaces") {
    SectionSpace s = sectionSpace(H(0), 2);
    CHECK(s.dim() == 4);
    CHECK(s.basis.front() == std::make_pair(0, 0));
    CHECK(s.basis.back() == std::make_pair(2, 2));
    CHECK(s.column(2) == 1);
    CHECK(sectionSpace(H(1), 1).dim() == 2);
    SectionSpace z = sectionSpace(H(0), 0);
    CHECK(z.dim() == 1);
    CHECK(z.element(X, 0).equals(PWFunction::unit(X)));
    CHECK(sectionSpace(H(-2), 4).dim() == 3 + 5);
    CHECK_THROWS_AS(sectionSpace(H(3), 1), std::invalid_argument);

    // f <| K = q^{2 mu} f on every basis element
    for (int mu : {-2, -1, 0, 1, 2}) {
        SectionSpace sec = sectionSpace(H(mu), 5);
        for (const auto& [t, i] : sec.basis) {
            int c = sec.column(t);
            CHECK(pair(PBWElement::K(X), PWFunction::coefficient(X, H(t), c, c)).equals(Scalar::vpow(X, 2 * mu)));
        }
    }

    SectionSpace sec = sectionSpace(H(1), 3);
    Mat v(X, sec.dim(), 1);
    for (int n = 0; n < sec.dim(); ++n) v(n, 0) = Scalar::integer(X, n - 2);
    CHECK(sec.toVector(sec.fromVector(v)).equals(v));
    CHECK(sec.toVector(PWFunction::coefficient(X, H(1), 1, 0))(1, 0).isOne());
    CHECK_THROWS_AS(sec.toVector(PWFunction::coefficient(X, H(1), 0, 1)), std::domain_error);
    CHECK_THROWS_AS(sec.toVector(PWFunction::unit(X)), std::domain_error);
}

TEST_CASE("compact part") {
    SectionSpace sec = sectionSpace(H(0), 4);
    Mat p = piDK(X, sec, DKElement::identityAt(X, H(0))).mat;
    for (int a = 0; a < sec.dim(); ++a)
        for (int b = 0; b < sec.dim(); ++b) CHECK(p(a, b).equals(a == 0 && b == 0 ? Scalar::one(X) : Scalar::zero(X)));

    // S(K) = K^-1: diagonal q^{-2 wt}
    Mat k = piU(X, sec, PBWElement::K(X)).mat;
    Mat kd = piDK(X, sec, DKElement::fromPBW(PBWElement::K(X), 4)).mat;
    CHECK(k.equals(kd));
    for (int n = 0; n < sec.dim(); ++n) {
        auto [t, i] = sec.basis[static_cast<size_t>(n)];
        CHECK(k(n, n).equals(Scalar::vpow(X, -2 * (t - 2 * i))));
    }

    // piDK is a representation of D(K_q)
    DKElement x = DKElement::fromPBW(PBWElement::E(X) + PBWElement::K(X), 4);
    DKElement y = DKElement::fromPBW(PBWElement::F(X) * PBWElement::E(X), 4);
    CHECK(piDK(X, sec, x * y).mat.equals(piDK(X, sec, x).mat * piDK(X, sec, y).mat));

    // spin-m blocks act iff m >= |mu| and m = mu mod 1
    SectionSpace half = sectionSpace(H(1), 5);
    SectionSpace one = sectionSpace(H(2), 4);
    for (int t = 0; t <= 4; ++t) {
        DKElement e = DKElement::identityAt(X, H(t));
        CHECK(allZero(piDK(X, half, e).mat) == (t % 2 == 0));
        CHECK(allZero(piDK(X, one, e).mat) == (t < 2 || t % 2 == 1));
    }
    CHECK(piDK(X, one, DKElement::identityAt(X, H(0))).mat.trace().isZero());
}

TEST_CASE("twisted adjoint action") {
    SectionSpace sec = sectionSpace(H(0), 6);
    Lambda lam = Lambda::integer(-1);
    CHECK(piPW(X, sec, lam, PWFunction::unit(X)).mat.equals(Mat::identity(X, sec.dim())));
    CHECK(piPW(X, sec, Lambda::integer(3), PWFunction::unit(X)).mat.equals(Mat::identity(X, sec.dim())));

    std::vector<PWFunction> gens;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) gens.push_back(PWFunction::coefficient(X, H(1), i, j));
    for (const auto& a : gens)
        for (const auto& b : gens) {
            Mat lhs = piPW(X, sec, lam, pwMultiply(a, b)).mat;
            Mat rhs = piPW(X, sec, lam, a).mat * piPW(X, sec, lam, b).mat;
            CHECK(interiorDistance(sec, lhs, rhs, 4) == 0.0);
        }

    // truncation locality: the window-2 operator is the corner of the window-3 one
    SectionSpace small = sectionSpace(H(1), 4), big = sectionSpace(H(1), 6);
    PWFunction a = PWFunction::coefficient(X, H(1), 0, 1);
    Mat ms = piPW(X, small, Lambda::integer(2), a).mat, mb = piPW(X, big, Lambda::integer(2), a).mat;
    for (int c = 0; c < small.dim(); ++c) {
        if (small.basis[static_cast<size_t>(c)].first > 2) continue;
        for (int r = 0; r < big.dim(); ++r)
            CHECK(mb(r, c).equals(r < small.dim() ? ms(r, c) : Scalar::zero(X)));
    }
}

TEST_CASE("Yetter-Drinfeld compatibility") {
    CHECK(principalYD(X, H(0), Lambda::integer(-1), 4).ok);
    CHECK(principalYD(X, H(1), Lambda::integer(0), 3).ok);
    CHECK(principalYD(Field::Numeric(0.7), H(-1), Lambda::complex(cplx(0.25, -0.4)), 5).maxResidual < 1e-9);
}

TEST_CASE("leg order selection") {
    Field f = Field::Numeric(0.5);
    Lambda lam = Lambda::complex(cplx(0.3, 0.2));
    int passing = 0;
    for (LegOrder o : allLegOrders()) {
        LegOrderReport r = legOrderReport(f, H(1), lam, 5, o);
        bool ok = r.preservesSections && r.homomorphismResidual < 1e-9 && r.ydResidual < 1e-9;
        if (ok) {
            ++passing;
            CHECK(o == kLegOrder);
        }
    }
    CHECK(passing == 1);
    std::string frozen = legOrderName(kLegOrder);
    CHECK(frozen == "LPR");
}

TEST_CASE("unitarity on the imaginary axis") {
    double q = 0.5;
    for (double s : {0.1, 0.37}) {
        UnitarityReport r = unitarityCheck(q, H(0), cplx(0, s / hbar(q)), 6);
        CHECK(r.samples > 0);
        CHECK(r.maxDeviation < 1e-8);
    }
    CHECK(unitarityCheck(q, H(0), cplx(0, 0.3), 6).maxDeviation < 1e-8);
    CHECK(unitarityCheck(0.8, H(1), cplx(0, 1.7), 5).maxDeviation < 1e-8);
    CHECK(unitarityCheck(q, H(0), cplx(0.5, 0), 6).maxDeviation > 1e-2);
    CHECK(unitarityCheck(q, H(2), cplx(-0.5, 0.2), 6).maxDeviation > 1e-2);
}

TEST_CASE("periodicity in lambda") {
    CHECK(periodicityResidual(0.5, H(0), cplx(0.3, 0.2), 6) < 1e-10);
    CHECK(periodicityResidual(0.8, H(1), cplx(-0.7, 1.1), 5) < 1e-10);
}
