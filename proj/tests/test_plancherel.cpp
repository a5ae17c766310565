#include "doctest.h"
#include "json.hpp"
#include "qgw/plancherel.hpp"

#include <cmath>
#include <numbers>

using namespace qgw;

namespace {
const Field X = Field::Exact();
HalfInt H(int twice) { return HalfInt::fromTwice(twice); }

DKElement unitAt(int t, int i, int j) { return DKElement::component(H(t), Mat::unit(X, t + 1, t + 1, i, j)); }

// 2 pi / (|log q| (q - 1/q)^2): the lambda-integral of the density at mu = 0
double spinZeroMass(double q) { return 2 * std::numbers::pi / (std::abs(std::log(q)) * std::pow(q - 1 / q, 2)); }
}  // namespace

TEST_CASE("Haar functionals") {
    CHECK(haarPsiHat(DKElement::identityAt(X, H(0))).isOne());
    CHECK(haarPsiHat(DKElement::identityAt(X, H(1))).equals(qnum(X, 2) * qnum(X, 2)));
    CHECK(haarPsiHat(unitAt(2, 0, 1)).isZero());
    CHECK(haarPsiHat(unitAt(2, 2, 2)).equals(Scalar::vpow(X, 8) + Scalar::vpow(X, 4) + Scalar::one(X)));

    // (psiHat (x) id) Delta x = psiHat(x) 1 on spins below the window
    const int window = 4;
    for (int t = 0; t <= 2; ++t)
        for (int i = 0; i <= t; ++i)
            for (int j = 0; j <= t; ++j) {
                DKElement x = unitAt(t, i, j);
                std::map<int, Mat> contracted;
                for (const auto& [key, c] : dkCoproduct(x, window)) {
                    const auto& [b, a] = key;
                    auto it = contracted.find(a.t);
                    if (it == contracted.end()) it = contracted.emplace(a.t, Mat(X, a.t + 1, a.t + 1)).first;
                    it->second(a.i, a.j) += haarPsiHat(unitAt(b.t, b.i, b.j)) * c;
                }
                Scalar p = haarPsiHat(x);
                for (int s = 0; s <= window - t; ++s) {
                    auto it = contracted.find(s);
                    Mat got = it == contracted.end() ? Mat(X, s + 1, s + 1) : it->second;
                    CHECK(got.equals(Mat::identity(X, s + 1).scaled(p)));
                }
            }

    CHECK(haarPhiG(PWFunction::unit(X), DKElement::identityAt(X, H(0))).isOne());
    CHECK(haarPhiG(alpha(X), DKElement::identityAt(X, H(1))).isZero());
    PWFunction aa = pwMultiply(pwStar(alpha(X)), alpha(X));
    Scalar phiAA = Scalar::vpow(X, 4) / (Scalar::one(X) + Scalar::vpow(X, 4));
    CHECK(haarPhiG(aa, DKElement::identityAt(X, H(1))).equals(phiAA * qnum(X, 2) * qnum(X, 2)));
}

TEST_CASE("measure") {
    double q = 0.5, len = circleLength(q);
    CHECK(len == doctest::Approx(2 * std::numbers::pi / std::log(2.0)));
    CHECK(hbar(q) < 0);
    CHECK(std::abs(qnumComplex(q, cplx(2, 0)) - cplx(q + 1 / q, 0)) < 1e-14);
    CHECK(plancherelPoint(q, H(2), 0.3).density == doctest::Approx(0.5 * std::norm(qnumComplex(q, cplx(1, 0.3)))));

    // zeros exactly at mu = 0, lambda in (len/2) Z
    for (int n = 0; n <= 2; ++n) CHECK(plancherelPoint(q, H(0), n * len / 2).density < 1e-28);
    double minOff = 1e300, minNonzeroMu = 1e300;
    for (int n = 1; n < 200; ++n) {
        double lam = n * len / 400;
        minOff = std::min(minOff, plancherelPoint(q, H(0), lam).density);
        for (int t : {-2, -1, 1, 3}) minNonzeroMu = std::min(minNonzeroMu, plancherelPoint(q, H(t), lam).density);
    }
    CHECK(minOff > 1e-5);
    CHECK(minNonzeroMu > 1e-2);

    QuadratureGrid g = quadratureGrid(q, 8, 2);
    CHECK(g.nodes.size() == 8);
    CHECK(g.nodes[4] == doctest::Approx(len / 2));
    CHECK(g.mus.size() == 5);
    CHECK(defaultNodes(8) > 2 * frequencyBound(8));
}

TEST_CASE("integrand") {
    double q = 0.5;
    DoubleElement u0 = specialElement(X, H(0), H(0), 0, 0, 0, 0);
    for (double lam : {0.0, 0.7, 3.1}) {
        CHECK(std::abs(plancherelIntegrand(q, u0, H(0), lam, 2) - 1.0) < 1e-14);
        CHECK(std::abs(plancherelIntegrand(q, u0, H(2), lam, 2)) == 0.0);
    }

    DoubleElement u = specialElement(X, H(1), H(1), 1, 0, 0, 1);
    double len = circleLength(q);
    for (double lam : {0.2, 1.3}) {
        cplx v = plancherelIntegrand(q, u, H(1), lam, 4);
        CHECK(std::abs(v - plancherelIntegrand(q, u, H(1), lam, 8)) < 1e-12);
        CHECK(std::abs(v - plancherelIntegrand(q, u, H(1), lam + len, 4)) < 1e-12);
        for (int mu : {-3, -2, 0, 2, 3}) CHECK(plancherelIntegrand(q, u, H(mu), lam, 4) == cplx(0));
    }
    bool someNonzero = false;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            DoubleElement s = specialElement(X, H(1), H(1), i, j, i, j);
            someNonzero = someNonzero || std::abs(plancherelIntegrand(q, s, H(1), 0.4, 4)) > 1e-3;
        }
    CHECK(someNonzero);

    CHECK_THROWS_AS(plancherelIntegrand(q, u, H(1), 0.2, 0), std::out_of_range);
    CHECK_THROWS_AS(plancherelIntegrand(q, DoubleElement::unit(X), H(0), 0.2, 2), std::invalid_argument);
    CHECK_THROWS_AS(specialElement(X, H(1), H(1), 2, 0, 0, 0), std::invalid_argument);
}

TEST_CASE("Plancherel identity on spin-1/2 specials") {
    for (double q : {0.5, 0.8}) {
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                for (int k = 0; k < 2; ++k)
                    for (int l = 0; l < 2; ++l) {
                        DoubleElement u = specialElement(X, H(1), H(1), i, j, k, l);
                        PlancherelReport r = plancherelVerify(u, q, 64, 8);
                        CHECK(r.special);
                        CHECK(r.epsilon == cplx(0));
                        CHECK(r.absError < 1e-8);
                        CHECK(std::abs(plancherelVerify(u, q, 128, 8).integral - r.integral) < 1e-12);
                    }
    }
}

TEST_CASE("spin-0 specials") {
    for (double q : {0.5, 0.8}) {
        PlancherelReport r = plancherelVerify(specialElement(X, H(0), H(0), 0, 0, 0, 0), q, 64, 4);
        CHECK(r.epsilon == cplx(1));
        CHECK(r.integral.real() == doctest::Approx(spinZeroMass(q)).epsilon(1e-12));
        CHECK(r.perMu.size() == 1);
        for (int k = 0; k < 2; ++k) {
            PlancherelReport h = plancherelVerify(specialElement(X, H(0), H(1), 0, 0, k, k), q, 64, 4);
            CHECK(h.epsilon == cplx(1));
            CHECK(std::abs(h.integral) < 1e-12);
        }
    }
}

TEST_CASE("linearity and report") {
    double q = 0.5;
    DoubleElement s = specialElement(X, H(1), H(1), 0, 1, 1, 0).scaled(Scalar::integer(X, 3)) +
                      specialElement(X, H(2), H(1), 2, 0, 0, 0).scaled(Scalar::vpow(X, -2)) +
                      specialElement(X, H(1), H(0), 1, 1, 0, 0);
    PlancherelReport r = plancherelVerify(s, q, 64, 8);
    CHECK_FALSE(r.special);
    double bound = 3 * plancherelVerify(specialElement(X, H(1), H(1), 0, 1, 1, 0), q, 64, 8).absError +
                   2 * plancherelVerify(specialElement(X, H(2), H(1), 2, 0, 0, 0), q, 64, 8).absError +
                   plancherelVerify(specialElement(X, H(1), H(0), 1, 1, 0, 0), q, 64, 8).absError;
    CHECK(r.absError <= bound + 1e-15);

    auto j = nlohmann::json::parse(r.toJson());
    CHECK(j["schema"] == "qgw/1");
    CHECK(j["per_mu"].is_array());
    CHECK(j["diagnostics"].contains("trace_0_minus1"));
    CHECK(j["diagnostics"].contains("trace_1_0"));
    CHECK(j["abs_error"].get<double>() == doctest::Approx(r.absError));

    // the trace at (1, 0) sees the spin-1 block
    DoubleElement w = specialElement(X, H(2), H(0), 0, 0, 0, 0);
    CHECK(std::abs(principalTrace(q, w, H(2), cplx(0, 0), 4) - 1.0) < 1e-12);
    CHECK(std::abs(principalTrace(q, w, H(0), cplx(-1, 0), 4) - 1.0) < 1e-12);
    CHECK(threadCount() >= 1);
}
