#include "doctest.h"
#include "qgw/scalar.hpp"

#include <cmath>

using namespace qgw;

namespace {
const Field X = Field::Exact();
Scalar q() { return Scalar::vpow(X, 2); }
}  // namespace

TEST_CASE("qnum(2) is q + q^-1") {
    CHECK(qnum(X, 2).equals(q() + q().inv()));
    CHECK(qnum(X, 2).str() == "(v^2+v^-2)/(1)");
}

TEST_CASE("qnum(0) vanishes") { CHECK(qnum(X, 0).isZero()); }

TEST_CASE("qnum(a-b) qnum(a+b) = qnum(a)^2 - qnum(b)^2 for (3,1)") {
    CHECK((qnum(X, 2) * qnum(X, 4)).equals(qnum(X, 3) * qnum(X, 3) - qnum(X, 1) * qnum(X, 1)));
}

TEST_CASE("q-number product identity for |a|,|b| <= 8") {
    for (int a = -8; a <= 8; ++a)
        for (int b = -8; b <= 8; ++b) {
            Scalar lhs = qnum(X, a - b) * qnum(X, a + b);
            Scalar rhs = qnum(X, a) * qnum(X, a) - qnum(X, b) * qnum(X, b);
            CHECK(lhs.equals(rhs));
        }
}

TEST_CASE("qnum is odd, including half-integers") {
    for (int t = -12; t <= 12; ++t) {
        HalfInt a = HalfInt::fromTwice(t);
        CHECK(qnum(X, -a).equals(-qnum(X, a)));
    }
}

TEST_CASE("qnum integer expansion is a Laurent polynomial") {
    for (int a = 0; a <= 6; ++a) CHECK(qnum(X, a).rat().isPolynomial());
    // half-integer q-numbers are genuine fractions
    CHECK_FALSE(qnum(X, HalfInt::fromTwice(1)).rat().isPolynomial());
}

TEST_CASE("eval of qnum(3) at q=2 is 21/4") {
    cplx z = qnum(X, 3).eval(std::sqrt(2.0));
    CHECK(std::abs(z - 5.25) < 1e-14);
}

TEST_CASE("exact evaluation agrees with numeric q-numbers") {
    // frozen mpmath values of (q^a - q^-a)/(q - q^-1)
    struct Row {
        double q;
        double v1, v2, v3, vHalf, v5Half;
    };
    const Row rows[] = {
        {0.5, 1.0, 2.5, 5.25, 0.47140452079103168293, 3.6533850361304955427},
        {0.75, 1.0, 2.0833333333333333333, 3.3402777777777777778, 0.49487165930539351244, 2.6839914299827245362},
        {2.0, 1.0, 2.5, 5.25, 0.47140452079103168293, 3.6533850361304955427},
    };
    for (const auto& r : rows) {
        Field N = Field::Numeric(r.q);
        double sq = std::sqrt(r.q);
        const std::pair<HalfInt, double> pts[] = {{HalfInt(1), r.v1},
                                                  {HalfInt(2), r.v2},
                                                  {HalfInt(3), r.v3},
                                                  {HalfInt::fromTwice(1), r.vHalf},
                                                  {HalfInt::fromTwice(5), r.v5Half}};
        for (const auto& [a, expect] : pts) {
            double ex = qnum(X, a).eval(sq).real();
            double nu = qnum(N, a).value().real();
            CHECK(std::abs(ex - expect) <= 1e-12 * std::abs(expect));
            CHECK(std::abs(nu - expect) <= 1e-12 * std::abs(expect));
        }
    }
}

TEST_CASE("qnumComplex") {
    Field N = Field::Numeric(0.5);
    CHECK(std::abs(qnumComplex(N, 1.0).value() - 1.0) < 1e-14);
    CHECK(std::abs(qnumComplex(N, cplx(0, M_PI / std::log(0.5))).value()) < 1e-14);
    double m2 = std::norm(qnumComplex(N, cplx(1, 0.3)).value());
    CHECK(std::abs(m2 - 1.07577084221309100860) < 1e-13);
    CHECK_THROWS(qnumComplex(X, 1.0));
}

TEST_CASE("field operations") {
    Scalar d = q() - q().inv();
    Scalar inv = d.inv();
    CHECK((d * inv).isOne());
    Scalar x = qnum(X, 5) / (q() + Scalar::integer(X, 3));
    CHECK((x + (-x)).isZero());
    CHECK_THROWS(Scalar::zero(X).inv());
    CHECK_THROWS(Scalar::integer(X, 1) + Scalar::integer(Field::Numeric(0.5), 1));
    CHECK_THROWS(Field::Numeric(1.0));
    CHECK_THROWS(Field::Numeric(-2.0));
}

TEST_CASE("canonical reduction makes equal elements structurally equal") {
    // (q^2 - 1)/(q - 1) == q + 1
    Scalar a = (q() * q() - Scalar::one(X)) / (q() - Scalar::one(X));
    Scalar b = q() + Scalar::one(X);
    CHECK(a.rat() == b.rat());
    Scalar c = (qnum(X, 4) / qnum(X, 2));
    CHECK(c.rat() == (q() * q() + q().inv() * q().inv()).rat());
}

TEST_CASE("eval is a homomorphism") {
    Scalar a = qnum(X, 3) / (q() + Scalar::integer(X, 2));
    Scalar b = qnum(X, HalfInt::fromTwice(3));
    for (double q0 : {0.5, 0.75, 2.0}) {
        double v0 = std::sqrt(q0);
        CHECK(std::abs((a * b).eval(v0) - a.eval(v0) * b.eval(v0)) < 1e-12);
        CHECK(std::abs((a + b).eval(v0) - (a.eval(v0) + b.eval(v0))) < 1e-12);
    }
}

TEST_CASE("text round trip") {
    Scalar a = qnum(X, 3) / (q() + Scalar::integer(X, 2)) * Scalar::rational(X, mpq_class(3, 7));
    RatFunc back = RatFunc::parse(a.str());
    CHECK(back == a.rat());
    CHECK(RatFunc::parse("(v^2+v^-2)/(1)") == qnum(X, 2).rat());
}

TEST_CASE("HalfInt") {
    HalfInt h = HalfInt::fromTwice(3);
    CHECK(!h.isInteger());
    CHECK((h + HalfInt::fromTwice(1)).isInteger());
    CHECK(h.str() == "3/2");
    CHECK(HalfInt::parse("3/2") == h);
    CHECK(HalfInt::parse("1.5") == h);
    CHECK(HalfInt::parse("-2") == HalfInt(-2));
    CHECK_THROWS(HalfInt::parse("1/3"));
}
