#include "doctest.h"
#include "expr.hpp"

#include <cmath>
#include <numbers>

using namespace qgw;

namespace {
const Field X = Field::Exact();
}

TEST_CASE("element expressions") {
    PWFunction ad = cli::parsePW(X, "alpha*delta - q*beta*gamma");
    CHECK(ad.equals(PWFunction::unit(X)));
    CHECK(cli::parsePW(X, "alpha^*").equals(delta(X)));
    CHECK(cli::parsePW(X, "u(1/2,0,1)").equals(PWFunction::coefficient(X, HalfInt::fromTwice(1), 0, 1)));
    CHECK(cli::parsePW(X, "2v^2 alpha").equals(alpha(X).scaled(Scalar::integer(X, 2) * Scalar::vpow(X, 2))));
    CHECK(cli::parsePW(X, "alpha^2").equals(pwMultiply(alpha(X), alpha(X))));
    CHECK(cli::parsePW(X, "-(alpha + beta)/2").equals((alpha(X) + beta(X)).scaled(Scalar::rational(X, mpq_class(-1, 2)))));
    CHECK_THROWS_AS(cli::parsePW(X, "alpha / beta"), std::invalid_argument);
    CHECK_THROWS_AS(cli::parsePW(X, "u(1/2,2,0)"), std::invalid_argument);
    CHECK_THROWS_AS(cli::parsePW(X, "0.5 alpha"), std::invalid_argument);
    CHECK_THROWS_AS(cli::parsePW(X, "alpha +"), std::invalid_argument);
}

TEST_CASE("scalars round-trip through the canonical printer") {
    Scalar s = (Scalar::vpow(X, 4) - Scalar::integer(X, 3)) / (Scalar::one(X) + Scalar::vpow(X, 2));
    CHECK(cli::parseScalar(X, s.str()).equals(s));
    CHECK(cli::parseScalar(X, "(v^-4)/(1)").equals(Scalar::vpow(X, -4)));
    CHECK_THROWS(cli::parseScalar(X, "alpha"));
}

TEST_CASE("numbers") {
    CHECK(cli::parseReal("1/2") == 0.5);
    CHECK(cli::parseReal("0.8") == 0.8);
    CHECK(cli::parseComplex("0.3+0.2i", 0.5) == cplx(0.3, 0.2));
    CHECK(cli::parseComplex("-1", 0.5) == cplx(-1, 0));
    CHECK(cli::parseComplex("-i", 0.5) == cplx(0, -1));
    cplx z = cli::parseComplex("0.1i/hbar", 0.5);
    CHECK(std::abs(z - cplx(0, 0.2 * std::numbers::pi / std::log(0.5))) < 1e-15);
}
