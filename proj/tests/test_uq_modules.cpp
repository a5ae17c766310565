#include "doctest.h"
#include "json.hpp"
#include "qgw/sampling.hpp"
#include "qgw/uq_modules.hpp"

#include <fstream>

using namespace qgw;

namespace {
const Field X = Field::Exact();
HalfInt H(int twice) { return HalfInt::fromTwice(twice); }
Scalar qp(int n) { return Scalar::vpow(X, 2 * n); }

Mat fpow(const WeightModule& m, int k) {
    Mat r = Mat::identity(m.field, m.dim());
    for (int i = 0; i < k; ++i) r = r * m.F;
    return r;
}

void checkIntertwines(const Mat& left, const WeightModule& a, const WeightModule& b) {
    // left * a.X == b.X * left for the generators
    CHECK((left * a.E).equals(b.E * left));
    CHECK((left * a.F).equals(b.F * left));
    CHECK((left * a.K).equals(b.K * left));
}
}  // namespace

TEST_CASE("V(1/2) generator matrices") {
    WeightModule v = irreducible(X, H(1));
    REQUIRE(v.dim() == 2);
    CHECK(v.weights == std::vector<HalfInt>{H(1), H(-1)});
    CHECK(v.K(0, 0).equals(qp(1)));
    CHECK(v.K(1, 1).equals(qp(-1)));
    CHECK(v.E(0, 1).isOne());
    CHECK(v.F(1, 0).isOne());
    CHECK(v.E(1, 0).isZero());
    CHECK(v.F(0, 1).isZero());
}

TEST_CASE("V(0) is the trivial module") {
    WeightModule v = irreducible(X, 0);
    REQUIRE(v.dim() == 1);
    CHECK(v.E.isZero());
    CHECK(v.F.isZero());
    CHECK(v.K(0, 0).isOne());
}

TEST_CASE("V(1) raising coefficients are [2]") {
    WeightModule v = irreducible(X, 1);
    CHECK(v.E(0, 1).equals(qnum(X, 2)));
    CHECK(v.E(1, 2).equals(qnum(X, 2)));
    CHECK(v.K(0, 0).equals(qp(2)));
    CHECK(v.K(1, 1).isOne());
}

TEST_CASE("relations hold exactly on V(m), m <= 4") {
    for (int t = 0; t <= 8; ++t) {
        CAPTURE(t);
        WeightModule v = irreducible(X, H(t));
        CHECK(relationResidual(v) == 0.0);
        CHECK(v.K.trace().equals(qnum(X, t + 1)));
        CHECK(fpow(v, t + 1).isZero());
    }
}

TEST_CASE("relations hold numerically at q = 0.5 and q = 0.75") {
    for (double q0 : {0.5, 0.75})
        for (int t = 0; t <= 8; ++t) CHECK(relationResidual(irreducible(Field::Numeric(q0), H(t))) < 1e-9);
}

TEST_CASE("commutator [E, F^k] against the closed form") {
    // (E F^k - F^k E) v_mu = [k][2mu - k + 1] v_{mu-k+1}
    auto check = [](const WeightModule& v, int k, int cols) {
        Mat lhs = v.E * fpow(v, k) - fpow(v, k) * v.E;
        Mat diag(X, v.dim(), v.dim());
        for (int i = 0; i < v.dim(); ++i) {
            HalfInt mu = v.weights[i];
            diag(i, i) = qnum(X, k) * qnum(X, mu + mu - HalfInt(k - 1));
        }
        Mat rhs = fpow(v, k - 1) * diag;
        CHECK(lhs.block(0, 0, v.dim(), cols).equals(rhs.block(0, 0, v.dim(), cols)));
    };
    for (int t = 0; t <= 6; ++t)
        for (int k = 1; k <= 5; ++k) check(irreducible(X, H(t)), k, t + 1);
    // truncation only spoils columns whose F-string leaves the window
    WeightModule m = verma(X, H(3), 10);
    for (int k = 1; k <= 5; ++k) check(m, k, 10 - k);
}

TEST_CASE("modules represent the algebra and the coproduct") {
    std::mt19937_64 rng(11);
    WeightModule a = irreducible(X, 1), b = irreducible(X, H(1));
    WeightModule ab = tensor(a, b);
    for (int i = 0; i < 8; ++i) {
        PBWElement x = randomPBW(X, rng, 3, 2), y = randomPBW(X, rng, 3, 2);
        CHECK(act(a, x * y).equals(act(a, x) * act(a, y)));
        Mat viaDelta(X, ab.dim(), ab.dim());
        Tensor dx = coproduct(x);
        for (const auto& [legs, s] : dx.terms()) {
            Mat l = act(a, PBWElement::monomial(X, legs[0], s));
            Mat r = act(b, PBWElement::monomial(X, legs[1], Scalar::one(X)));
            viaDelta += l.kron(r);
        }
        CHECK(act(ab, x).equals(viaDelta));
    }
}

TEST_CASE("Verma module examples") {
    WeightModule m = verma(X, H(1), 4);
    CHECK(relationResidual(m, 3) == 0.0);
    // F^2 v_{1/2} is singular
    CHECK(m.E(1, 2).isZero());
    CHECK_FALSE(m.E(0, 1).isZero());
    WeightModule g = verma(X, H(-1), 5);
    for (int i = 1; i < 5; ++i) CHECK_FALSE(g.E(i - 1, i).isZero());
    CHECK_THROWS(verma(X, H(1), 0));
    CHECK_THROWS(verma(X, cplx(0.3, 0.2), 3));
}

TEST_CASE("complex-weight Verma module has no singular vectors in the window") {
    Field N = Field::Numeric(0.5);
    WeightModule m = verma(N, cplx(0.3, 0.7), 6);
    CHECK(relationResidual(m, 5) < 1e-9);
    auto hw = highestWeightVectors(m);
    REQUIRE(hw.size() == 1);
    CHECK(hw[0].first == HalfInt(0));
}

TEST_CASE("BGG resolution on truncated Verma modules") {
    for (int t : {1, 2, 3, 4}) {
        CAPTURE(t);
        BGGReport r = bggCheck(X, H(t), t + 4);
        CHECK(r.singularAnnihilated);
        CHECK(r.submoduleMatches);
        CHECK(r.quotientMatches);
        CHECK(r.dimensionsMatch);
    }
    CHECK_THROWS(bggCheck(X, H(2), 3));
}

TEST_CASE("tensor products and duals satisfy the relations") {
    WeightModule a = irreducible(X, H(1)), b = irreducible(X, 1), c = irreducible(X, H(3));
    CHECK(relationResidual(tensor(a, b)) == 0.0);
    CHECK(relationResidual(tensor(tensor(a, b), c)) == 0.0);
    CHECK(relationResidual(dual(c)) == 0.0);
    CHECK(relationResidual(tensor(dual(b), a)) == 0.0);
    WeightModule ab = tensor(a, a);
    // E (v_- (x) v_-) = v_+ (x) q^-1 v_- + v_- (x) v_+
    CHECK(ab.E(1, 3).equals(qp(-1)));
    CHECK(ab.E(2, 3).isOne());
}

TEST_CASE("evaluation pairing V* (x) V -> C is invariant") {
    for (int t = 0; t <= 4; ++t) {
        WeightModule v = irreducible(X, H(t));
        WeightModule dv = tensor(dual(v), v);
        int d = v.dim();
        Mat ev(X, 1, d * d);
        for (int i = 0; i < d; ++i) ev(0, i * d + i) = Scalar::one(X);
        CHECK((ev * dv.E).isZero());
        CHECK((ev * dv.F).isZero());
        CHECK((ev * dv.K).equals(ev));
    }
}

TEST_CASE("Clebsch-Gordan for 1/2 (x) 1/2") {
    const CGDecomposition& cg = clebschGordan(X, H(1), H(1));
    REQUIRE(cg.summands.size() == 2);
    CHECK(cg.summands[0].k == HalfInt(1));
    CHECK(cg.summands[1].k == HalfInt(0));
    // E-kernel at weight 0: a + b q = 0 with w = a (+,-) + b (-,+)
    const Mat& w = cg.summands[1].incl;
    CHECK(w(1, 0).isOne());
    CHECK(w(2, 0).equals(-qp(-1)));
    CHECK(w(0, 0).isZero());
    CHECK(w(3, 0).isZero());
}

TEST_CASE("Clebsch-Gordan summands for (1, 1/2)") {
    const CGDecomposition& cg = clebschGordan(X, 1, H(1));
    REQUIRE(cg.summands.size() == 2);
    CHECK(cg.find(H(3)) != nullptr);
    CHECK(cg.find(H(1)) != nullptr);
    CHECK(cg.find(HalfInt(1)) == nullptr);
    CHECK(cg.find(H(3))->incl.cols() == 4);
}

TEST_CASE("Clebsch-Gordan completeness, biorthogonality and equivariance") {
    for (int t1 = 0; t1 <= 3; ++t1)
        for (int t2 = 0; t2 <= 3; ++t2) {
            CAPTURE(t1);
            CAPTURE(t2);
            const CGDecomposition& cg = clebschGordan(X, H(t1), H(t2));
            WeightModule t = tensor(irrep(X, H(t1)), irrep(X, H(t2)));
            Mat sum(X, t.dim(), t.dim());
            for (const auto& s : cg.summands) {
                const WeightModule& vk = irrep(X, s.k);
                CHECK((s.proj * s.incl).equals(Mat::identity(X, vk.dim())));
                checkIntertwines(s.proj, t, vk);
                CHECK((t.E * s.incl).equals(s.incl * vk.E));
                CHECK((t.F * s.incl).equals(s.incl * vk.F));
                CHECK((t.K * s.incl).equals(s.incl * vk.K));
                sum += s.incl * s.proj;
            }
            CHECK(sum.equals(Mat::identity(X, t.dim())));
        }
}

TEST_CASE("numeric Clebsch-Gordan agrees with the exact one") {
    Field N = Field::Numeric(0.5);
    const CGDecomposition& ex = clebschGordan(X, 1, H(3));
    const CGDecomposition& nu = clebschGordan(N, 1, H(3));
    REQUIRE(ex.summands.size() == nu.summands.size());
    for (size_t i = 0; i < ex.summands.size(); ++i) {
        CHECK(ex.summands[i].incl.toNumeric(0.5).distance(nu.summands[i].incl) < 1e-9);
        CHECK(ex.summands[i].proj.toNumeric(0.5).distance(nu.summands[i].proj) < 1e-9);
    }
}

TEST_CASE("highest weight vectors") {
    auto hv = highestWeightVectors(irreducible(X, H(3)));
    REQUIRE(hv.size() == 1);
    CHECK(hv[0].first == H(3));
    CHECK(hv[0].second(0, 0).isOne());

    auto ht = highestWeightVectors(tensor(irreducible(X, H(1)), irreducible(X, H(1))));
    REQUIRE(ht.size() == 2);
    CHECK(ht[0].first == HalfInt(1));
    CHECK(ht[1].first == HalfInt(0));

    // truncated Verma: top vector and the singular vector F^2 v
    auto hm = highestWeightVectors(verma(X, H(1), 4));
    REQUIRE(hm.size() == 2);
    CHECK(hm[0].first == H(1));
    CHECK(hm[1].first == H(-3));
}

TEST_CASE("irreducible modules match the frozen golden files") {
    for (int t = 0; t <= 4; ++t) {
        CAPTURE(t);
        std::ifstream in(std::string(QGW_GOLDEN_DIR) + "/irreducible_" + std::to_string(t) + ".json");
        REQUIRE(in.good());
        nlohmann::json golden = nlohmann::json::parse(in);
        nlohmann::json mine = nlohmann::json::parse(toJson(irreducible(X, H(t))));
        for (const char* key : {"weights", "E", "F", "K"}) {
            CAPTURE(key);
            CHECK(mine[key] == golden[key]);
        }
    }
}

TEST_CASE("JSON export carries schema and mode") {
    auto j = nlohmann::json::parse(toJson(irreducible(Field::Numeric(0.5), H(1))));
    CHECK(j["schema"] == "qgw/1");
    CHECK(j["mode"] == "numeric");
    CHECK(j["q"].get<double>() == 0.5);
}
