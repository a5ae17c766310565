#include "qgw/selftest.hpp"

#include "qgw/plancherel.hpp"
#include "qgw/sampling.hpp"
#include "qgw/uq_modules.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

namespace qgw {

namespace {

const Field X = Field::Exact();
HalfInt H(int twice) { return HalfInt::fromTwice(twice); }

std::string fmt(const char* f, double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, x);
    return buf;
}

Mat fpow(const WeightModule& m, int k) {
    Mat r = Mat::identity(m.field, m.dim());
    for (int i = 0; i < k; ++i) r = r * m.F;
    return r;
}

std::vector<PWFunction> pwSpan(int maxTwice) {
    std::vector<PWFunction> out;
    for (int t = 0; t <= maxTwice; ++t)
        for (int i = 0; i <= t; ++i)
            for (int j = 0; j <= t; ++j) out.push_back(PWFunction::coefficient(X, H(t), i, j));
    return out;
}

CriterionResult relations() {
    CriterionResult r{1, "relation suite", true, "", 0};
    int checked = 0;
    for (int t = 0; t <= 8; ++t) {
        WeightModule v = irreducible(X, H(t));
        if (relationResidual(v) != 0.0) r.pass = false;
        ++checked;
    }
    PBWElement comm = parse(X, "E*F-F*E"), cartan = parse(X, "(K-K^-1)/(q-q^-1)");
    if (!(comm == cartan)) r.pass = false;
    for (int t = 0; t <= 8; ++t) {
        WeightModule v = irrep(X, H(t));
        if (!act(v, comm).equals(act(v, cartan))) r.pass = false;
    }
    r.detail = "V(m), m <= 4: " + std::to_string(checked) + " modules; [E,F] normal form " + comm.str();
    return r;
}

CriterionResult commutator() {
    CriterionResult r{2, "commutator oracle", true, "", 0};
    int checked = 0;
    for (int k = 0; k <= 5; ++k) {
        PBWElement fk1 = PBWElement::F(X).pow(k + 1);
        PBWElement nf = PBWElement::E(X) * fk1 - fk1 * PBWElement::E(X);
        for (int t = 0; t <= 6; ++t) {
            WeightModule v = irrep(X, H(t));
            // [k+1][H+k] F^k: F^k v_mu has H-eigenvalue 2mu - 2k
            Mat fk = fpow(v, k);
            Mat diag(X, v.dim(), v.dim());
            for (int i = 0; i < v.dim(); ++i) diag(i, i) = qnum(X, HalfInt(k + 1)) * qnum(X, v.weights[i] + v.weights[i] - HalfInt(k));
            if (!act(v, nf).equals(fk * diag)) r.pass = false;
            ++checked;
        }
    }
    r.detail = std::to_string(checked) + " (k, m) pairs, k <= 5, m <= 3";
    return r;
}

CriterionResult hopf() {
    CriterionResult r{3, "Hopf axiom suite", true, "", 0};
    const unsigned seed = 20240601;
    std::mt19937_64 rng(seed);
    int fails = 0;
    for (int n = 0; n < 100; ++n) {
        PBWElement x = randomPBW(X, rng, 4, 3), y = randomPBW(X, rng, 4, 2);
        Tensor d = coproduct(x);
        bool ok = coproductLeg(d, 0) == coproductLeg(d, 1);
        ok = ok && counitLeg(d, 0) == Tensor::pure({x}) && counitLeg(d, 1) == Tensor::pure({x});
        PBWElement e = PBWElement::scalar(counit(x));
        ok = ok && multiplyLegs(d, LegMap::S, LegMap::Id) == e && multiplyLegs(d, LegMap::Id, LegMap::S) == e;
        ok = ok && coproduct(x * y) == coproduct(x) * coproduct(y);
        // Delta(x^*) = (* (x) *) Delta(x)
        Tensor starred(X, 2);
        for (const auto& [legs, c] : d.terms())
            starred = starred + Tensor::pure({star(PBWElement::monomial(X, legs[0], c)), star(PBWElement::monomial(X, legs[1]))});
        ok = ok && coproduct(star(x)) == starred;
        ok = ok && star(star(x)) == x && star(x * y) == star(y) * star(x) && antipode(star(antipode(star(x)))) == x;
        if (!ok) ++fails;
    }
    int pwChecked = 0;
    for (const auto& a : pwSpan(3)) {
        PWTensor d = pwCoproduct(a);
        PWFunction e = PWFunction::unit(X).scaled(pwCounit(a));
        bool ok = coproductLeg(d, 0).equals(coproductLeg(d, 1)) && counitLeg(d, 0).toFunction().equals(a) &&
                  counitLeg(d, 1).toFunction().equals(a) && multiplyLegs(d, PWLeg::S, PWLeg::Id).equals(e) &&
                  multiplyLegs(d, PWLeg::Id, PWLeg::S).equals(e) && pwStar(pwStar(a)).equals(a) &&
                  pwAntipode(pwStar(pwAntipode(pwStar(a)))).equals(a) &&
                  pwCoproduct(pwStar(a)).equals(mapLegs(d, PWLeg::Star));
        if (!ok) ++fails;
        ++pwChecked;
    }
    r.pass = fails == 0;
    r.detail = "U_q: 100 elements (seed " + std::to_string(seed) + "), O(K_q): " + std::to_string(pwChecked) +
               " basis coefficients; failures " + std::to_string(fails);
    return r;
}

CriterionResult woronowicz() {
    CriterionResult r{4, "Woronowicz presentation", true, "", 0};
    PWFunction a = alpha(X), b = beta(X), c = gamma(X), d = delta(X), one = PWFunction::unit(X);
    Scalar q = Scalar::vpow(X, 2);
    auto mul = [](const PWFunction& x, const PWFunction& y) { return pwMultiply(x, y); };
    std::vector<std::pair<std::string, bool>> rel{
        {"ab=qba", mul(a, b).equals(mul(b, a).scaled(q))},
        {"ac=qca", mul(a, c).equals(mul(c, a).scaled(q))},
        {"bd=qdb", mul(b, d).equals(mul(d, b).scaled(q))},
        {"cd=qdc", mul(c, d).equals(mul(d, c).scaled(q))},
        {"bc=cb", mul(b, c).equals(mul(c, b))},
        {"ad-qbc=1", (mul(a, d) - mul(b, c).scaled(q)).equals(one)},
        {"da-q^-1bc=1", (mul(d, a) - mul(b, c).scaled(q.inv())).equals(one)},
        {"b=-qc*", b.equals(pwStar(c).scaled(-q))},
        {"d=a*", d.equals(pwStar(a))},
    };
    std::string failed;
    for (const auto& [name, ok] : rel)
        if (!ok) failed += " " + name;
    r.pass = failed.empty();
    r.detail = std::to_string(rel.size()) + " relations" + (failed.empty() ? "" : "; failed:" + failed);
    return r;
}

CriterionResult bgg() {
    CriterionResult r{5, "BGG exactness", true, "", 0};
    for (int t : {1, 2, 3, 4})
        if (!bggCheck(X, H(t), t + 4).ok()) r.pass = false;
    r.detail = "m in {1/2, 1, 3/2, 2}, depth 2m+4";
    return r;
}

CriterionResult haar() {
    CriterionResult r{6, "Haar suite", true, "", 0};
    int n = 0;
    for (const auto& a : pwSpan(3)) {
        if (!haarInvarianceCheck(a)) r.pass = false;
        ++n;
    }
    double minEig = 1e300;
    for (double q : {0.5, 0.75, 2.0}) minEig = std::min(minEig, minHermitianEigenvalue(gramMatrix(Field::Numeric(q), H(1))));
    if (!(minEig > 1e-6)) r.pass = false;
    r.detail = "invariance on " + std::to_string(n) + " basis coefficients; min Gram eigenvalue " + fmt("%.4g", minEig);
    return r;
}

CriterionResult peterWeyl() {
    CriterionResult r{7, "Peter-Weyl isometry", true, "", 0};
    std::vector<PWFunction> span = pwSpan(3);
    int pairs = 0, invDimFail = 0, dimFail = 0;
    for (const auto& f : span)
        for (const auto& g : span) {
            PeterWeylSides s = peterWeylSides(f, g);
            if (!s.inner.equals(s.invDimWeighted)) ++invDimFail;
            if (!s.inner.equals(s.dimWeighted)) ++dimFail;
            ++pairs;
        }
    bool bijective = true;
    for (int t = 0; t <= 3; ++t)
        if (rank(fourierMatrix(X, H(t))) != (t + 1) * (t + 1)) bijective = false;
    r.pass = invDimFail == 0 && bijective;
    r.detail = "1/dim_q weighting: " + std::to_string(invDimFail) + "/" + std::to_string(pairs) +
               " basis pairs fail; dim_q weighting: " + std::to_string(dimFail) + " fail; Fourier full rank: " +
               (bijective ? "yes" : "no");
    return r;
}

DoubleElement randomDouble(std::mt19937_64& rng, int maxTwice, int terms) {
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

CriterionResult doubleSuite() {
    CriterionResult r{8, "double suite", true, "", 0};
    const unsigned seed = 8;
    std::mt19937_64 rng(seed);
    int fails = 0, nonzero = 0;
    for (int n = 0; n < 50; ++n) {
        DoubleElement a = randomDouble(rng, 2, 2), b = randomDouble(rng, 2, 2), c = randomDouble(rng, 2, 2);
        DoubleElement lhs = doubleMultiply(doubleMultiply(a, b), c);
        if (!lhs.equals(doubleMultiply(a, doubleMultiply(b, c)))) ++fails;
        if (!lhs.isZero()) ++nonzero;
    }
    bool yd = principalYD(X, H(0), Lambda::integer(-1), 4).ok;
    r.pass = fails == 0 && yd;
    r.detail = "50 triples (seed " + std::to_string(seed) + ", " + std::to_string(nonzero) + " nonzero), " +
               std::to_string(fails) + " failures; YD at (0,-1), window 2: " + (yd ? "ok" : "fail");
    return r;
}

CriterionResult unitarity() {
    CriterionResult r{9, "unitarity dichotomy", true, "", 0};
    double q = 0.5, hb = hbar(q);
    double a = unitarityCheck(q, H(0), cplx(0, 0.1 / hb), 6).maxDeviation;
    double b = unitarityCheck(q, H(0), cplx(0, 0.37 / hb), 6).maxDeviation;
    double c = unitarityCheck(q, H(0), cplx(0.5, 0), 6).maxDeviation;
    r.pass = a < 1e-8 && b < 1e-8 && c > 1e-2;
    r.detail = "q=1/2, window 3: residual " + fmt("%.3g", a) + " at 0.1i/hbar, " + fmt("%.3g", b) + " at 0.37i/hbar, " +
               fmt("%.3g", c) + " at 0.5";
    return r;
}

CriterionResult plancherel() {
    CriterionResult r{10, "Plancherel identity", true, "", 0};
    auto t0 = std::chrono::steady_clock::now();
    double maxErr = 0, maxDiff = 0;
    int n = 0;
    for (double q : {0.5, 0.8})
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                for (int k = 0; k < 2; ++k)
                    for (int l = 0; l < 2; ++l) {
                        DoubleElement u = specialElement(X, H(1), H(1), i, j, k, l);
                        PlancherelReport a = plancherelVerify(u, q, 64, 8);
                        PlancherelReport b = plancherelVerify(u, q, 128, 8);
                        maxErr = std::max(maxErr, a.absError);
                        maxDiff = std::max(maxDiff, std::abs(a.integral - b.integral));
                        ++n;
                    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    r.pass = maxErr < 1e-8 && maxDiff < 1e-12 && secs < 300;
    r.detail = std::to_string(n) + " specials, max |int - eps| " + fmt("%.3g", maxErr) + ", N-doubling change " +
               fmt("%.3g", maxDiff) + ", " + fmt("%.2f", secs) + " s";
    return r;
}

CriterionResult periodicity() {
    CriterionResult r{11, "lambda-periodicity", true, "", 0};
    double worst = 0;
    worst = std::max(worst, periodicityResidual(0.5, H(0), cplx(0.3, 0.2), 6));
    worst = std::max(worst, periodicityResidual(0.5, H(1), cplx(-0.4, 0.9), 5));
    worst = std::max(worst, periodicityResidual(0.8, H(2), cplx(0.1, -0.6), 6));
    r.pass = worst < 1e-10;
    r.detail = "max residual " + fmt("%.3g", worst);
    return r;
}

}  // namespace

std::vector<CriterionResult> runAcceptance(const std::function<void(const CriterionResult&)>& onResult,
                                           const std::vector<int>& only) {
    const std::vector<std::function<CriterionResult()>> all{relations, commutator, hopf,    woronowicz,  bgg,        haar,
                                                            peterWeyl, doubleSuite, unitarity, plancherel, periodicity};
    std::vector<CriterionResult> out;
    for (size_t n = 0; n < all.size(); ++n) {
        int id = static_cast<int>(n) + 1;
        if (!only.empty() && std::find(only.begin(), only.end(), id) == only.end()) continue;
        auto t0 = std::chrono::steady_clock::now();
        CriterionResult r;
        try {
            r = all[n]();
        } catch (const std::exception& e) {
            r = {id, "criterion " + std::to_string(id), false, std::string("exception: ") + e.what(), 0};
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (onResult) onResult(r);
        out.push_back(r);
    }
    return out;
}

std::string formatResult(const CriterionResult& r) {
    std::ostringstream s;
    s << (r.pass ? "PASS" : "FAIL") << "  " << r.id << ". " << r.name << ": " << r.detail << " (" << fmt("%.1f", r.seconds)
      << " s)";
    return s.str();
}

}  // namespace qgw
