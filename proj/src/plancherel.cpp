#include "qgw/plancherel.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <map>
#include <numbers>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace qgw {

namespace {

HalfInt spin(int t) { return HalfInt::fromTwice(t); }

nlohmann::ordered_json cjson(cplx z) { return {z.real(), z.imag()}; }

// Tr(pi(x) M_w D) per weight w for one term x |x| a of u; D = 1 or pi(q^-H).
std::map<int, cplx> weightTraces(const Field& f, const SectionSpace& sec, const DKBasis& xb, const PWBasis& ab,
                                 bool dufloMoore) {
    std::map<int, cplx> out;
    if (xb.t < 0) throw std::invalid_argument("plancherel: unit DK leg has infinite trace");
    if (xb.t > sec.windowTwice) throw std::out_of_range("plancherel: window below the DK spin of u");
    // pi(x) vanishes unless the spin-t block is present in Gamma(E_mu)
    if (xb.t < std::abs(sec.mu.twice()) || (xb.t - sec.mu.twice()) % 2 != 0) return out;
    Mat px = piDK(f, sec, DKElement::component(spin(xb.t), Mat::unit(f, xb.t + 1, xb.t + 1, xb.i, xb.j))).mat;
    Mat d = dufloMoore ? piU(f, sec, PBWElement::K(f, -1)).mat : Mat::identity(f, sec.dim());
    const auto parts = piPWComponents(f, sec, PWFunction::coefficient(f, spin(ab.t), ab.i, ab.j));
    for (const auto& [w, m] : parts) {
        cplx tr = (px * m * d).trace().value();
        if (tr != cplx(0)) out[w] += tr;
    }
    return out;
}

// Weight traces of all of u at mu.
std::map<int, cplx> uTraces(const DoubleElement& u, HalfInt mu, int windowTwice, bool dufloMoore) {
    const Field& f = u.field();
    std::map<int, cplx> out;
    if (windowTwice < std::abs(mu.twice())) return out;
    SectionSpace sec = sectionSpace(mu, windowTwice);
    for (const auto& [key, c] : u.terms())
        for (const auto& [w, t] : weightTraces(f, sec, key.first, key.second, dufloMoore)) out[w] += c.value() * t;
    return out;
}

cplx evalTraces(double q, const std::map<int, cplx>& tr, cplx lam) {
    cplx s = 0;
    for (const auto& [w, t] : tr) s += std::pow(cplx(q), (lam + 1.0) * static_cast<double>(w)) * t;
    return s;
}

DoubleElement numericCopy(const DoubleElement& u, double q) {
    if (!u.field().exact) return u;
    Field f = Field::Numeric(q);
    DoubleElement r(f);
    for (const auto& [k, c] : u.terms()) r.add(k, c.toNumeric(q));
    return r;
}

}  // namespace

double hbar(double q) { return std::log(q) / (2 * std::numbers::pi); }
double circleLength(double q) { return std::abs(1.0 / hbar(q)); }

cplx qnumComplex(double q, cplx z) { return qnumComplex(Field::Numeric(q), z).value(); }

PlancherelPoint plancherelPoint(double q, HalfInt mu, double lam) {
    return {mu, lam, 0.5 * std::norm(qnumComplex(q, cplx(mu.toDouble(), lam)))};
}

int frequencyBound(int windowTwice) { return windowTwice + 2; }
int defaultNodes(int windowTwice) { return 4 * frequencyBound(windowTwice) + 8; }

QuadratureGrid quadratureGrid(double q, int N, int maxDKTwice) {
    if (N <= 0) throw std::invalid_argument("quadratureGrid: N must be positive");
    QuadratureGrid g;
    g.N = N;
    double len = circleLength(q);
    for (int n = 0; n < N; ++n) g.nodes.push_back(len * n / N);
    for (int t = -maxDKTwice; t <= maxDKTwice; ++t) g.mus.push_back(spin(t));
    return g;
}

Scalar haarPsiHat(const DKElement& x) {
    const Field& f = x.field();
    Scalar s = Scalar::zero(f);
    PBWElement kinv = PBWElement::K(f, -1);
    for (const auto& [t, xm] : x.components()) s += qdim(f, spin(t)) * (xm * elementImage(kinv, spin(t))).trace();
    return s;
}

Scalar haarPhiG(const PWFunction& a, const DKElement& x) { return haarPhi(a) * haarPsiHat(x); }

DoubleElement specialElement(const Field& f, HalfInt m, HalfInt mp, int i, int j, int k, int l) {
    int d = m.twice() + 1, dp = mp.twice() + 1;
    if (m.twice() < 0 || mp.twice() < 0 || i < 0 || j < 0 || k < 0 || l < 0 || i >= d || j >= d || k >= dp || l >= dp)
        throw std::invalid_argument("specialElement: index out of range");
    DoubleElement u(f);
    u.add({{m.twice(), i, j}, {mp.twice(), k, l}}, Scalar::one(f));
    return u;
}

cplx plancherelIntegrand(double q, const DoubleElement& u, HalfInt mu, double lam, int windowTwice) {
    DoubleElement un = numericCopy(u, q);
    if (windowTwice < un.maxDKTwice()) throw std::out_of_range("plancherel: window below the DK spin of u");
    return evalTraces(q, uTraces(un, mu, windowTwice, true), cplx(0, lam));
}

cplx principalTrace(double q, const DoubleElement& u, HalfInt mu, cplx lam, int windowTwice) {
    DoubleElement un = numericCopy(u, q);
    if (windowTwice < un.maxDKTwice()) throw std::out_of_range("plancherel: window below the DK spin of u");
    return evalTraces(q, uTraces(un, mu, windowTwice, false), lam);
}

unsigned threadCount() {
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (const char* e = std::getenv("QGW_THREADS")) {
        char* end = nullptr;
        long n = std::strtol(e, &end, 10);
        if (end != e && n > 0) return static_cast<unsigned>(std::min<long>(n, 256));
    }
    return hw;
}

PlancherelReport plancherelVerify(const DoubleElement& u, double q, int N, int windowTwice) {
    if (!(q > 0) || q == 1) throw std::invalid_argument("plancherelVerify: need q > 0, q != 1");
    DoubleElement un = numericCopy(u, q);
    if (windowTwice < un.maxDKTwice()) throw std::out_of_range("plancherel: window below the DK spin of u");
    PlancherelReport r;
    r.q = q;
    r.N = N;
    r.windowTwice = windowTwice;
    r.special = un.terms().size() == 1 && un.terms().begin()->first.first.t >= 0 &&
                std::abs(un.terms().begin()->second.value() - 1.0) == 0.0;
    r.epsilon = doubleCounit(un).value();

    QuadratureGrid g = quadratureGrid(q, N, std::max(0, un.maxDKTwice()));
    std::vector<std::map<int, cplx>> traces(g.mus.size());
    {
        unsigned nt = std::min<unsigned>(threadCount(), static_cast<unsigned>(g.mus.size()));
        std::vector<std::thread> pool;
        std::exception_ptr err;
        std::mutex errMu;
        for (unsigned w = 0; w < nt; ++w)
            pool.emplace_back([&, w] {
                try {
                    for (size_t n = w; n < g.mus.size(); n += nt) traces[n] = uTraces(un, g.mus[n], windowTwice, true);
                } catch (...) {
                    std::lock_guard<std::mutex> lk(errMu);
                    if (!err) err = std::current_exception();
                }
            });
        for (auto& t : pool) t.join();
        if (err) std::rethrow_exception(err);
    }
    double weight = circleLength(q) / N;
    for (size_t n = 0; n < g.mus.size(); ++n) {
        if (traces[n].empty()) continue;
        cplx s = 0;
        for (double lam : g.nodes) s += weight * plancherelPoint(q, g.mus[n], lam).density * evalTraces(q, traces[n], cplx(0, lam));
        r.perMu.emplace_back(g.mus[n], s);
        r.integral += s;
    }
    r.absError = std::abs(r.integral - r.epsilon);
    r.trace0Minus1 = principalTrace(q, un, spin(0), cplx(-1, 0), windowTwice);
    r.trace10 = principalTrace(q, un, spin(2), cplx(0, 0), windowTwice);
    return r;
}

std::string PlancherelReport::toJson() const {
    nlohmann::ordered_json j;
    j["schema"] = "qgw/1";
    j["q"] = q;
    j["N"] = N;
    j["window"] = spin(windowTwice).str();
    j["special"] = special;
    j["epsilon"] = cjson(epsilon);
    j["integral"] = cjson(integral);
    j["abs_error"] = absError;
    nlohmann::ordered_json pm = nlohmann::ordered_json::array();
    for (const auto& [mu, v] : perMu) pm.push_back({{"mu", mu.str()}, {"value", cjson(v)}});
    j["per_mu"] = pm;
    j["diagnostics"] = {{"trace_0_minus1", cjson(trace0Minus1)}, {"trace_1_0", cjson(trace10)}};
    return j.dump(2);
}

}  // namespace qgw
