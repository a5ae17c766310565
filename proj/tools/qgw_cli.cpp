#include "CLI11.hpp"
#include "expr.hpp"
#include "json.hpp"
#include "qgw/plancherel.hpp"
#include "qgw/sampling.hpp"
#include "qgw/selftest.hpp"
#include "qgw/uq_modules.hpp"

#include <iostream>
#include <random>
#include <sstream>
#include <stdexcept>

using namespace qgw;
using json = nlohmann::ordered_json;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Config {
    std::string mode = "exact";
    std::string q = "1/2";
    std::string output = "pretty";
    unsigned long seed = 1;
};

struct Result {
    json j;
    int code = 0;
    std::string pretty;  // empty: fall back to JSON
};

// Run a conversion and blame the flag on failure.
template <class F>
auto flag(const std::string& name, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const std::exception& e) {
        throw UsageError(name + ": " + e.what());
    }
}

Field field(const Config& c) {
    if (c.mode == "exact") return Field::Exact();
    return flag("--q", [&] { return Field::Numeric(cli::parseReal(c.q)); });
}

double numericQ(const Config& c) {
    double q = flag("--q", [&] { return cli::parseReal(c.q); });
    if (!(q > 0) || q == 1) throw UsageError("--q: need q > 0, q != 1");
    return q;
}

HalfInt spinFlag(const std::string& name, const std::string& v) {
    return flag(name, [&] { return HalfInt::parse(v); });
}

json scalarJson(const Scalar& s) {
    if (s.exact()) return s.str();
    return json::array({s.value().real(), s.value().imag()});
}

json matJson(const Mat& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int k = 0; k < m.cols(); ++k) row.push_back(scalarJson(m(i, k)));
        rows.push_back(row);
    }
    return rows;
}

std::string num(double x) {
    std::ostringstream o;
    o.precision(4);
    o << x;
    return o.str();
}

std::string scalarText(const Scalar& s) {
    if (s.exact()) {
        std::string t = s.str();
        const std::string one = "/(1)";
        if (t.size() > one.size() && t.compare(t.size() - one.size(), one.size(), one) == 0) {
            t.resize(t.size() - one.size());
            bool sum = false;
            for (size_t n = 2; n + 1 < t.size(); ++n)
                if ((t[n] == '+' || t[n] == '-') && t[n - 1] != '^') sum = true;
            if (!sum) t = t.substr(1, t.size() - 2);
        }
        return t;
    }
    std::ostringstream o;
    o.precision(12);
    cplx z = s.value();
    o << z.real();
    if (z.imag() != 0) o << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i";
    return o.str();
}

std::string matText(const std::string& name, const Mat& m) {
    std::ostringstream o;
    o << name << " (" << m.rows() << "x" << m.cols() << "):\n";
    for (int i = 0; i < m.rows(); ++i) {
        o << "  [";
        for (int k = 0; k < m.cols(); ++k) o << (k ? ", " : "") << scalarText(m(i, k));
        o << "]\n";
    }
    return o.str();
}

json header(const Field& f) {
    json j;
    j["schema"] = "qgw/1";
    j["mode"] = f.exact ? "exact" : "numeric";
    if (!f.exact) j["q"] = f.q;
    return j;
}

// ---------------------------------------------------------------- double element input

DoubleElement doubleFromJson(const Field& f, const std::string& name, const std::string& text) {
    return flag(name, [&] {
        json in = json::parse(text);
        const json& terms = in.is_object() ? in.at("terms") : in;
        DoubleElement r(f);
        for (const auto& t : terms) {
            DKBasis x = kDKUnit;
            if (!(t.at("dk").is_string() && t.at("dk") == "1")) x = {t.at("dk")[0], t.at("dk")[1], t.at("dk")[2]};
            PWBasis a{t.at("pw")[0], t.at("pw")[1], t.at("pw")[2]};
            if (x.t > 0 && (x.i < 0 || x.j < 0 || x.i > x.t || x.j > x.t)) throw std::invalid_argument("dk index out of range");
            if (a.t < 0 || a.i < 0 || a.j < 0 || a.i > a.t || a.j > a.t) throw std::invalid_argument("pw index out of range");
            Scalar c = Scalar::one(f);
            if (t.contains("coeff")) {
                const json& cj = t["coeff"];
                if (cj.is_string()) c = cli::parseScalar(f, cj.get<std::string>());
                else if (cj.is_array()) c = Scalar(f, cplx(cj[0].get<double>(), cj[1].get<double>()));
                else c = f.exact ? Scalar::integer(f, cj.get<long>()) : Scalar(f, cplx(cj.get<double>(), 0));
            }
            r.add({x, a}, c);
        }
        return r;
    });
}

// ---------------------------------------------------------------- commands

Result cmdNormalize(const Config& c, const std::string& expr) {
    Field f = field(c);
    PBWElement x = flag("EXPR", [&] { return parse(f, expr); });
    Result r{header(f), 0, ""};
    r.j["input"] = expr;
    r.j["normal_form"] = x.str();
    r.pretty = x.str() + "\n";
    return r;
}

Result cmdRepr(const Config& c, const std::string& m) {
    Field f = field(c);
    HalfInt s = spinFlag("--m", m);
    if (s.twice() < 0) throw UsageError("--m: spin must be >= 0");
    WeightModule mod = irreducible(f, s);
    Result r{json::parse(toJson(mod)), 0, ""};
    r.pretty = "V(" + s.str() + "), weights";
    for (auto w : mod.weights) r.pretty += " " + w.str();
    r.pretty += "\n" + matText("E", mod.E) + matText("F", mod.F) + matText("K", mod.K);
    return r;
}

Result cmdCG(const Config& c, const std::string& m1s, const std::string& m2s) {
    Field f = field(c);
    HalfInt m1 = spinFlag("--m1", m1s), m2 = spinFlag("--m2", m2s);
    if (m1.twice() < 0 || m2.twice() < 0) throw UsageError("--m1/--m2: spins must be >= 0");
    const CGDecomposition& cg = clebschGordan(f, m1, m2);
    Result r{header(f), 0, ""};
    r.j["m1"] = m1.str();
    r.j["m2"] = m2.str();
    json ss = json::array();
    r.pretty = "V(" + m1.str() + ") (x) V(" + m2.str() + ") =";
    for (const auto& s : cg.summands) {
        ss.push_back({{"k", s.k.str()}, {"incl", matJson(s.incl)}, {"proj", matJson(s.proj)}});
        r.pretty += " V(" + s.k.str() + ")";
    }
    r.pretty += "\n";
    for (const auto& s : cg.summands) r.pretty += matText("incl V(" + s.k.str() + ")", s.incl);
    r.j["summands"] = ss;
    return r;
}

Result cmdCheckHopf(const Config& c, const std::string& algebra, int count, int degree, const std::string& maxSpin) {
    Field f = field(c);
    Result r{header(f), 0, ""};
    r.j["seed"] = c.seed;
    int checked = 0;
    json counter;
    auto fail = [&](const std::string& axiom, const std::string& elem) {
        if (counter.is_null()) counter = {{"axiom", axiom}, {"element", elem}};
    };
    if (algebra == "uq" || algebra == "all") {
        std::mt19937_64 rng(c.seed);
        for (int n = 0; n < count && counter.is_null(); ++n, ++checked) {
            PBWElement x = randomPBW(f, rng, degree, 3), y = randomPBW(f, rng, degree, 2);
            Tensor d = coproduct(x);
            PBWElement e = PBWElement::scalar(counit(x));
            if (!(coproductLeg(d, 0) == coproductLeg(d, 1))) fail("coassociativity", x.str());
            if (!(counitLeg(d, 0) == Tensor::pure({x})) || !(counitLeg(d, 1) == Tensor::pure({x}))) fail("counit", x.str());
            if (!(multiplyLegs(d, LegMap::S, LegMap::Id) == e) || !(multiplyLegs(d, LegMap::Id, LegMap::S) == e))
                fail("antipode", x.str());
            if (!(coproduct(x * y) == coproduct(x) * coproduct(y))) fail("multiplicativity", x.str() + " ; " + y.str());
            if (!(star(star(x)) == x) || !(star(x * y) == star(y) * star(x))) fail("star", x.str() + " ; " + y.str());
        }
    }
    if (algebra == "okq" || algebra == "all") {
        HalfInt top = spinFlag("--max-spin", maxSpin);
        for (int t = 0; t <= top.twice() && counter.is_null(); ++t)
            for (int i = 0; i <= t; ++i)
                for (int k = 0; k <= t; ++k, ++checked) {
                    PWFunction a = PWFunction::coefficient(f, HalfInt::fromTwice(t), i, k);
                    std::string name = "u(" + HalfInt::fromTwice(t).str() + "," + std::to_string(i) + "," + std::to_string(k) + ")";
                    PWTensor d = pwCoproduct(a);
                    PWFunction e = PWFunction::unit(f).scaled(pwCounit(a));
                    if (!coproductLeg(d, 0).equals(coproductLeg(d, 1))) fail("coassociativity", name);
                    if (!counitLeg(d, 0).toFunction().equals(a) || !counitLeg(d, 1).toFunction().equals(a)) fail("counit", name);
                    if (!multiplyLegs(d, PWLeg::S, PWLeg::Id).equals(e) || !multiplyLegs(d, PWLeg::Id, PWLeg::S).equals(e))
                        fail("antipode", name);
                    if (!pwStar(pwStar(a)).equals(a) || !pwCoproduct(pwStar(a)).equals(mapLegs(d, PWLeg::Star)))
                        fail("star", name);
                }
    }
    if (algebra != "uq" && algebra != "okq" && algebra != "all") throw UsageError("--algebra: expected uq, okq or all");
    r.j["checked"] = checked;
    r.j["ok"] = counter.is_null();
    if (!counter.is_null()) {
        r.j["counterexample"] = counter;
        r.code = 1;
    }
    r.pretty = std::string(counter.is_null() ? "ok" : "FAILED") + ": " + std::to_string(checked) + " elements, seed " +
               std::to_string(c.seed) + "\n";
    if (!counter.is_null()) r.pretty += "counterexample: " + counter.dump() + "\n";
    return r;
}

Result cmdCheckRelations(const Config& c, const std::string& maxSpin) {
    Field f = field(c);
    HalfInt top = spinFlag("--m", maxSpin);
    Result r{header(f), 0, ""};
    json rows = json::array();
    for (int t = 0; t <= top.twice(); ++t) {
        double res = relationResidual(irrep(f, HalfInt::fromTwice(t)));
        bool ok = f.exact ? res == 0.0 : res < 1e-9;
        rows.push_back({{"m", HalfInt::fromTwice(t).str()}, {"residual", res}, {"ok", ok}});
        r.pretty += "V(" + HalfInt::fromTwice(t).str() + "): residual " + num(res) + (ok ? "" : "  FAILED") + "\n";
        if (!ok && r.code == 0) {
            r.code = 1;
            r.j["counterexample"] = {{"m", HalfInt::fromTwice(t).str()}, {"residual", res}};
        }
    }
    r.j["modules"] = rows;
    return r;
}

Result cmdHaar(const Config& c, const std::string& expr, const std::string& gramSpin) {
    Field f = field(c);
    Result r{header(f), 0, ""};
    if (!expr.empty()) {
        PWFunction a = flag("--expr", [&] { return cli::parsePW(f, expr); });
        Scalar phi = haarPhi(a);
        bool inv = haarInvarianceCheck(a);
        r.j["expr"] = expr;
        r.j["phi"] = scalarJson(phi);
        r.j["invariant"] = inv;
        r.pretty += "phi = " + scalarText(phi) + "\ninvariant: " + (inv ? "yes" : "NO") + "\n";
        if (!inv) {
            r.code = 1;
            r.j["counterexample"] = expr;
        }
    }
    if (!gramSpin.empty()) {
        if (f.exact) throw UsageError("--gram: needs --mode numeric");
        HalfInt m = spinFlag("--gram", gramSpin);
        Mat g = gramMatrix(f, m);
        double e = minHermitianEigenvalue(g);
        r.j["gram"] = {{"m", m.str()}, {"matrix", matJson(g)}, {"min_eigenvalue", e}};
        r.pretty += "Gram matrix on spin " + m.str() + ": min eigenvalue " + num(e) + "\n";
        if (!(e > 1e-6)) r.code = 1;
    }
    if (expr.empty() && gramSpin.empty()) throw UsageError("haar: give --expr and/or --gram");
    return r;
}

Result cmdFourier(const Config& c, const std::string& expr) {
    Field f = field(c);
    PWFunction a = flag("--expr", [&] { return cli::parsePW(f, expr); });
    DKElement fa = fourier(a);
    bool round = inverseFourier(fa).equals(a);
    Result r{header(f), round ? 0 : 1, ""};
    r.j["expr"] = expr;
    json comps = json::object();
    for (const auto& [t, m] : fa.components()) {
        comps[HalfInt::fromTwice(t).str()] = matJson(m);
        r.pretty += matText("spin " + HalfInt::fromTwice(t).str(), m);
    }
    r.j["fourier"] = comps;
    r.j["inverse_roundtrip"] = round;
    r.pretty += std::string("inverse round trip: ") + (round ? "ok" : "FAILED") + "\n";
    return r;
}

Result cmdPeterWeyl(const Config& c, const std::string& fs, const std::string& gs, const std::string& weight) {
    Field f = field(c);
    if (weight != "inv-dim" && weight != "dim") throw UsageError("--weight: expected inv-dim or dim");
    PWFunction a = flag("--f", [&] { return cli::parsePW(f, fs); });
    PWFunction b = flag("--g", [&] { return cli::parsePW(f, gs); });
    PeterWeylSides s = peterWeylSides(a, b);
    bool invOk = s.inner.equals(s.invDimWeighted), dimOk = s.inner.equals(s.dimWeighted);
    Result r{header(f), 0, ""};
    r.j["f"] = fs;
    r.j["g"] = gs;
    r.j["inner"] = scalarJson(s.inner);
    r.j["inv_dim_weighted"] = scalarJson(s.invDimWeighted);
    r.j["dim_weighted"] = scalarJson(s.dimWeighted);
    r.j["holds_inv_dim"] = invOk;
    r.j["holds_dim"] = dimOk;
    r.code = (weight == "inv-dim" ? invOk : dimOk) ? 0 : 1;
    r.pretty = "<f,g> = " + scalarText(s.inner) + "\nsum (1/dim_q) Tr = " + scalarText(s.invDimWeighted) +
               "\nsum dim_q Tr = " + scalarText(s.dimWeighted) + "\n";
    return r;
}

Result cmdDoubleMul(const Config& c, const std::string& left, const std::string& right) {
    Field f = field(c);
    DoubleElement a = doubleFromJson(f, "--left", left), b = doubleFromJson(f, "--right", right);
    Result r{json::parse(doubleMultiply(a, b).toJson()), 0, ""};
    return r;
}

Result cmdDoubleAssoc(const Config& c, int count, const std::string& maxSpin) {
    Field f = field(c);
    int top = spinFlag("--max-spin", maxSpin).twice();
    std::mt19937_64 rng(c.seed);
    std::uniform_int_distribution<int> cd(-2, 2), pw(0, top), dk(-1, top);
    auto random = [&] {
        DoubleElement r(f);
        for (int n = 0; n < 2; ++n) {
            int a = dk(rng), b = pw(rng);
            std::uniform_int_distribution<int> ia(0, std::max(a, 0)), ib(0, b);
            int v = cd(rng);
            DKBasis x = a < 0 ? kDKUnit : DKBasis{a, ia(rng), ia(rng)};
            r.add({x, {b, ib(rng), ib(rng)}}, Scalar::integer(f, v == 0 ? 1 : v) * Scalar::vpow(f, cd(rng)));
        }
        return r;
    };
    Result r{header(f), 0, ""};
    r.j["seed"] = c.seed;
    int n = 0;
    for (; n < count; ++n) {
        DoubleElement a = random(), b = random(), x = random();
        if (!doubleMultiply(doubleMultiply(a, b), x).equals(doubleMultiply(a, doubleMultiply(b, x)))) {
            r.code = 1;
            r.j["counterexample"] = {{"a", json::parse(a.toJson())}, {"b", json::parse(b.toJson())}, {"c", json::parse(x.toJson())}};
            break;
        }
    }
    r.j["checked"] = n;
    r.j["ok"] = r.code == 0;
    r.pretty = std::string(r.code == 0 ? "ok" : "FAILED") + ": associativity on " + std::to_string(n) + " triples, seed " +
               std::to_string(c.seed) + "\n";
    return r;
}

Lambda lambdaFlag(const Field& f, const std::string& text) {
    cplx z = flag("--lambda", [&] { return cli::parseComplex(text, f.exact ? 0.5 : f.q); });
    if (f.exact) {
        if (z.imag() != 0 || z.real() != std::round(z.real()))
            throw UsageError("--lambda: exact mode needs an integer lambda");
        return Lambda::integer(static_cast<int>(std::lround(z.real())));
    }
    return Lambda::complex(z);
}

int windowFlag(const std::string& w) {
    HalfInt h = spinFlag("--window", w);
    if (h.twice() < 0) throw UsageError("--window: must be >= 0");
    return h.twice();
}

Result cmdDoubleYD(const Config& c, const std::string& mu, const std::string& lam, const std::string& window) {
    Field f = field(c);
    HalfInt m = spinFlag("--mu", mu);
    int w = windowFlag(window);
    if (w < std::abs(m.twice())) throw UsageError("--window: below |mu|");
    YDReport y = principalYD(f, m, lambdaFlag(f, lam), w);
    Result r{header(f), y.ok ? 0 : 1, ""};
    r.j["mu"] = m.str();
    r.j["lambda"] = lam;
    r.j["window"] = HalfInt::fromTwice(w).str();
    r.j["ok"] = y.ok;
    r.j["max_residual"] = y.maxResidual;
    r.pretty = std::string(y.ok ? "ok" : "FAILED") + ": Yetter-Drinfeld on the principal series window, residual " +
               num(y.maxResidual) + "\n";
    return r;
}

Result cmdPrincipalOp(const Config& c, const std::string& mu, const std::string& lam, const std::string& window,
                      const std::string& expr, const std::string& uq) {
    Field f = field(c);
    HalfInt m = spinFlag("--mu", mu);
    int w = windowFlag(window);
    if (w < std::abs(m.twice())) throw UsageError("--window: below |mu|");
    SectionSpace sec = sectionSpace(m, w);
    PrincipalOp op;
    if (!uq.empty()) {
        PBWElement x = flag("--uq", [&] { return parse(f, uq); });
        op = piU(f, sec, x);
    } else if (!expr.empty()) {
        PWFunction a = flag("--expr", [&] { return cli::parsePW(f, expr); });
        op = piPW(f, sec, lambdaFlag(f, lam), a);
    } else {
        throw UsageError("principal op: give --expr or --uq");
    }
    Result r{header(f), 0, ""};
    r.j["mu"] = m.str();
    r.j["lambda"] = lam;
    r.j["window"] = HalfInt::fromTwice(w).str();
    r.j["leg_order"] = legOrderName(kLegOrder);
    json basis = json::array();
    for (const auto& [t, i] : sec.basis) basis.push_back({{"m", HalfInt::fromTwice(t).str()}, {"i", i}});
    r.j["basis"] = basis;
    r.j["interior_spin"] = HalfInt::fromTwice(w - op.growthTwice).str();
    r.j["matrix"] = matJson(op.mat);
    r.pretty = matText("pi", op.mat);
    return r;
}

Result cmdPrincipalUnitarity(const Config& c, const std::string& mu, const std::string& lam, const std::string& window) {
    double q = numericQ(c);
    HalfInt m = spinFlag("--mu", mu);
    int w = windowFlag(window);
    cplx z = flag("--lambda", [&] { return cli::parseComplex(lam, q); });
    UnitarityReport u = unitarityCheck(q, m, z, w);
    double per = periodicityResidual(q, m, z, w);
    Result r{header(Field::Numeric(q)), 0, ""};
    r.j["mu"] = m.str();
    r.j["lambda"] = json::array({z.real(), z.imag()});
    r.j["window"] = HalfInt::fromTwice(w).str();
    r.j["adjointness_residual"] = u.maxDeviation;
    r.j["samples"] = u.samples;
    r.j["periodicity_residual"] = per;
    r.pretty = "adjointness residual " + num(u.maxDeviation) + " over " + std::to_string(u.samples) +
               " samples\nperiodicity residual " + num(per) + "\n";
    return r;
}

Result cmdPlancherel(const Config& c, const std::string& m, const std::string& mp, int i, int j, int k, int l, int N,
                     const std::string& window, bool asJson, double tol) {
    double q = numericQ(c);
    HalfInt sm = spinFlag("--m", m), smp = spinFlag("--mprime", mp);
    int w = windowFlag(window);
    if (N <= 0) throw UsageError("--N: must be positive");
    DoubleElement u = flag("--i/--j/--k/--l", [&] { return specialElement(Field::Exact(), sm, smp, i, j, k, l); });
    PlancherelReport rep = flag("--window", [&] { return plancherelVerify(u, q, N, w); });
    Result r{json::parse(rep.toJson()), rep.absError < tol ? 0 : 1, ""};
    if (!asJson) {
        std::ostringstream o;
        o.precision(6);
        o << "u = special(m=" << sm.str() << ", m'=" << smp.str() << "; " << i << j << k << l << "), q = " << q << ", N = " << N
          << "\neps(u) = " << rep.epsilon.real() << "\nintegral = " << rep.integral.real() << " + " << rep.integral.imag()
          << "i\n|error| = " << rep.absError << (r.code ? "  FAILED" : "") << "\n";
        r.pretty = o.str();
    }
    return r;
}

Result cmdSelftest(const std::string& level) {
    std::vector<int> only;
    if (level == "quick") only = {1, 2, 3, 4, 5, 6, 7, 9, 10, 11};
    else if (level != "full") throw UsageError("--level: expected quick or full");
    Result r{json::object(), 0, ""};
    r.j["schema"] = "qgw/1";
    r.j["level"] = level;
    json rows = json::array();
    for (const auto& c : runAcceptance({}, only)) {
        rows.push_back({{"id", c.id}, {"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
        r.pretty += formatResult(c) + "\n";
        if (!c.pass) r.code = 1;
    }
    r.j["criteria"] = rows;
    return r;
}

// key,value lines for every leaf
void flatten(const json& j, const std::string& prefix, std::ostream& out) {
    if (j.is_object()) {
        for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, out);
    } else if (j.is_array()) {
        for (size_t n = 0; n < j.size(); ++n) flatten(j[n], prefix + "." + std::to_string(n), out);
    } else {
        out << prefix << "," << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
    }
}

void emit(const Config& c, const Result& r) {
    if (c.output == "json") {
        std::cout << r.j.dump(2) << "\n";
    } else if (c.output == "csv") {
        std::cout << "key,value\n";
        flatten(r.j, "", std::cout);
    } else {
        std::cout << (r.pretty.empty() ? r.j.dump(2) + "\n" : r.pretty);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact and numeric computations on U_q(sl2), O(K_q), D(K_q) and the quantum double.\n"
                 "QGW_THREADS caps the number of worker threads."};
    app.fallthrough();
    app.require_subcommand(1);
    Config cfg;
    app.add_option("--mode", cfg.mode, "exact or numeric")->check(CLI::IsMember({"exact", "numeric"}))->capture_default_str();
    app.add_option("--q", cfg.q, "q for numeric mode (rational or decimal)")->capture_default_str();
    app.add_option("--output", cfg.output, "json, csv or pretty")->check(CLI::IsMember({"json", "csv", "pretty"}))->capture_default_str();
    app.add_option("--seed", cfg.seed, "seed for randomized checks")->capture_default_str();

    std::function<Result()> run;

    std::string expr;
    auto* normalize = app.add_subcommand("normalize", "PBW normal form of an expression in E, F, K");
    normalize->add_option("EXPR", expr, "expression")->required();
    normalize->callback([&] { run = [&] { return cmdNormalize(cfg, expr); }; });

    std::string m = "0", m2 = "0", mp = "1/2", maxSpin = "3/2";
    auto* repr = app.add_subcommand("repr", "generator matrices of V(m)");
    repr->add_option("--m", m, "spin")->required();
    repr->callback([&] { run = [&] { return cmdRepr(cfg, m); }; });

    auto* cg = app.add_subcommand("cg", "Clebsch-Gordan decomposition of V(m1) (x) V(m2)");
    cg->add_option("--m1", m, "first spin")->required();
    cg->add_option("--m2", m2, "second spin")->required();
    cg->callback([&] { run = [&] { return cmdCG(cfg, m, m2); }; });

    std::string algebra = "all";
    int count = 100, degree = 4;
    auto* hopf = app.add_subcommand("check-hopf", "Hopf axioms on U_q(sl2) samples and O(K_q) coefficients");
    hopf->add_option("--algebra", algebra, "uq, okq or all")->capture_default_str();
    hopf->add_option("--count", count, "number of U_q samples")->capture_default_str();
    hopf->add_option("--degree", degree, "max PBW degree")->capture_default_str();
    hopf->add_option("--max-spin", maxSpin, "max spin of O(K_q) coefficients")->capture_default_str();
    hopf->callback([&] { run = [&] { return cmdCheckHopf(cfg, algebra, count, degree, maxSpin); }; });

    std::string relSpin = "4";
    auto* rel = app.add_subcommand("check-relations", "defining relations on V(m) for all spins up to --m");
    rel->add_option("--m", relSpin, "max spin")->capture_default_str();
    rel->callback([&] { run = [&] { return cmdCheckRelations(cfg, relSpin); }; });

    std::string gram;
    auto* haar = app.add_subcommand("haar", "Haar state, invariance, Gram positivity");
    haar->add_option("--expr", expr, "element of O(K_q), e.g. \"alpha^* alpha\"");
    haar->add_option("--gram", gram, "spin for the Gram matrix (numeric mode)");
    haar->callback([&] { run = [&] { return cmdHaar(cfg, expr, gram); }; });

    auto* four = app.add_subcommand("fourier", "Fourier transform of an element of O(K_q)");
    four->add_option("--expr", expr, "element of O(K_q)")->required();
    four->callback([&] { run = [&] { return cmdFourier(cfg, expr); }; });

    std::string fexpr, gexpr, weight = "inv-dim";
    auto* pw = app.add_subcommand("peter-weyl", "both sides of the Peter-Weyl identity");
    pw->add_option("--f", fexpr, "first element")->required();
    pw->add_option("--g", gexpr, "second element")->required();
    pw->add_option("--weight", weight, "weighting checked for the exit code: inv-dim or dim")->capture_default_str();
    pw->callback([&] { run = [&] { return cmdPeterWeyl(cfg, fexpr, gexpr, weight); }; });

    std::string mu = "0", lam = "-1", window = "2";
    auto* dbl = app.add_subcommand("double", "quantum double D(G_q)");
    dbl->require_subcommand(1);
    std::string left, right;
    auto* mul = dbl->add_subcommand("mul", "product of two elements given as JSON terms");
    mul->add_option("--left", left, "JSON: [{\"dk\":[t,i,j] or \"1\",\"pw\":[t,i,j],\"coeff\":\"...\"}]")->required();
    mul->add_option("--right", right, "same format")->required();
    mul->callback([&] { run = [&] { return cmdDoubleMul(cfg, left, right); }; });
    int triples = 50;
    std::string assocSpin = "1";
    auto* assoc = dbl->add_subcommand("assoc", "associativity on seeded random triples");
    assoc->add_option("--count", triples, "number of triples")->capture_default_str();
    assoc->add_option("--max-spin", assocSpin, "max spin of the legs")->capture_default_str();
    assoc->callback([&] { run = [&] { return cmdDoubleAssoc(cfg, triples, assocSpin); }; });
    auto* check = dbl->add_subcommand("check", "compatibility checks");
    check->require_subcommand(1);
    auto* yd = check->add_subcommand("yd", "Yetter-Drinfeld compatibility of the principal series");
    yd->add_option("--mu", mu, "mu")->capture_default_str();
    yd->add_option("--lambda", lam, "lambda (integer in exact mode)")->capture_default_str();
    yd->add_option("--window", window, "largest spin kept")->capture_default_str();
    yd->callback([&] { run = [&] { return cmdDoubleYD(cfg, mu, lam, window); }; });

    std::string uq;
    auto* principal = app.add_subcommand("principal", "principal series pi_{mu,lambda}");
    principal->require_subcommand(1);
    auto* op = principal->add_subcommand("op", "matrix of an element on the window");
    op->add_option("--mu", mu, "mu")->capture_default_str();
    op->add_option("--lambda", lam, "lambda, e.g. 0.3+0.2i or 0.1i/hbar")->capture_default_str();
    op->add_option("--window", window, "largest spin kept")->capture_default_str();
    op->add_option("--expr", expr, "element of O(K_q)");
    op->add_option("--uq", uq, "element of U_q(sl2) acting through the compact part");
    op->callback([&] { run = [&] { return cmdPrincipalOp(cfg, mu, lam, window, expr, uq); }; });
    auto* unit = principal->add_subcommand("unitarity", "adjointness and periodicity residuals (numeric)");
    unit->add_option("--mu", mu, "mu")->capture_default_str();
    unit->add_option("--lambda", lam, "lambda")->capture_default_str();
    unit->add_option("--window", window, "largest spin kept")->capture_default_str();
    unit->callback([&] { run = [&] { return cmdPrincipalUnitarity(cfg, mu, lam, window); }; });

    int i = 0, j = 0, k = 0, l = 0, N = 64;
    bool asJson = false;
    double tol = 1e-8;
    std::string pm = "1/2", pwin = "4";
    auto* planch = app.add_subcommand("plancherel", "Plancherel identity on special elements");
    planch->require_subcommand(1);
    auto* verify = planch->add_subcommand("verify", "quadrature of Tr(pi(u) pi(q^-H)) against eps(u)");
    verify->add_option("--m", pm, "spin of the D(K_q) leg")->capture_default_str();
    verify->add_option("--mprime", mp, "spin of the O(K_q) leg")->capture_default_str();
    verify->add_option("--i", i)->capture_default_str();
    verify->add_option("--j", j)->capture_default_str();
    verify->add_option("--k", k)->capture_default_str();
    verify->add_option("--l", l)->capture_default_str();
    verify->add_option("--N", N, "quadrature nodes")->capture_default_str();
    verify->add_option("--window", pwin, "largest spin kept")->capture_default_str();
    verify->add_option("--tol", tol, "tolerance on |integral - eps|")->capture_default_str();
    verify->add_flag("--json", asJson, "print the JSON report");
    verify->callback([&] { run = [&] { return cmdPlancherel(cfg, pm, mp, i, j, k, l, N, pwin, asJson, tol); }; });

    std::string level = "full";
    auto* self = app.add_subcommand("selftest", "acceptance criteria");
    self->add_option("--level", level, "quick or full")->capture_default_str();
    self->callback([&] { run = [&] { return cmdSelftest(level); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    try {
        Result r = run();
        emit(cfg, r);
        return r.code;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
