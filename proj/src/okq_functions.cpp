#include "qgw/okq_functions.hpp"

#include "qgw/uq_modules.hpp"

#include "json.hpp"

#include <memory>
#include <mutex>
#include <stdexcept>

namespace qgw {

// ---------------------------------------------------------------- PWFunction

PWFunction PWFunction::unit(const Field& f) {
    PWFunction r(f);
    r.set(HalfInt(0), Mat::identity(f, 1));
    return r;
}

PWFunction PWFunction::coefficient(const Field& f, HalfInt m, int i, int j) {
    int d = m.twice() + 1;
    PWFunction r(f);
    r.set(m, Mat::unit(f, d, d, i, j));
    return r;
}

PWFunction PWFunction::component(HalfInt m, const Mat& c) {
    PWFunction r(c.field());
    r.set(m, c);
    return r;
}

Mat PWFunction::at(HalfInt m) const {
    auto it = comp_.find(m.twice());
    if (it != comp_.end()) return it->second;
    int d = m.twice() + 1;
    return Mat(f_, d, d);
}

void PWFunction::set(HalfInt m, const Mat& c) {
    if (c.rows() != m.twice() + 1 || c.cols() != m.twice() + 1)
        throw std::invalid_argument("PWFunction: component shape does not match spin");
    if (c.isZero(0.0))
        comp_.erase(m.twice());
    else
        comp_[m.twice()] = c;
}

void PWFunction::add(HalfInt m, const Mat& c) {
    auto it = comp_.find(m.twice());
    if (it == comp_.end())
        set(m, c);
    else
        set(m, it->second + c);
}

PWFunction PWFunction::operator+(const PWFunction& o) const {
    PWFunction r = *this;
    for (const auto& [t, c] : o.comp_) r.add(HalfInt::fromTwice(t), c);
    return r;
}

PWFunction PWFunction::operator-(const PWFunction& o) const { return *this + (-o); }

PWFunction PWFunction::scaled(const Scalar& s) const {
    PWFunction r(f_);
    for (const auto& [t, c] : comp_) r.set(HalfInt::fromTwice(t), c.scaled(s));
    return r;
}

bool PWFunction::isZero(double tol) const {
    for (const auto& [t, c] : comp_)
        if (!c.isZero(tol)) return false;
    return true;
}

bool PWFunction::equals(const PWFunction& o, double tol) const { return (*this - o).isZero(tol); }

double PWFunction::distance(const PWFunction& o) const {
    double d = 0;
    for (const auto& [t, c] : (*this - o).comp_) d = std::max(d, c.maxAbs());
    return d;
}

std::string PWFunction::toJson() const {
    nlohmann::ordered_json j;
    j["schema"] = "qgw/1";
    j["mode"] = f_.exact ? "exact" : "numeric";
    if (!f_.exact) j["q"] = f_.q;
    nlohmann::ordered_json comps = nlohmann::ordered_json::object();
    for (const auto& [t, c] : comp_) {
        nlohmann::ordered_json rows = nlohmann::ordered_json::array();
        for (int i = 0; i < c.rows(); ++i) {
            nlohmann::ordered_json row = nlohmann::ordered_json::array();
            for (int k = 0; k < c.cols(); ++k) row.push_back(c(i, k).str());
            rows.push_back(row);
        }
        comps[std::to_string(t)] = rows;
    }
    j["components"] = comps;
    return j.dump(1);
}

PWFunction pwBasis(const Field& f, const PWBasis& b) {
    return PWFunction::coefficient(f, HalfInt::fromTwice(b.t), b.i, b.j);
}

// ---------------------------------------------------------------- PWMulti

PWMulti PWMulti::fromFunction(const PWFunction& a) {
    PWMulti r(a.field(), 1);
    for (const auto& [t, c] : a.components())
        for (int i = 0; i < c.rows(); ++i)
            for (int j = 0; j < c.cols(); ++j)
                if (!c(i, j).isZero(0.0)) r.add({{t, i, j}}, c(i, j));
    return r;
}

PWMulti PWMulti::pure(const std::vector<PWFunction>& legs) {
    if (legs.empty()) throw std::invalid_argument("PWMulti::pure: no legs");
    PWMulti r = fromFunction(legs[0]);
    for (size_t l = 1; l < legs.size(); ++l) {
        PWMulti next(r.f_, r.arity_ + 1);
        PWMulti leg = fromFunction(legs[l]);
        for (const auto& [k1, c1] : r.terms_)
            for (const auto& [k2, c2] : leg.terms_) {
                auto k = k1;
                k.push_back(k2[0]);
                next.add(k, c1 * c2);
            }
        r = next;
    }
    return r;
}

void PWMulti::add(const std::vector<PWBasis>& k, const Scalar& c) {
    if (static_cast<int>(k.size()) != arity_) throw std::logic_error("PWMulti: arity mismatch");
    if (c.isZero(0.0)) return;
    auto it = terms_.find(k);
    if (it == terms_.end()) {
        terms_.emplace(k, c);
        return;
    }
    it->second += c;
    if (it->second.isZero(0.0)) terms_.erase(it);
}

PWMulti PWMulti::operator+(const PWMulti& o) const {
    PWMulti r = *this;
    for (const auto& [k, c] : o.terms_) r.add(k, c);
    return r;
}

PWMulti PWMulti::operator-(const PWMulti& o) const { return *this + o.scaled(Scalar::integer(f_, -1)); }

PWMulti PWMulti::scaled(const Scalar& s) const {
    PWMulti r(f_, arity_);
    for (const auto& [k, c] : terms_) r.add(k, c * s);
    return r;
}

bool PWMulti::isZero(double tol) const {
    for (const auto& [k, c] : terms_)
        if (!c.isZero(tol)) return false;
    return true;
}

bool PWMulti::equals(const PWMulti& o, double tol) const {
    return arity_ == o.arity_ && (*this - o).isZero(tol);
}

PWFunction PWMulti::toFunction() const {
    if (arity_ != 1) throw std::logic_error("PWMulti::toFunction: arity must be 1");
    PWFunction r(f_);
    for (const auto& [k, c] : terms_) r = r + pwBasis(f_, k[0]).scaled(c);
    return r;
}

// ---------------------------------------------------------------- images of monomials

namespace {

struct GenImages {
    Mat E, F, K, Kinv;
    bool anti = false;
};

const GenImages& genImages(const Field& f, HalfInt m, Twist tw) {
    static std::mutex mu;
    static std::map<std::tuple<std::string, int, int>, std::shared_ptr<GenImages>> cache;
    auto key = std::make_tuple(f.key(), m.twice(), static_cast<int>(tw));
    {
        std::lock_guard<std::mutex> lk(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return *it->second;
    }
    const WeightModule& v = irrep(f, m);
    auto g = std::make_shared<GenImages>();
    auto map = [&](const PBWElement& x) -> Mat {
        switch (tw) {
            case Twist::None: return act(v, x);
            case Twist::S: return act(v, antipode(x));
            case Twist::Sinv: return act(v, antipodeInverse(x));
            case Twist::SinvStar: return act(v, star(antipodeInverse(x)));
        }
        return Mat();
    };
    g->E = map(PBWElement::E(f));
    g->F = map(PBWElement::F(f));
    g->K = map(PBWElement::K(f));
    g->Kinv = map(PBWElement::K(f, -1));
    g->anti = (tw == Twist::S || tw == Twist::Sinv);
    std::lock_guard<std::mutex> lk(mu);
    return *cache.emplace(key, g).first->second;
}

Mat matPow(const Mat& m, int n) {
    Mat r = Mat::identity(m.field(), m.rows());
    for (int i = 0; i < n; ++i) r = r * m;
    return r;
}

}  // namespace

Mat monomialImage(const Field& f, HalfInt m, const Mono& x, Twist tw) {
    const GenImages& g = genImages(f, m, tw);
    Mat fa = matPow(g.F, x.a);
    Mat kb = matPow(x.b >= 0 ? g.K : g.Kinv, std::abs(x.b));
    Mat ec = matPow(g.E, x.c);
    return g.anti ? ec * kb * fa : fa * kb * ec;
}

Mat elementImage(const PBWElement& x, HalfInt m, Twist tw) {
    const Field& f = x.field();
    int d = m.twice() + 1;
    Mat r(f, d, d);
    for (const auto& [mono, c] : x.terms()) {
        Scalar s = tw == Twist::SinvStar ? c.conj() : c;
        r += monomialImage(f, m, mono, tw).scaled(s);
    }
    return r;
}

// ---------------------------------------------------------------- per-spin tables

std::vector<Mono> spinBasis(HalfInt m) {
    int d = m.twice() + 1;
    std::vector<Mono> out;
    for (int s = -(d - 1); s <= d - 1; ++s) {
        int c = std::max(0, -s), a = c + s;
        for (int b = 0; b < d - std::abs(s); ++b) out.push_back({a, b, c});
    }
    return out;
}

Mat applySparse(const SparseMap& map, const Mat& c, bool conjugate) {
    int d = c.rows();
    Mat r(c.field(), d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            const Scalar& x = c(i, j);
            if (x.isZero(0.0)) continue;
            Scalar xc = conjugate ? x.conj() : x;
            for (const auto& [k, l, s] : map[static_cast<size_t>(i * d + j)]) r(k, l) += s * xc;
        }
    return r;
}

namespace {

// Each map sends u_ij to a multiple of the unique coefficient with the
// required bi-weight, so one monomial pairing per entry fixes it.
SpinTables computeTables(const Field& f, HalfInt m) {
    int d = m.twice() + 1;
    auto probe = [](int k, int l) { return k >= l ? Mono{k - l, 0, 0} : Mono{0, 0, l - k}; };
    auto entry = [&](Twist tw, int i, int j, int k, int l, bool conjugate) {
        Mono x = probe(k, l);
        Scalar v = monomialImage(f, m, x, tw)(i, j);
        if (conjugate) v = v.conj();
        return std::make_tuple(k, l, v / monomialImage(f, m, x)(k, l));
    };
    SpinTables t;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            // skew pairing: (X, S(a)) = (S^-1(X), a)
            t.S.push_back({entry(Twist::Sinv, i, j, d - 1 - j, d - 1 - i, false)});
            t.Sinv.push_back({entry(Twist::S, i, j, d - 1 - j, d - 1 - i, false)});
            t.star.push_back({entry(Twist::SinvStar, i, j, d - 1 - i, d - 1 - j, true)});
        }
    return t;
}

}  // namespace

const SpinTables& spinTables(const Field& f, HalfInt m) {
    static std::mutex mu;
    static std::map<std::pair<std::string, int>, std::shared_ptr<SpinTables>> cache;
    auto key = std::make_pair(f.key(), m.twice());
    {
        std::lock_guard<std::mutex> lk(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return *it->second;
    }
    auto t = std::make_shared<SpinTables>(computeTables(f, m));
    std::lock_guard<std::mutex> lk(mu);
    return *cache.emplace(key, t).first->second;
}

// ---------------------------------------------------------------- Hopf structure

namespace {

void accumulateProduct(PWFunction& out, HalfInt ma, const Mat& ca, HalfInt mb, const Mat& cb, const HalfInt* only) {
    // (X, ab) = (Delta X, b (x) a): the product lives on V(mb) (x) V(ma)
    const CGDecomposition& cg = clebschGordan(ca.field(), mb, ma);
    Mat k = cb.kron(ca);
    for (const auto& s : cg.summands) {
        if (only && !(s.k == *only)) continue;
        out.add(s.k, s.incl.transpose() * k * s.proj.transpose());
    }
}

}  // namespace

PWFunction pwMultiply(const PWFunction& a, const PWFunction& b) {
    if (!(a.field() == b.field())) throw std::logic_error("pwMultiply: mode mismatch");
    PWFunction r(a.field());
    for (const auto& [ta, ca] : a.components())
        for (const auto& [tb, cb] : b.components())
            accumulateProduct(r, HalfInt::fromTwice(ta), ca, HalfInt::fromTwice(tb), cb, nullptr);
    return r;
}

Mat pwMultiplySpin(const PWFunction& a, const PWFunction& b, HalfInt k) {
    if (!(a.field() == b.field())) throw std::logic_error("pwMultiply: mode mismatch");
    PWFunction r(a.field());
    for (const auto& [ta, ca] : a.components())
        for (const auto& [tb, cb] : b.components()) {
            HalfInt ma = HalfInt::fromTwice(ta), mb = HalfInt::fromTwice(tb);
            if (k > ma + mb || k < (ma - mb).abs() || !(k + ma).congruent(mb)) continue;
            accumulateProduct(r, ma, ca, mb, cb, &k);
        }
    return r.at(k);
}

PWTensor pwCoproduct(const PWFunction& a) {
    PWMulti r(a.field(), 2);
    for (const auto& [t, c] : a.components()) {
        int d = t + 1;
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                if (c(i, j).isZero(0.0)) continue;
                for (int k = 0; k < d; ++k) r.add({{t, i, k}, {t, k, j}}, c(i, j));
            }
    }
    return r;
}

Scalar pwCounit(const PWFunction& a) {
    Scalar s = Scalar::zero(a.field());
    for (const auto& [t, c] : a.components()) s += c.trace();
    return s;
}

namespace {

PWFunction mapComponents(const PWFunction& a, SparseMap SpinTables::*which, bool conjugate) {
    PWFunction r(a.field());
    for (const auto& [t, c] : a.components()) {
        HalfInt m = HalfInt::fromTwice(t);
        r.add(m, applySparse(spinTables(a.field(), m).*which, c, conjugate));
    }
    return r;
}

PWFunction applyLeg(const PWFunction& a, PWLeg map) {
    switch (map) {
        case PWLeg::Id: return a;
        case PWLeg::S: return pwAntipode(a);
        case PWLeg::Star: return pwStar(a);
    }
    return a;
}

}  // namespace

PWFunction pwAntipode(const PWFunction& a) { return mapComponents(a, &SpinTables::S, false); }
PWFunction pwAntipodeInverse(const PWFunction& a) { return mapComponents(a, &SpinTables::Sinv, false); }
PWFunction pwStar(const PWFunction& a) { return mapComponents(a, &SpinTables::star, true); }

PWMulti coproductLeg(const PWMulti& t, int leg) {
    PWMulti r(t.field(), t.arity() + 1);
    for (const auto& [k, c] : t.terms()) {
        const PWBasis& b = k[leg];
        for (int m = 0; m <= b.t; ++m) {
            std::vector<PWBasis> nk(k.begin(), k.begin() + leg);
            nk.push_back({b.t, b.i, m});
            nk.push_back({b.t, m, b.j});
            nk.insert(nk.end(), k.begin() + leg + 1, k.end());
            r.add(nk, c);
        }
    }
    return r;
}

PWMulti counitLeg(const PWMulti& t, int leg) {
    PWMulti r(t.field(), t.arity() - 1);
    for (const auto& [k, c] : t.terms()) {
        if (k[leg].i != k[leg].j) continue;
        std::vector<PWBasis> nk = k;
        nk.erase(nk.begin() + leg);
        r.add(nk, c);
    }
    return r;
}

PWFunction multiplyLegs(const PWMulti& t, PWLeg left, PWLeg right) {
    if (t.arity() != 2) throw std::logic_error("multiplyLegs: arity must be 2");
    const Field& f = t.field();
    PWFunction r(f);
    for (const auto& [k, c] : t.terms()) {
        PWFunction a = applyLeg(pwBasis(f, k[0]), left);
        PWFunction b = applyLeg(pwBasis(f, k[1]), right);
        Scalar cc = (left == PWLeg::Star && right == PWLeg::Star) ? c.conj() : c;
        r = r + pwMultiply(a, b).scaled(cc);
    }
    return r;
}

PWMulti multiplyLegwise(const PWMulti& a, const PWMulti& b) {
    if (a.arity() != b.arity()) throw std::logic_error("multiplyLegwise: arity mismatch");
    const Field& f = a.field();
    std::map<std::pair<PWBasis, PWBasis>, PWMulti> memo;
    PWMulti r(f, a.arity());
    for (const auto& [ka, ca] : a.terms())
        for (const auto& [kb, cb] : b.terms()) {
            std::vector<PWFunction> legs;
            for (int l = 0; l < a.arity(); ++l) {
                auto key = std::make_pair(ka[l], kb[l]);
                auto it = memo.find(key);
                if (it == memo.end())
                    it = memo.emplace(key, PWMulti::fromFunction(pwMultiply(pwBasis(f, ka[l]), pwBasis(f, kb[l]))))
                             .first;
                legs.push_back(it->second.toFunction());
            }
            r = r + PWMulti::pure(legs).scaled(ca * cb);
        }
    return r;
}

PWMulti mapLegs(const PWMulti& t, PWLeg map) {
    const Field& f = t.field();
    PWMulti r(f, t.arity());
    for (const auto& [k, c] : t.terms()) {
        std::vector<PWFunction> legs;
        for (const auto& b : k) legs.push_back(applyLeg(pwBasis(f, b), map));
        r = r + PWMulti::pure(legs).scaled(map == PWLeg::Star ? c.conj() : c);
    }
    return r;
}

Scalar pair(const PBWElement& x, const PWFunction& a) {
    if (!(x.field() == a.field())) throw std::logic_error("pair: mode mismatch");
    const Field& f = a.field();
    Scalar s = Scalar::zero(f);
    for (const auto& [t, c] : a.components()) {
        Mat img = elementImage(x, HalfInt::fromTwice(t));
        for (int i = 0; i < c.rows(); ++i)
            for (int j = 0; j < c.cols(); ++j)
                if (!c(i, j).isZero(0.0)) s += c(i, j) * img(i, j);
    }
    return s;
}

Scalar pair(const Tensor& xs, const PWMulti& t) {
    if (xs.arity() != t.arity()) throw std::logic_error("pair: arity mismatch");
    const Field& f = t.field();
    Scalar s = Scalar::zero(f);
    for (const auto& [monos, cx] : xs.terms())
        for (const auto& [k, c] : t.terms()) {
            Scalar p = cx * c;
            for (int l = 0; l < t.arity() && !p.isZero(0.0); ++l)
                p *= monomialImage(f, HalfInt::fromTwice(k[l].t), monos[l])(k[l].i, k[l].j);
            s += p;
        }
    return s;
}

// Coefficients in the unitary basis (v_{1/2}, q^{-1/2} v_{-1/2}) of V(1/2).
PWFunction alpha(const Field& f) { return PWFunction::coefficient(f, HalfInt::fromTwice(1), 0, 0); }
PWFunction beta(const Field& f) {
    return PWFunction::coefficient(f, HalfInt::fromTwice(1), 0, 1).scaled(Scalar::vpow(f, -1));
}
PWFunction gamma(const Field& f) {
    return PWFunction::coefficient(f, HalfInt::fromTwice(1), 1, 0).scaled(Scalar::vpow(f, 1));
}
PWFunction delta(const Field& f) { return PWFunction::coefficient(f, HalfInt::fromTwice(1), 1, 1); }

}  // namespace qgw
