#include "qgw/gq_double.hpp"

#include "qgw/uq_modules.hpp"

#include "json.hpp"

#include <algorithm>
#include <memory>
#include <mutex>
#include <set>
#include <stdexcept>

namespace qgw {

namespace {

HalfInt spin(int t) { return HalfInt::fromTwice(t); }

Scalar pwBasisCounit(const Field& f, const PWBasis& b) {
    return b.i == b.j ? Scalar::one(f) : Scalar::zero(f);
}

Scalar dkBasisCounit(const Field& f, const DKBasis& b) {
    return b.t <= 0 ? Scalar::one(f) : Scalar::zero(f);
}

void addPure(DoubleElement& r, const DKElement& x, const PWFunction& a, const Scalar& c) {
    for (const auto& [t, xm] : x.components())
        for (int p = 0; p < xm.rows(); ++p)
            for (int q = 0; q < xm.cols(); ++q) {
                if (xm(p, q).isZero(0.0)) continue;
                for (const auto& [s, am] : a.components())
                    for (int i = 0; i < am.rows(); ++i)
                        for (int j = 0; j < am.cols(); ++j)
                            if (!am(i, j).isZero(0.0)) r.add({{t, p, q}, {s, i, j}}, c * xm(p, q) * am(i, j));
            }
}

void addUnitPure(DoubleElement& r, const PWFunction& a, const Scalar& c) {
    for (const auto& [s, am] : a.components())
        for (int i = 0; i < am.rows(); ++i)
            for (int j = 0; j < am.cols(); ++j)
                if (!am(i, j).isZero(0.0)) r.add({kDKUnit, {s, i, j}}, c * am(i, j));
}

// (Delta (x) id) Delta y on V(s) (x) V(m) (x) V(s) restricted to the spin-t
// block of y is sum_j L_j y_t R_j; the factors are memoized.
struct Factors {
    std::vector<Mat> L, R;
};

const Factors& coproduct3Factors(const Field& f, HalfInt s, HalfInt m, HalfInt t) {
    static std::mutex mu;
    static std::map<std::tuple<std::string, int, int, int>, std::shared_ptr<Factors>> cache;
    auto key = std::make_tuple(f.key(), s.twice(), m.twice(), t.twice());
    {
        std::lock_guard<std::mutex> lk(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return *it->second;
    }
    auto out = std::make_shared<Factors>();
    Mat id = Mat::identity(f, s.twice() + 1);
    for (const auto& j : clebschGordan(f, s, m).summands) {
        const CGSummand* inner = clebschGordan(f, j.k, s).find(t);
        if (inner == nullptr) continue;
        out->L.push_back(j.incl.kron(id) * inner->incl);
        out->R.push_back(inner->proj * j.proj.kron(id));
    }
    std::lock_guard<std::mutex> lk(mu);
    auto [it, inserted] = cache.emplace(key, out);
    return *it->second;
}

Mat coproduct3Block(const DKElement& y, HalfInt s, HalfInt m) {
    const Field& f = y.field();
    int ds = s.twice() + 1, d = ds * (m.twice() + 1) * ds;
    Mat r(f, d, d);
    for (const auto& [t, yt] : y.components()) {
        const Factors& fac = coproduct3Factors(f, s, m, spin(t));
        for (size_t n = 0; n < fac.L.size(); ++n) r += fac.L[n] * yt * fac.R[n];
    }
    return r;
}

// u_a u_b, memoized.
const PWFunction& basisProduct(const Field& f, const PWBasis& a, const PWBasis& b) {
    static std::mutex mu;
    static std::map<std::tuple<std::string, PWBasis, PWBasis>, std::shared_ptr<PWFunction>> cache;
    auto key = std::make_tuple(f.key(), a, b);
    {
        std::lock_guard<std::mutex> lk(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return *it->second;
    }
    auto v = std::make_shared<PWFunction>(pwMultiply(pwBasis(f, a), pwBasis(f, b)));
    std::lock_guard<std::mutex> lk(mu);
    return *cache.emplace(key, v).first->second;
}

struct Grouped {
    DKElement x;
    Scalar unit;
};

std::map<PWBasis, Grouped> groupByO(const DoubleElement& s) {
    std::map<PWBasis, Grouped> g;
    const Field& f = s.field();
    for (const auto& [k, c] : s.terms()) {
        auto it = g.find(k.second);
        if (it == g.end()) it = g.emplace(k.second, Grouped{DKElement(f), Scalar::zero(f)}).first;
        if (k.first.t < 0) {
            it->second.unit += c;
        } else {
            HalfInt m = spin(k.first.t);
            Mat block = it->second.x.at(m);
            block(k.first.i, k.first.j) += c;
            it->second.x.set(m, block);
        }
    }
    return g;
}

}  // namespace

// ---------------------------------------------------------------- DoubleElement

DoubleElement DoubleElement::unit(const Field& f) {
    DoubleElement r(f);
    r.add({kDKUnit, {0, 0, 0}}, Scalar::one(f));
    return r;
}

DoubleElement DoubleElement::pure(const DKElement& x, const PWFunction& a) {
    DoubleElement r(a.field());
    addPure(r, x, a, Scalar::one(a.field()));
    return r;
}

DoubleElement DoubleElement::fromO(const PWFunction& a) {
    DoubleElement r(a.field());
    addUnitPure(r, a, Scalar::one(a.field()));
    return r;
}

DoubleElement DoubleElement::fromDK(const DKElement& x) { return pure(x, PWFunction::unit(x.field())); }

void DoubleElement::add(const Key& k, const Scalar& c) {
    if (c.isZero(0.0)) return;
    auto it = terms_.find(k);
    if (it == terms_.end()) {
        terms_.emplace(k, c);
        return;
    }
    it->second += c;
    if (it->second.isZero(0.0)) terms_.erase(it);
}

int DoubleElement::maxDKTwice() const {
    int m = -1;
    for (const auto& [k, c] : terms_) m = std::max(m, k.first.t);
    return m;
}

int DoubleElement::maxPWTwice() const {
    int m = -1;
    for (const auto& [k, c] : terms_) m = std::max(m, k.second.t);
    return m;
}

DoubleElement DoubleElement::operator+(const DoubleElement& o) const {
    DoubleElement r = *this;
    for (const auto& [k, c] : o.terms_) r.add(k, c);
    return r;
}

DoubleElement DoubleElement::operator-(const DoubleElement& o) const {
    DoubleElement r = *this;
    for (const auto& [k, c] : o.terms_) r.add(k, -c);
    return r;
}

DoubleElement DoubleElement::scaled(const Scalar& s) const {
    DoubleElement r(f_);
    for (const auto& [k, c] : terms_) r.add(k, c * s);
    return r;
}

bool DoubleElement::isZero(double tol) const {
    for (const auto& [k, c] : terms_)
        if (!c.isZero(tol)) return false;
    return true;
}

bool DoubleElement::equals(const DoubleElement& o, double tol) const { return (*this - o).isZero(tol); }

std::string DoubleElement::toJson() const {
    nlohmann::ordered_json j;
    j["schema"] = "qgw/1";
    j["mode"] = f_.exact ? "exact" : "numeric";
    if (!f_.exact) j["q"] = f_.q;
    nlohmann::ordered_json ts = nlohmann::ordered_json::array();
    for (const auto& [k, c] : terms_) {
        nlohmann::ordered_json t;
        if (k.first.t < 0)
            t["dk"] = "1";
        else
            t["dk"] = {k.first.t, k.first.i, k.first.j};
        t["pw"] = {k.second.t, k.second.i, k.second.j};
        t["coeff"] = c.str();
        ts.push_back(t);
    }
    j["terms"] = ts;
    return j.dump(1);
}

// ---------------------------------------------------------------- product

namespace {

std::vector<DKElement> exchangeCoefficientsDirect(const DKElement& y, HalfInt s) {
    // (z_ijkl, u^m_pr) = sum_ab c_ab Y[(i,p,a),(k,r,b)] with S^-1(u_lj) = sum c_ab u_ab
    const Field& f = y.field();
    int ds = s.twice() + 1;
    size_t nz = static_cast<size_t>(ds * ds * ds * ds);
    std::vector<DKElement> out(nz, DKElement(f));
    std::set<int> spins;
    for (const auto& [t, ym] : y.components())
        for (int u = t - 2 * s.twice(); u <= t + 2 * s.twice(); u += 2)
            if (u >= 0) spins.insert(u);
    const SpinTables& tab = spinTables(f, s);
    // (a, b) -> [(l, j, c_ab)]
    std::vector<std::vector<std::tuple<int, int, Scalar>>> sinv(static_cast<size_t>(ds * ds));
    for (int l = 0; l < ds; ++l)
        for (int j = 0; j < ds; ++j) {
            Mat c = applySparse(tab.Sinv, Mat::unit(f, ds, ds, l, j));
            for (int a = 0; a < ds; ++a)
                for (int b = 0; b < ds; ++b)
                    if (!c(a, b).isZero(0.0)) sinv[static_cast<size_t>(a * ds + b)].emplace_back(l, j, c(a, b));
        }
    for (int t : spins) {
        HalfInt m = spin(t);
        int dm = t + 1;
        Mat big = coproduct3Block(y, s, m);
        std::vector<Mat> zm(nz, Mat(f, dm, dm));
        std::vector<bool> touched(nz, false);
        for (int row = 0; row < big.rows(); ++row)
            for (int col = 0; col < big.cols(); ++col) {
                const Scalar& e = big(row, col);
                if (e.isZero(0.0)) continue;
                int a = row % ds, p = (row / ds) % dm, i = row / (ds * dm);
                int b = col % ds, r = (col / ds) % dm, k = col / (ds * dm);
                for (const auto& [l, j, c] : sinv[static_cast<size_t>(a * ds + b)]) {
                    size_t n = static_cast<size_t>(((i * ds + j) * ds + k) * ds + l);
                    zm[n](p, r) += c * e;
                    touched[n] = true;
                }
            }
        for (size_t n = 0; n < nz; ++n)
            if (touched[n]) out[n].set(m, zm[n]);
    }
    return out;
}

// z is linear in y; the coefficients of matrix units are memoized.
const std::vector<DKElement>& unitExchange(const Field& f, int t, int p, int r, HalfInt s) {
    static std::mutex mu;
    static std::map<std::tuple<std::string, int, int, int, int>, std::shared_ptr<std::vector<DKElement>>> cache;
    auto key = std::make_tuple(f.key(), t, p, r, s.twice());
    {
        std::lock_guard<std::mutex> lk(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return *it->second;
    }
    auto v = std::make_shared<std::vector<DKElement>>(
        exchangeCoefficientsDirect(DKElement::component(spin(t), Mat::unit(f, t + 1, t + 1, p, r)), s));
    std::lock_guard<std::mutex> lk(mu);
    return *cache.emplace(key, v).first->second;
}

// The memoized coefficients when y is a single matrix unit, else null.
const std::vector<DKElement>* singleUnitExchange(const DKElement& y, HalfInt s) {
    const Mat* block = nullptr;
    int tt = 0;
    for (const auto& [t, ym] : y.components()) {
        if (ym.isZero(0.0)) continue;
        if (block != nullptr) return nullptr;
        block = &ym;
        tt = t;
    }
    if (block == nullptr) return nullptr;
    int pp = -1, rr = -1;
    for (int p = 0; p <= tt; ++p)
        for (int r = 0; r <= tt; ++r) {
            if ((*block)(p, r).isZero(0.0)) continue;
            if (pp >= 0 || !(*block)(p, r).isOne()) return nullptr;
            pp = p;
            rr = r;
        }
    return &unitExchange(y.field(), tt, pp, rr, s);
}

}  // namespace

std::vector<DKElement> exchangeCoefficients(const DKElement& y, HalfInt s) {
    const Field& f = y.field();
    int ds = s.twice() + 1;
    std::vector<DKElement> out(static_cast<size_t>(ds * ds * ds * ds), DKElement(f));
    for (const auto& [t, ym] : y.components())
        for (int p = 0; p <= t; ++p)
            for (int r = 0; r <= t; ++r) {
                if (ym(p, r).isZero(0.0)) continue;
                const std::vector<DKElement>& u = unitExchange(f, t, p, r, s);
                for (size_t n = 0; n < out.size(); ++n)
                    if (!u[n].isZero(0.0)) out[n] = out[n] + u[n].scaled(ym(p, r));
            }
    return out;
}

DKElement exchangeCoefficient(const DKElement& y, HalfInt s, int i, int j, int k, int l) {
    int ds = s.twice() + 1;
    return exchangeCoefficients(y, s)[static_cast<size_t>(((i * ds + j) * ds + k) * ds + l)];
}

DoubleElement doubleMultiply(const DoubleElement& s, const DoubleElement& t) {
    if (!(s.field() == t.field())) throw std::logic_error("doubleMultiply: mode mismatch");
    const Field& f = s.field();
    DoubleElement r(f);
    auto left = groupByO(s), right = groupByO(t);
    std::map<std::pair<PWBasis, int>, std::shared_ptr<const std::vector<DKElement>>> zcache;
    for (const auto& [a, xa] : left) {
        HalfInt sa = spin(a.t);
        int ds = a.t + 1;
        for (const auto& [b, yb] : right) {
            // finite part of y: exchange through a
            if (!yb.x.isZero(0.0)) {
                auto zit = zcache.find({b, a.t});
                if (zit == zcache.end()) {
                    const std::vector<DKElement>* unitZ = singleUnitExchange(yb.x, sa);
                    std::shared_ptr<const std::vector<DKElement>> z;
                    if (unitZ != nullptr) z = std::shared_ptr<const std::vector<DKElement>>(unitZ, [](const auto*) {});
                    else z = std::make_shared<const std::vector<DKElement>>(exchangeCoefficients(yb.x, sa));
                    zit = zcache.emplace(std::make_pair(b, a.t), z).first;
                }
                const std::vector<DKElement>& zs = *zit->second;
                for (int k = 0; k <= a.t; ++k)
                    for (int l = 0; l <= a.t; ++l) {
                        const DKElement& z = zs[static_cast<size_t>(((a.i * ds + a.j) * ds + k) * ds + l)];
                        if (z.isZero(0.0)) continue;
                        const PWFunction& ab = basisProduct(f, {a.t, k, l}, b);
                        if (!xa.x.isZero(0.0)) addPure(r, xa.x * z, ab, Scalar::one(f));
                        if (!xa.unit.isZero(0.0)) addPure(r, z, ab, xa.unit);
                    }
            }
            // unit part of y: the pairings collapse to counits
            if (!yb.unit.isZero(0.0)) {
                const PWFunction& ab = basisProduct(f, a, b);
                if (!xa.x.isZero(0.0)) addPure(r, xa.x, ab, yb.unit);
                if (!xa.unit.isZero(0.0)) addUnitPure(r, ab, xa.unit * yb.unit);
            }
        }
    }
    return r;
}

DoubleElement exchange(const PWFunction& a, const DKElement& y) {
    return doubleMultiply(DoubleElement::fromO(a), DoubleElement::fromDK(y));
}

// ---------------------------------------------------------------- coproduct and counit

std::map<std::pair<DKBasis, DKBasis>, Scalar> dkCoproduct(const DKElement& x, int windowTwice) {
    const Field& f = x.field();
    std::map<std::pair<DKBasis, DKBasis>, Scalar> out;
    for (const auto& [t, xm] : x.components())
        for (int t1 = 0; t1 <= windowTwice; ++t1)
            for (int t2 = std::abs(t - t1); t2 <= std::min(windowTwice, t + t1); t2 += 2)
                for (int a = 0; a < (t2 + 1) * (t2 + 1); ++a)
                    for (int b = 0; b < (t1 + 1) * (t1 + 1); ++b) {
                        PWFunction ua = PWFunction::coefficient(f, spin(t2), a / (t2 + 1), a % (t2 + 1));
                        PWFunction ub = PWFunction::coefficient(f, spin(t1), b / (t1 + 1), b % (t1 + 1));
                        Mat prod = pwMultiplySpin(ua, ub, spin(t));
                        Scalar c = Scalar::zero(f);
                        for (int p = 0; p <= t; ++p)
                            for (int q = 0; q <= t; ++q)
                                if (!prod(p, q).isZero(0.0)) c += prod(p, q) * xm(p, q);
                        if (c.isZero(0.0)) continue;
                        std::pair<DKBasis, DKBasis> key{{t1, b / (t1 + 1), b % (t1 + 1)}, {t2, a / (t2 + 1), a % (t2 + 1)}};
                        auto it = out.find(key);
                        if (it == out.end())
                            out.emplace(key, c);
                        else
                            it->second += c;
                    }
    return out;
}

void DoubleTensor::add(const Key& k, const Scalar& c) {
    if (c.isZero(0.0)) return;
    auto it = terms_.find(k);
    if (it == terms_.end()) {
        terms_.emplace(k, c);
        return;
    }
    it->second += c;
    if (it->second.isZero(0.0)) terms_.erase(it);
}

DoubleTensor DoubleTensor::operator-(const DoubleTensor& o) const {
    DoubleTensor r = *this;
    for (const auto& [k, c] : o.terms_) r.add(k, -c);
    return r;
}

DoubleTensor DoubleTensor::operator*(const DoubleTensor& o) const {
    DoubleTensor r(f_);
    std::map<std::pair<DoubleElement::Key, DoubleElement::Key>, DoubleElement> memo;
    auto product = [&](const DoubleElement::Key& a, const DoubleElement::Key& b) -> const DoubleElement& {
        auto it = memo.find({a, b});
        if (it != memo.end()) return it->second;
        DoubleElement x(f_), y(f_);
        x.add(a, Scalar::one(f_));
        y.add(b, Scalar::one(f_));
        return memo.emplace(std::make_pair(a, b), doubleMultiply(x, y)).first->second;
    };
    for (const auto& [k1, c1] : terms_)
        for (const auto& [k2, c2] : o.terms_) {
            const DoubleElement& p0 = product(k1.first, k2.first);
            if (p0.isZero(0.0)) continue;
            const DoubleElement& p1 = product(k1.second, k2.second);
            for (const auto& [l0, d0] : p0.terms())
                for (const auto& [l1, d1] : p1.terms()) r.add({l0, l1}, c1 * c2 * d0 * d1);
        }
    return r;
}

DoubleTensor DoubleTensor::truncated(int windowTwice) const {
    DoubleTensor r(f_);
    for (const auto& [k, c] : terms_)
        if (k.first.first.t <= windowTwice && k.second.first.t <= windowTwice) r.add(k, c);
    return r;
}

bool DoubleTensor::isZero(double tol) const {
    for (const auto& [k, c] : terms_)
        if (!c.isZero(tol)) return false;
    return true;
}

bool DoubleTensor::equals(const DoubleTensor& o, double tol) const { return (*this - o).isZero(tol); }

DoubleElement DoubleTensor::counitLeg(int leg) const {
    DoubleElement r(f_);
    for (const auto& [k, c] : terms_) {
        const DoubleElement::Key& gone = leg == 0 ? k.first : k.second;
        const DoubleElement::Key& kept = leg == 0 ? k.second : k.first;
        r.add(kept, c * dkBasisCounit(f_, gone.first) * pwBasisCounit(f_, gone.second));
    }
    return r;
}

DoubleTensor doubleCoproduct(const DoubleElement& s, int windowTwice) {
    const Field& f = s.field();
    if (s.maxDKTwice() > windowTwice) throw std::out_of_range("doubleCoproduct: element exceeds the spin window");
    DoubleTensor r(f);
    for (const auto& [k, c] : s.terms()) {
        const PWBasis& a = k.second;
        std::map<std::pair<DKBasis, DKBasis>, Scalar> dx;
        if (k.first.t < 0)
            dx.emplace(std::make_pair(kDKUnit, kDKUnit), Scalar::one(f));
        else
            dx = dkCoproduct(DKElement::component(spin(k.first.t), Mat::unit(f, k.first.t + 1, k.first.t + 1, k.first.i, k.first.j)),
                             windowTwice);
        for (const auto& [legs, cx] : dx)
            for (int m = 0; m <= a.t; ++m) r.add({{legs.first, {a.t, a.i, m}}, {legs.second, {a.t, m, a.j}}}, c * cx);
    }
    return r;
}

Scalar doubleCounit(const DoubleElement& s) {
    const Field& f = s.field();
    Scalar r = Scalar::zero(f);
    for (const auto& [k, c] : s.terms()) r += c * dkBasisCounit(f, k.first) * pwBasisCounit(f, k.second);
    return r;
}

// ---------------------------------------------------------------- antipode and star

namespace {
DoubleElement reorder(const DoubleElement& s, bool star) {
    const Field& f = s.field();
    DoubleElement r(f);
    for (const auto& [k, c] : s.terms()) {
        PWFunction a = pwBasis(f, k.second);
        DoubleElement left = DoubleElement::fromO(star ? pwStar(a) : pwAntipode(a));
        DoubleElement right = DoubleElement::unit(f);
        if (k.first.t >= 0) {
            DKElement x = DKElement::component(spin(k.first.t), Mat::unit(f, k.first.t + 1, k.first.t + 1, k.first.i, k.first.j));
            right = DoubleElement::fromDK(star ? dkStar(x) : dkAntipode(x));
        }
        r = r + doubleMultiply(left, right).scaled(star ? c.conj() : c);
    }
    return r;
}
}  // namespace

DoubleElement doubleAntipode(const DoubleElement& s) { return reorder(s, false); }
DoubleElement doubleStar(const DoubleElement& s) { return reorder(s, true); }

// ---------------------------------------------------------------- Yetter-Drinfeld compatibility

YDReport ydCheck(const DoubleRep& rep, const std::vector<DKElement>& ys, int maxPWTwice, double tol) {
    YDReport rep_{true, 0.0};
    for (const auto& y : ys) {
        const Field& f = y.field();
        Mat py = rep.dk(y);
        if (py.rows() != rep.dim || py.cols() != rep.dim) throw std::invalid_argument("ydCheck: dimension mismatch");
        for (int t = 0; t <= maxPWTwice; ++t) {
            HalfInt s = spin(t);
            std::vector<DKElement> zs = exchangeCoefficients(y, s);
            std::vector<Mat> pa;
            for (int k = 0; k <= t; ++k)
                for (int l = 0; l <= t; ++l) pa.push_back(rep.pw(PWFunction::coefficient(f, s, k, l)));
            for (int i = 0; i <= t; ++i)
                for (int j = 0; j <= t; ++j) {
                    Mat lhs = pa[static_cast<size_t>(i * (t + 1) + j)] * py;
                    Mat rhs(f, rep.dim, rep.dim);
                    for (int k = 0; k <= t; ++k)
                        for (int l = 0; l <= t; ++l) {
                            const DKElement& z = zs[static_cast<size_t>(((i * (t + 1) + j) * (t + 1) + k) * (t + 1) + l)];
                            if (z.isZero(0.0)) continue;
                            rhs += rep.dk(z) * pa[static_cast<size_t>(k * (t + 1) + l)];
                        }
                    if (f.exact) {
                        if (!lhs.equals(rhs)) {
                            rep_.ok = false;
                            rep_.maxResidual = 1.0;
                        }
                    } else {
                        double d = lhs.distance(rhs);
                        rep_.maxResidual = std::max(rep_.maxResidual, d);
                        if (d > tol) rep_.ok = false;
                    }
                }
        }
    }
    return rep_;
}

}  // namespace qgw
