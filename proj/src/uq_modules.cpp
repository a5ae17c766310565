#include "qgw/uq_modules.hpp"

#include "json.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace qgw {

namespace {

Mat diagInverse(const Mat& k) {
    Mat r(k.field(), k.rows(), k.cols());
    for (int i = 0; i < k.rows(); ++i) r(i, i) = k(i, i).inv();
    return r;
}

Scalar qnumC(const Field& f, cplx z) {
    if (f.exact) throw std::logic_error("complex weights require numeric mode");
    return qnumComplex(f, z);
}

}  // namespace

WeightModule irreducible(const Field& f, HalfInt m) {
    if (m.twice() < 0) throw std::invalid_argument("irreducible: spin must be in 1/2 N");
    WeightModule mod;
    mod.field = f;
    int d = m.twice() + 1;
    for (int i = 0; i < d; ++i) mod.weights.push_back(m - HalfInt(i));
    mod.E = Mat(f, d, d);
    mod.F = Mat(f, d, d);
    mod.K = Mat(f, d, d);
    for (int i = 0; i < d; ++i) {
        HalfInt mu = mod.weights[i];
        mod.K(i, i) = Scalar::qpow(f, mu + mu);
        if (i + 1 < d) mod.F(i + 1, i) = Scalar::one(f);
        if (i > 0) mod.E(i - 1, i) = qnum(f, m - mu) * qnum(f, m + mu + HalfInt(1));
    }
    mod.Kinv = diagInverse(mod.K);
    mod.label = "V(" + m.str() + ")";
    return mod;
}

const WeightModule& irrep(const Field& f, HalfInt m) {
    static std::mutex mu;
    static std::map<std::pair<std::string, int>, std::unique_ptr<WeightModule>> cache;
    std::lock_guard<std::mutex> lk(mu);
    auto key = std::make_pair(f.key(), m.twice());
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, std::make_unique<WeightModule>(irreducible(f, m))).first;
    return *it->second;
}

WeightModule verma(const Field& f, HalfInt m, int depth) {
    if (depth < 1) throw std::invalid_argument("verma: depth must be positive");
    WeightModule mod;
    mod.field = f;
    for (int i = 0; i < depth; ++i) mod.weights.push_back(m - HalfInt(i));
    mod.E = Mat(f, depth, depth);
    mod.F = Mat(f, depth, depth);
    mod.K = Mat(f, depth, depth);
    for (int i = 0; i < depth; ++i) {
        HalfInt mu = mod.weights[i];
        mod.K(i, i) = Scalar::qpow(f, mu + mu);
        if (i + 1 < depth) mod.F(i + 1, i) = Scalar::one(f);
        if (i > 0) mod.E(i - 1, i) = qnum(f, m - mu) * qnum(f, m + mu + HalfInt(1));
    }
    mod.Kinv = diagInverse(mod.K);
    mod.label = "M(" + m.str() + "; depth " + std::to_string(depth) + ")";
    return mod;
}

WeightModule verma(const Field& f, cplx m, int depth) {
    if (depth < 1) throw std::invalid_argument("verma: depth must be positive");
    if (f.exact) throw std::logic_error("complex highest weight requires numeric mode");
    WeightModule mod;
    mod.field = f;
    mod.weightShift = m;
    for (int i = 0; i < depth; ++i) mod.weights.push_back(HalfInt(-i));
    mod.E = Mat(f, depth, depth);
    mod.F = Mat(f, depth, depth);
    mod.K = Mat(f, depth, depth);
    for (int i = 0; i < depth; ++i) {
        cplx mu = m - static_cast<double>(i);
        mod.K(i, i) = Scalar::qpowComplex(f, 2.0 * mu);
        if (i + 1 < depth) mod.F(i + 1, i) = Scalar::one(f);
        if (i > 0) mod.E(i - 1, i) = qnumC(f, m - mu) * qnumC(f, m + mu + 1.0);
    }
    mod.Kinv = diagInverse(mod.K);
    mod.label = "M(complex; depth " + std::to_string(depth) + ")";
    return mod;
}

WeightModule tensor(const WeightModule& a, const WeightModule& b) {
    if (!(a.field == b.field)) throw std::logic_error("tensor: mode mismatch");
    const Field& f = a.field;
    WeightModule mod;
    mod.field = f;
    mod.weightShift = a.weightShift + b.weightShift;
    for (auto wa : a.weights)
        for (auto wb : b.weights) mod.weights.push_back(wa + wb);
    Mat ia = Mat::identity(f, a.dim()), ib = Mat::identity(f, b.dim());
    mod.E = a.E.kron(b.K) + ia.kron(b.E);
    mod.F = a.F.kron(ib) + a.Kinv.kron(b.F);
    mod.K = a.K.kron(b.K);
    mod.Kinv = a.Kinv.kron(b.Kinv);
    mod.label = "(" + a.label + " x " + b.label + ")";
    return mod;
}

WeightModule dual(const WeightModule& a) {
    WeightModule mod;
    mod.field = a.field;
    mod.weightShift = -a.weightShift;
    for (auto w : a.weights) mod.weights.push_back(-w);
    // X acts by S(X)^t
    mod.E = (-(a.E * a.Kinv)).transpose();
    mod.F = (-(a.K * a.F)).transpose();
    mod.K = a.Kinv.transpose();
    mod.Kinv = a.K.transpose();
    mod.label = a.label + "*";
    return mod;
}

Mat act(const WeightModule& mod, const PBWElement& x) {
    const Field& f = mod.field;
    Mat r(f, mod.dim(), mod.dim());
    for (const auto& [m, s] : x.terms()) {
        Mat t = Mat::identity(f, mod.dim());
        for (int i = 0; i < m.a; ++i) t = t * mod.F;
        const Mat& kk = m.b >= 0 ? mod.K : mod.Kinv;
        for (int i = 0; i < std::abs(m.b); ++i) t = t * kk;
        for (int i = 0; i < m.c; ++i) t = t * mod.E;
        r += t.scaled(s);
    }
    return r;
}

double relationResidual(const WeightModule& mod, int cols) {
    const Field& f = mod.field;
    int n = mod.dim();
    int c = cols < 0 ? n : cols;
    Scalar q2 = Scalar::vpow(f, 4);
    Scalar cc = (Scalar::vpow(f, 2) - Scalar::vpow(f, -2)).inv();
    Mat r1 = mod.K * mod.E - (mod.E * mod.K).scaled(q2);
    Mat r2 = mod.K * mod.F - (mod.F * mod.K).scaled(q2.inv());
    Mat r3 = mod.E * mod.F - mod.F * mod.E - (mod.K - mod.Kinv).scaled(cc);
    Mat r4 = mod.K * mod.Kinv - Mat::identity(f, n);
    double res = 0;
    for (const Mat* m : {&r1, &r2, &r3, &r4}) {
        Mat b = m->block(0, 0, n, c);
        res = std::max(res, b.maxAbs());
    }
    return res;
}

// ---------------------------------------------------------------- Clebsch-Gordan

const CGSummand* CGDecomposition::find(HalfInt k) const {
    for (const auto& s : summands)
        if (s.k == k) return &s;
    return nullptr;
}

namespace {

Mat normalizeFirst(Mat v) {
    for (int i = 0; i < v.rows(); ++i)
        if (v(i, 0).magnitude() > (v.field().exact ? 0.0 : 1e-12)) {
            Scalar s = v(i, 0).inv();
            return v.scaled(s);
        }
    return v;
}

CGDecomposition computeCG(const Field& f, HalfInt m1, HalfInt m2) {
    const WeightModule& a = irrep(f, m1);
    const WeightModule& b = irrep(f, m2);
    WeightModule t = tensor(a, b);
    int n = t.dim();
    CGDecomposition cg{m1, m2, {}};
    HalfInt top = m1 + m2;
    HalfInt bottom = (m1 - m2).abs();
    std::vector<int> colWeightTwice;  // V(k) weight for each column of the full inclusion
    Mat full(f, n, n);
    int col = 0;
    for (HalfInt k = top; k >= bottom; k -= HalfInt(1)) {
        std::vector<int> at, above;
        for (int i = 0; i < n; ++i) {
            if (t.weights[i] == k) at.push_back(i);
            if (t.weights[i] == k + HalfInt(1)) above.push_back(i);
        }
        Mat w(f, n, 1);
        if (above.empty()) {
            if (at.size() != 1) throw std::logic_error("CG: unexpected top weight multiplicity");
            w(at[0], 0) = Scalar::one(f);
        } else {
            Mat e(f, static_cast<int>(above.size()), static_cast<int>(at.size()));
            for (size_t r = 0; r < above.size(); ++r)
                for (size_t c = 0; c < at.size(); ++c) e(r, c) = t.E(above[r], at[c]);
            Mat ker = kernel(e);
            if (ker.cols() != 1) throw std::logic_error("CG: highest weight space is not one-dimensional");
            for (size_t c = 0; c < at.size(); ++c) w(at[c], 0) = ker(c, 0);
        }
        w = normalizeFirst(w);
        int d = k.twice() + 1;
        Mat incl(f, n, d);
        Mat cur = w;
        for (int j = 0; j < d; ++j) {
            incl.setBlock(0, j, cur);
            full.setBlock(0, col + j, cur);
            colWeightTwice.push_back((k - HalfInt(j)).twice());
            cur = t.F * cur;
        }
        col += d;
        cg.summands.push_back({k, incl, Mat()});
    }
    if (col != n) throw std::logic_error("CG: dimension mismatch");
    // invert weight block by weight block
    Mat inv(f, n, n);
    std::map<int, std::pair<std::vector<int>, std::vector<int>>> blocks;
    for (int i = 0; i < n; ++i) blocks[t.weights[i].twice()].first.push_back(i);
    for (int j = 0; j < n; ++j) blocks[colWeightTwice[j]].second.push_back(j);
    for (const auto& [wt, rc] : blocks) {
        const auto& [rows, cols] = rc;
        if (rows.size() != cols.size()) throw std::logic_error("CG: weight block not square");
        int s = static_cast<int>(rows.size());
        Mat blk(f, s, s);
        for (int r = 0; r < s; ++r)
            for (int c = 0; c < s; ++c) blk(r, c) = full(rows[r], cols[c]);
        Mat bi = inverse(blk);
        // inv = full^{-1}: rows indexed by columns of full, columns by rows of full
        for (int r = 0; r < s; ++r)
            for (int c = 0; c < s; ++c) inv(cols[r], rows[c]) = bi(r, c);
    }
    int off = 0;
    for (auto& s : cg.summands) {
        int d = s.k.twice() + 1;
        s.proj = inv.block(off, 0, d, n);
        off += d;
    }
    return cg;
}

}  // namespace

const CGDecomposition& clebschGordan(const Field& f, HalfInt m1, HalfInt m2) {
    static std::mutex mu;
    static std::map<std::tuple<std::string, int, int>, std::shared_ptr<CGDecomposition>> cache;
    auto key = std::make_tuple(f.key(), m1.twice(), m2.twice());
    {
        std::lock_guard<std::mutex> lk(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return *it->second;
    }
    auto cg = std::make_shared<CGDecomposition>(computeCG(f, m1, m2));
    std::lock_guard<std::mutex> lk(mu);
    auto it = cache.emplace(key, cg).first;  // first insertion wins
    return *it->second;
}

std::vector<std::pair<HalfInt, Mat>> highestWeightVectors(const WeightModule& mod) {
    const Field& f = mod.field;
    int n = mod.dim();
    std::map<HalfInt, std::vector<int>> byWeight;
    for (int i = 0; i < n; ++i) byWeight[mod.weights[i]].push_back(i);
    std::vector<std::pair<HalfInt, Mat>> out;
    for (auto it = byWeight.rbegin(); it != byWeight.rend(); ++it) {
        const auto& cols = it->second;
        Mat e(f, n, static_cast<int>(cols.size()));
        for (int r = 0; r < n; ++r)
            for (size_t c = 0; c < cols.size(); ++c) e(r, c) = mod.E(r, cols[c]);
        Mat ker = kernel(e);
        for (int k = 0; k < ker.cols(); ++k) {
            Mat v(f, n, 1);
            for (size_t c = 0; c < cols.size(); ++c) v(cols[c], 0) = ker(c, k);
            out.emplace_back(it->first, normalizeFirst(v));
        }
    }
    return out;
}

BGGReport bggCheck(const Field& f, HalfInt m, int depth) {
    BGGReport r;
    int s = m.twice() + 1;  // index of the singular vector F^{2m+1} v_m
    if (depth <= s) throw std::invalid_argument("bggCheck: depth must exceed 2m+1");
    WeightModule big = verma(f, m, depth);
    WeightModule sub = verma(f, -m - HalfInt(1), depth - s);
    WeightModule top = irreducible(f, m);
    int ns = depth - s;
    r.singularAnnihilated = big.E.block(0, s, depth, 1).isZero(0.0) && big.E.block(0, s, s, ns).isZero(0.0);
    r.submoduleMatches = big.E.block(s, s, ns, ns).equals(sub.E) && big.F.block(s, s, ns, ns).equals(sub.F) &&
                         big.K.block(s, s, ns, ns).equals(sub.K) && big.F.block(0, s, s, ns).isZero(0.0);
    r.quotientMatches = big.E.block(0, 0, s, s).equals(top.E) && big.F.block(0, 0, s, s).equals(top.F) &&
                        big.K.block(0, 0, s, s).equals(top.K);
    bool dims = true;
    for (auto mu : big.weights) {
        int dBig = 1;
        int dSub = 0;
        for (auto w : sub.weights) dSub += (w == mu);
        int dTop = 0;
        for (auto w : top.weights) dTop += (w == mu);
        dims = dims && (dBig - dSub == dTop);
    }
    r.dimensionsMatch = dims;
    return r;
}

std::string toJson(const WeightModule& mod) {
    nlohmann::ordered_json j;
    j["schema"] = "qgw/1";
    j["label"] = mod.label;
    j["mode"] = mod.field.exact ? "exact" : "numeric";
    if (!mod.field.exact) j["q"] = mod.field.q;
    std::vector<std::string> ws;
    for (auto w : mod.weights) ws.push_back(w.str());
    j["weights"] = ws;
    auto mat = [](const Mat& m) {
        nlohmann::ordered_json rows = nlohmann::ordered_json::array();
        for (int i = 0; i < m.rows(); ++i) {
            nlohmann::ordered_json row = nlohmann::ordered_json::array();
            for (int k = 0; k < m.cols(); ++k) row.push_back(m(i, k).str());
            rows.push_back(row);
        }
        return rows;
    };
    j["E"] = mat(mod.E);
    j["F"] = mat(mod.F);
    j["K"] = mat(mod.K);
    return j.dump(1);
}

}  // namespace qgw
