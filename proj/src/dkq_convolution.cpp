#include "qgw/dkq_convolution.hpp"

#include "qgw/uq_modules.hpp"

#include "json.hpp"

#include <Eigen/Eigenvalues>

#include <set>
#include <stdexcept>

namespace qgw {

namespace {

HalfInt spin(int t) { return HalfInt::fromTwice(t); }

Mat basisMat(const Field& f, HalfInt m, int i, int j) {
    int d = m.twice() + 1;
    return Mat::unit(f, d, d, i, j);
}

// sum_ij c_ij x_ij
Scalar contract(const Mat& c, const Mat& x) {
    Scalar s = Scalar::zero(c.field());
    for (int i = 0; i < c.rows(); ++i)
        for (int j = 0; j < c.cols(); ++j)
            if (!c(i, j).isZero(0.0)) s += c(i, j) * x(i, j);
    return s;
}

// blockwise transpose of x through a per-spin map on coefficients
DKElement transposeThrough(const DKElement& x, const SparseMap SpinTables::*which, bool star) {
    DKElement r(x.field());
    for (const auto& [t, xm] : x.components()) {
        HalfInt m = spin(t);
        const SpinTables& tab = spinTables(x.field(), m);
        int d = t + 1;
        Mat out(x.field(), d, d);
        for (int k = 0; k < d; ++k)
            for (int l = 0; l < d; ++l) {
                Mat c = basisMat(x.field(), m, k, l);
                if (star) c = applySparse(tab.star, applySparse(tab.S, c), true);
                else c = applySparse(tab.*which, c);
                Scalar s = contract(c, xm);
                out(k, l) = star ? s.conj() : s;
            }
        r.set(m, out);
    }
    return r;
}

// phi(a b) with a, b supported at spin m only
Scalar phiProduct(const Mat& a, const Mat& b, HalfInt m) {
    return pwMultiplySpin(PWFunction::component(m, a), PWFunction::component(m, b), HalfInt(0))(0, 0);
}

}  // namespace

// ---------------------------------------------------------------- DKElement

DKElement DKElement::identityAt(const Field& f, HalfInt m) {
    return component(m, Mat::identity(f, m.twice() + 1));
}

DKElement DKElement::component(HalfInt m, const Mat& x) {
    DKElement r(x.field());
    r.set(m, x);
    return r;
}

DKElement DKElement::fromPBW(const PBWElement& x, int maxTwice) {
    DKElement r(x.field());
    for (int t = 0; t <= maxTwice; ++t) r.set(spin(t), elementImage(x, spin(t)));
    return r;
}

Mat DKElement::at(HalfInt m) const {
    auto it = comp_.find(m.twice());
    if (it != comp_.end()) return it->second;
    int d = m.twice() + 1;
    return Mat(f_, d, d);
}

void DKElement::set(HalfInt m, const Mat& x) {
    if (x.rows() != m.twice() + 1 || x.cols() != m.twice() + 1)
        throw std::invalid_argument("DKElement: block shape does not match spin");
    if (x.isZero(0.0))
        comp_.erase(m.twice());
    else
        comp_[m.twice()] = x;
}

DKElement DKElement::operator+(const DKElement& o) const {
    DKElement r = *this;
    for (const auto& [t, x] : o.comp_) r.set(spin(t), r.at(spin(t)) + x);
    return r;
}

DKElement DKElement::operator-(const DKElement& o) const { return *this + o.scaled(Scalar::integer(o.f_, -1)); }

DKElement DKElement::operator*(const DKElement& o) const {
    DKElement r(f_);
    for (const auto& [t, x] : comp_) {
        auto it = o.comp_.find(t);
        if (it != o.comp_.end()) r.set(spin(t), x * it->second);
    }
    return r;
}

DKElement DKElement::scaled(const Scalar& s) const {
    DKElement r(f_);
    for (const auto& [t, x] : comp_) r.set(spin(t), x.scaled(s));
    return r;
}

bool DKElement::isZero(double tol) const {
    for (const auto& [t, x] : comp_)
        if (!x.isZero(tol)) return false;
    return true;
}

bool DKElement::equals(const DKElement& o, double tol) const { return (*this - o).isZero(tol); }

std::string DKElement::toJson() const {
    nlohmann::ordered_json j;
    j["schema"] = "qgw/1";
    j["dk"] = true;
    j["mode"] = f_.exact ? "exact" : "numeric";
    if (!f_.exact) j["q"] = f_.q;
    nlohmann::ordered_json comps = nlohmann::ordered_json::object();
    for (const auto& [t, x] : comp_) {
        nlohmann::ordered_json rows = nlohmann::ordered_json::array();
        for (int i = 0; i < x.rows(); ++i) {
            nlohmann::ordered_json row = nlohmann::ordered_json::array();
            for (int k = 0; k < x.cols(); ++k) row.push_back(x(i, k).str());
            rows.push_back(row);
        }
        comps[std::to_string(t)] = rows;
    }
    j["components"] = comps;
    return j.dump(1);
}

// ---------------------------------------------------------------- multipliers

Multiplier Multiplier::unit(const Field& f) {
    return Multiplier(f, [f](HalfInt m) { return Mat::identity(f, m.twice() + 1); }, "1");
}

Multiplier Multiplier::qH(const Field& f, int k) {
    return Multiplier(
        f,
        [f, k](HalfInt m) {
            const WeightModule& v = irrep(f, m);
            Mat r = Mat::identity(f, v.dim());
            for (int i = 0; i < std::abs(k); ++i) r = r * (k > 0 ? v.K : v.Kinv);
            return r;
        },
        "q^(" + std::to_string(k) + "H)");
}

Multiplier Multiplier::fromPBW(const PBWElement& x) {
    return Multiplier(x.field(), [x](HalfInt m) { return elementImage(x, m); }, x.str());
}

Multiplier Multiplier::fromDK(const DKElement& x) {
    return Multiplier(x.field(), [x](HalfInt m) { return x.at(m); }, "dk");
}

Multiplier Multiplier::operator*(const Multiplier& o) const {
    auto a = eval_;
    auto b = o.eval_;
    return Multiplier(f_, [a, b](HalfInt m) { return a(m) * b(m); }, label_ + "*" + o.label_);
}

// ---------------------------------------------------------------- pairing and Hopf maps

Scalar dkPair(const DKElement& x, const PWFunction& a) {
    Scalar s = Scalar::zero(a.field());
    for (const auto& [t, c] : a.components()) s += contract(c, x.at(spin(t)));
    return s;
}

Scalar dkPair(const Multiplier& x, const PWFunction& a) {
    Scalar s = Scalar::zero(a.field());
    for (const auto& [t, c] : a.components()) s += contract(c, x.at(spin(t)));
    return s;
}

Scalar dkPairCoproduct(const DKElement& x, const PWFunction& b, const PWFunction& a) {
    return dkPair(x, pwMultiply(a, b));
}

Scalar dkCounit(const DKElement& x) { return x.at(HalfInt(0))(0, 0); }

DKElement dkAntipode(const DKElement& x) { return transposeThrough(x, &SpinTables::Sinv, false); }
DKElement dkAntipodeInverse(const DKElement& x) { return transposeThrough(x, &SpinTables::S, false); }
DKElement dkStar(const DKElement& x) { return transposeThrough(x, nullptr, true); }

Mat hermitianForm(const Field& f, HalfInt m) {
    const WeightModule& v = irrep(f, m);
    Mat g(f, v.dim(), v.dim());
    g(0, 0) = Scalar::one(f);
    for (int i = 1; i < v.dim(); ++i) g(i, i) = g(i - 1, i - 1) * v.E(i - 1, i) / v.K(i, i);
    return g;
}

Mat hilbertAdjoint(const Mat& x, HalfInt m) {
    Mat g = hermitianForm(x.field(), m);
    Mat gi = g;
    for (int i = 0; i < g.rows(); ++i) gi(i, i) = g(i, i).inv();
    return gi * x.adjoint() * g;
}

// ---------------------------------------------------------------- Haar state

Scalar haarPhi(const PWFunction& a) { return a.at(HalfInt(0))(0, 0); }

namespace {
PWFunction haarAverage(const PWFunction& a, int phiLeg) {
    PWFunction r(a.field());
    PWTensor d = pwCoproduct(a);
    for (const auto& [k, c] : d.terms())
        if (k[static_cast<size_t>(phiLeg)].t == 0) r = r + pwBasis(a.field(), k[static_cast<size_t>(1 - phiLeg)]).scaled(c);
    return r;
}
}  // namespace

PWFunction haarLeftAverage(const PWFunction& a) { return haarAverage(a, 1); }
PWFunction haarRightAverage(const PWFunction& a) { return haarAverage(a, 0); }

bool haarInvarianceCheck(const PWFunction& a) {
    PWFunction target = PWFunction::unit(a.field()).scaled(haarPhi(a));
    return haarLeftAverage(a).equals(target, 0.0) && haarRightAverage(a).equals(target, 0.0);
}

Scalar innerProduct(const PWFunction& f, const PWFunction& g) {
    return pwMultiplySpin(pwStar(f), g, HalfInt(0))(0, 0);
}

Mat gramMatrix(const Field& f, HalfInt m) {
    int d = m.twice() + 1;
    Mat g(f, d * d, d * d);
    for (int a = 0; a < d * d; ++a)
        for (int b = 0; b < d * d; ++b)
            g(a, b) = innerProduct(PWFunction::coefficient(f, m, a / d, a % d), PWFunction::coefficient(f, m, b / d, b % d));
    return g;
}

double minHermitianEigenvalue(const Mat& g) {
    if (g.field().exact) throw std::invalid_argument("minHermitianEigenvalue: numeric mode only");
    Eigen::MatrixXcd e(g.rows(), g.cols());
    for (int i = 0; i < g.rows(); ++i)
        for (int j = 0; j < g.cols(); ++j) e(i, j) = g(i, j).value();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(e, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

// ---------------------------------------------------------------- regular actions

PWFunction hitLeft(const Multiplier& x, const PWFunction& f) {
    PWFunction r(f.field());
    for (const auto& [t, c] : f.components()) r.set(spin(t), c * x.at(spin(t)).transpose());
    return r;
}

PWFunction hitRight(const PWFunction& f, const Multiplier& x) {
    PWFunction r(f.field());
    for (const auto& [t, c] : f.components()) r.set(spin(t), x.at(spin(t)).transpose() * c);
    return r;
}

PWFunction regularLambda(const PBWElement& x, const PWFunction& f) {
    return hitRight(f, Multiplier::fromPBW(antipode(x)));
}

PWFunction regularLambda(const DKElement& x, const PWFunction& f) {
    return hitRight(f, Multiplier::fromDK(dkAntipode(x)));
}

PWFunction regularRho(const PBWElement& x, const PWFunction& f) { return hitLeft(Multiplier::fromPBW(x), f); }
PWFunction regularRho(const DKElement& x, const PWFunction& f) { return hitLeft(Multiplier::fromDK(x), f); }

// ---------------------------------------------------------------- Fourier and convolution

DKElement fourier(const PWFunction& f) {
    DKElement r(f.field());
    for (const auto& [t, c] : f.components()) {
        HalfInt m = spin(t);
        int d = t + 1;
        Mat out(f.field(), d, d);
        for (int k = 0; k < d; ++k)
            for (int l = 0; l < d; ++l) out(k, l) = phiProduct(basisMat(f.field(), m, k, l), c, m);
        r.set(m, out);
    }
    return r;
}

Mat fourierMatrix(const Field& f, HalfInt m) {
    int d = m.twice() + 1;
    Mat r(f, d * d, d * d);
    for (int b = 0; b < d * d; ++b) {
        Mat col = fourier(PWFunction::coefficient(f, m, b / d, b % d)).at(m);
        for (int a = 0; a < d * d; ++a) r(a, b) = col(a / d, a % d);
    }
    return r;
}

PWFunction inverseFourier(const DKElement& x) {
    PWFunction r(x.field());
    for (const auto& [t, xm] : x.components()) {
        HalfInt m = spin(t);
        int d = t + 1;
        Mat vec(x.field(), d * d, 1);
        for (int a = 0; a < d * d; ++a) vec(a, 0) = xm(a / d, a % d);
        Mat sol = inverse(fourierMatrix(x.field(), m)) * vec;
        Mat c(x.field(), d, d);
        for (int a = 0; a < d * d; ++a) c(a / d, a % d) = sol(a, 0);
        r.set(m, c);
    }
    return r;
}

PWFunction convolve(const PWFunction& a, const PWFunction& b) {
    // b = sum B_ij u_ij, Delta u_ij = sum_k u_ik (x) u_kj
    PWFunction r(a.field());
    for (const auto& [t, bm] : b.components()) {
        HalfInt m = spin(t);
        int d = t + 1;
        Mat am = a.at(m);
        if (am.isZero(0.0)) continue;
        const SpinTables& tab = spinTables(a.field(), m);
        Mat s(a.field(), d, d);
        for (int i = 0; i < d; ++i)
            for (int k = 0; k < d; ++k) s(i, k) = phiProduct(applySparse(tab.Sinv, basisMat(a.field(), m, i, k)), am, m);
        r.set(m, s.transpose() * bm);
    }
    return r;
}

// ---------------------------------------------------------------- twisted Hilbert-Schmidt

Scalar qdim(const Field& f, HalfInt m) { return irrep(f, m).K.trace(); }

Scalar twistedHS(const Mat& s, const Mat& t, HalfInt m) {
    const Field& f = s.field();
    return (hilbertAdjoint(s, m) * t * irrep(f, m).K).trace() / qdim(f, m);
}

PeterWeylSides peterWeylSides(const PWFunction& f, const PWFunction& g) {
    const Field& fld = f.field();
    DKElement fh = fourier(f), gh = fourier(g);
    std::set<int> spins;
    for (const auto& [t, x] : fh.components()) spins.insert(t);
    for (const auto& [t, x] : gh.components()) spins.insert(t);
    PeterWeylSides r{innerProduct(f, g), Scalar::zero(fld), Scalar::zero(fld)};
    for (int t : spins) {
        HalfInt m = spin(t);
        Scalar hs = twistedHS(fh.at(m), gh.at(m), m);
        Scalar dq = qdim(fld, m);
        r.invDimWeighted += hs;
        r.dimWeighted += hs * dq * dq;
    }
    return r;
}

}  // namespace qgw
