#include "qgw/principal_series.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

namespace qgw {

namespace {

HalfInt spin(int t) { return HalfInt::fromTwice(t); }

// q^{(lambda+1) 2 mu} for the weight 2 mu = twiceMu
Scalar chi(const Field& f, const Lambda& lam, int twiceMu) {
    if (lam.integral) return Scalar::vpow(f, 2 * (lam.n + 1) * twiceMu);
    if (f.exact) throw std::invalid_argument("exact mode needs an integer lambda");
    return Scalar::qpowComplex(f, (lam.z + 1.0) * static_cast<double>(twiceMu));
}

struct Roles {
    int p, l, r;  // leg positions
};

Roles roles(LegOrder o) {
    switch (o) {
        case LegOrder::PLR: return {0, 1, 2};
        case LegOrder::PRL: return {0, 2, 1};
        case LegOrder::LPR: return {1, 0, 2};
        case LegOrder::LRP: return {2, 0, 1};
        case LegOrder::RPL: return {1, 2, 0};
        case LegOrder::RLP: return {2, 1, 0};
    }
    return {0, 1, 2};
}

}  // namespace

// ---------------------------------------------------------------- sections

int SectionSpace::index(int t, int i) const {
    for (int n = 0; n < dim(); ++n)
        if (basis[static_cast<size_t>(n)] == std::make_pair(t, i)) return n;
    return -1;
}

PWFunction SectionSpace::element(const Field& f, int n) const {
    auto [t, i] = basis.at(static_cast<size_t>(n));
    return PWFunction::coefficient(f, spin(t), i, column(t));
}

Mat SectionSpace::toVector(const PWFunction& f) const {
    Mat v(f.field(), dim(), 1);
    for (const auto& [t, c] : f.components()) {
        bool inWindow = t <= windowTwice;
        bool parityOk = (t - mu.twice()) % 2 == 0 && t >= std::abs(mu.twice());
        for (int i = 0; i <= t; ++i)
            for (int j = 0; j <= t; ++j) {
                if (c(i, j).isZero()) continue;
                if (!parityOk || j != column(t)) throw std::domain_error("toVector: not a section of E_mu");
                if (inWindow) v(index(t, i), 0) = c(i, j);
            }
    }
    return v;
}

PWFunction SectionSpace::fromVector(const Mat& v) const {
    PWFunction r(v.field());
    for (int n = 0; n < dim(); ++n)
        if (!v(n, 0).isZero(0.0)) r = r + element(v.field(), n).scaled(v(n, 0));
    return r;
}

SectionSpace sectionSpace(HalfInt mu, int windowTwice) {
    if (windowTwice < std::abs(mu.twice())) throw std::invalid_argument("sectionSpace: window below |mu|");
    SectionSpace s;
    s.mu = mu;
    s.windowTwice = windowTwice;
    for (int t = std::abs(mu.twice()); t <= windowTwice; t += 2)
        for (int i = 0; i <= t; ++i) s.basis.emplace_back(t, i);
    return s;
}

// ---------------------------------------------------------------- operators

namespace {
PrincipalOp blockOp(const Field& f, const SectionSpace& sec, const std::function<Mat(HalfInt)>& image) {
    PrincipalOp op{Mat(f, sec.dim(), sec.dim()), 0};
    for (int t = std::abs(sec.mu.twice()); t <= sec.windowTwice; t += 2) {
        Mat st = image(spin(t));
        // f <| Y acts on the coefficient column by Y^t
        for (int i = 0; i <= t; ++i)
            for (int k = 0; k <= t; ++k)
                if (!st(k, i).isZero(0.0)) op.mat(sec.index(t, i), sec.index(t, k)) = st(k, i);
    }
    return op;
}
}  // namespace

PrincipalOp piDK(const Field& f, const SectionSpace& sec, const DKElement& x) {
    DKElement sx = dkAntipode(x);
    return blockOp(f, sec, [&](HalfInt m) { return sx.at(m); });
}

PrincipalOp piU(const Field& f, const SectionSpace& sec, const PBWElement& x) {
    PBWElement sx = antipode(x);
    return blockOp(f, sec, [&](HalfInt m) { return elementImage(sx, m); });
}

const std::vector<LegOrder>& allLegOrders() {
    static const std::vector<LegOrder> all{LegOrder::PLR, LegOrder::PRL, LegOrder::LPR,
                                           LegOrder::LRP, LegOrder::RPL, LegOrder::RLP};
    return all;
}

std::string legOrderName(LegOrder o) {
    switch (o) {
        case LegOrder::PLR: return "PLR";
        case LegOrder::PRL: return "PRL";
        case LegOrder::LPR: return "LPR";
        case LegOrder::LRP: return "LRP";
        case LegOrder::RPL: return "RPL";
        case LegOrder::RLP: return "RLP";
    }
    return "?";
}

std::vector<std::pair<int, Mat>> piPWComponents(const Field& f, const SectionSpace& sec, const PWFunction& a,
                                                LegOrder order) {
    Roles ro = roles(order);
    std::map<int, Mat> parts;
    for (const auto& [s, am] : a.components()) {
        HalfInt sp = spin(s);
        int d = s + 1;
        std::vector<PWFunction> anti;
        for (int x = 0; x < d * d; ++x) anti.push_back(pwAntipode(PWFunction::coefficient(f, sp, x / d, x % d)));
        for (int n = 0; n < sec.dim(); ++n) {
            PWFunction fn = sec.element(f, n);
            std::map<int, PWFunction> out;
            for (int ia = 0; ia < d; ++ia)
                for (int ib = 0; ib < d; ++ib) {
                    if (am(ia, ib).isZero(0.0)) continue;
                    for (int k1 = 0; k1 < d; ++k1)
                        for (int k2 = 0; k2 < d; ++k2) {
                            const std::pair<int, int> legs[3] = {{ia, k1}, {k1, k2}, {k2, ib}};
                            const auto& pl = legs[ro.p];
                            if (pl.first != pl.second) continue;
                            const auto& ll = legs[ro.l];
                            const auto& rl = legs[ro.r];
                            PWFunction term = pwMultiply(pwMultiply(PWFunction::coefficient(f, sp, ll.first, ll.second), fn),
                                                         anti[static_cast<size_t>(rl.first * d + rl.second)]);
                            int w = s - 2 * pl.first;
                            auto it = out.find(w);
                            if (it == out.end()) it = out.emplace(w, PWFunction(f)).first;
                            it->second = it->second + term.scaled(am(ia, ib));
                        }
                }
            for (const auto& [w, g] : out) {
                Mat col = sec.toVector(g);
                auto it = parts.find(w);
                if (it == parts.end()) it = parts.emplace(w, Mat(f, sec.dim(), sec.dim())).first;
                for (int r = 0; r < sec.dim(); ++r)
                    if (!col(r, 0).isZero(0.0)) it->second(r, n) += col(r, 0);
            }
        }
    }
    return {parts.begin(), parts.end()};
}

Scalar lambdaWeight(const Field& f, const Lambda& lam, int w) { return chi(f, lam, w); }

PrincipalOp piPW(const Field& f, const SectionSpace& sec, const Lambda& lam, const PWFunction& a, LegOrder order) {
    PrincipalOp op{Mat(f, sec.dim(), sec.dim()), 2 * std::max(0, a.maxTwice())};
    const auto parts = piPWComponents(f, sec, a, order);
    for (const auto& [w, m] : parts) op.mat += m.scaled(chi(f, lam, w));
    return op;
}

Mat sectionGram(const Field& f, const SectionSpace& sec) {
    Mat g(f, sec.dim(), sec.dim());
    for (int a = 0; a < sec.dim(); ++a)
        for (int b = 0; b < sec.dim(); ++b)
            if (sec.basis[static_cast<size_t>(a)].first == sec.basis[static_cast<size_t>(b)].first)
                g(a, b) = innerProduct(sec.element(f, a), sec.element(f, b));
    return g;
}

double interiorDistance(const SectionSpace& sec, const Mat& a, const Mat& b, int growthTwice) {
    double d = 0;
    for (int n = 0; n < sec.dim(); ++n) {
        if (sec.basis[static_cast<size_t>(n)].first > sec.windowTwice - growthTwice) continue;
        for (int r = 0; r < sec.dim(); ++r) d = std::max(d, (a(r, n) - b(r, n)).magnitude());
    }
    return d;
}

// ---------------------------------------------------------------- checks

namespace {
std::vector<PWFunction> spinHalfCoefficients(const Field& f) {
    std::vector<PWFunction> out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) out.push_back(PWFunction::coefficient(f, spin(1), i, j));
    return out;
}

std::vector<DKElement> dkSample(const Field& f, int windowTwice) {
    std::vector<DKElement> ys;
    for (int t = 0; t <= windowTwice; ++t) ys.push_back(DKElement::identityAt(f, spin(t)));
    ys.push_back(DKElement::fromPBW(PBWElement::K(f), windowTwice));
    ys.push_back(DKElement::fromPBW(PBWElement::E(f), windowTwice));
    ys.push_back(DKElement::fromPBW(PBWElement::F(f) * PBWElement::K(f), windowTwice));
    for (int t = 1; t <= std::min(windowTwice, 3); ++t) {
        Mat m(f, t + 1, t + 1);
        for (int i = 0; i <= t; ++i)
            for (int j = 0; j <= t; ++j) m(i, j) = Scalar::integer(f, (3 * i + 5 * j + t) % 7 - 3);
        ys.push_back(DKElement::component(spin(t), m));
    }
    return ys;
}
}  // namespace

YDReport principalYD(const Field& f, HalfInt mu, const Lambda& lam, int windowTwice, LegOrder order) {
    SectionSpace sec = sectionSpace(mu, windowTwice);
    DoubleRep rep;
    rep.dim = sec.dim();
    rep.dk = [&](const DKElement& x) { return piDK(f, sec, x).mat; };
    rep.pw = [&](const PWFunction& a) { return piPW(f, sec, lam, a, order).mat; };
    return ydCheck(rep, dkSample(f, windowTwice), 1, 1e-9);
}

LegOrderReport legOrderReport(const Field& f, HalfInt mu, const Lambda& lam, int windowTwice, LegOrder order) {
    LegOrderReport r;
    r.order = order;
    SectionSpace sec = sectionSpace(mu, windowTwice);
    auto gens = spinHalfCoefficients(f);
    std::vector<Mat> ops;
    try {
        for (const auto& a : gens) ops.push_back(piPW(f, sec, lam, a, order).mat);
        piPW(f, sec, lam, PWFunction::coefficient(f, spin(2), 0, 2), order);
    } catch (const std::domain_error&) {
        r.preservesSections = false;
        r.homomorphismResidual = r.ydResidual = INFINITY;
        return r;
    }
    r.preservesSections = true;
    for (size_t i = 0; i < gens.size(); ++i)
        for (size_t j = 0; j < gens.size(); ++j) {
            Mat lhs = piPW(f, sec, lam, pwMultiply(gens[i], gens[j]), order).mat;
            r.homomorphismResidual = std::max(r.homomorphismResidual, interiorDistance(sec, lhs, ops[i] * ops[j], 4));
        }
    r.ydResidual = principalYD(f, mu, lam, windowTwice, order).maxResidual;
    return r;
}

UnitarityReport unitarityCheck(double q, HalfInt mu, cplx lam, int windowTwice) {
    Field f = Field::Numeric(q);
    SectionSpace sec = sectionSpace(mu, windowTwice);
    Lambda l = Lambda::complex(lam);
    Mat g = sectionGram(f, sec);
    UnitarityReport r;
    auto deviation = [&](const Mat& piStar, const Mat& pi, int growth) {
        Mat diff = piStar.adjoint() * g - g * pi;
        double d = 0;
        for (int a = 0; a < sec.dim(); ++a) {
            if (sec.basis[static_cast<size_t>(a)].first > windowTwice - growth) continue;
            for (int b = 0; b < sec.dim(); ++b) {
                if (sec.basis[static_cast<size_t>(b)].first > windowTwice - growth) continue;
                d = std::max(d, diff(a, b).magnitude());
            }
        }
        ++r.samples;
        r.maxDeviation = std::max(r.maxDeviation, d);
    };
    for (const auto& a : spinHalfCoefficients(f))
        deviation(piPW(f, sec, l, pwStar(a), kLegOrder).mat, piPW(f, sec, l, a, kLegOrder).mat, 2);
    for (const auto& x : dkSample(f, windowTwice))
        deviation(piDK(f, sec, dkStar(x)).mat, piDK(f, sec, x).mat, 0);
    return r;
}

double periodicityResidual(double q, HalfInt mu, cplx lam, int windowTwice) {
    Field f = Field::Numeric(q);
    SectionSpace sec = sectionSpace(mu, windowTwice);
    double hbar = std::log(q) / (2 * std::numbers::pi);
    Lambda l0 = Lambda::complex(lam), l1 = Lambda::complex(lam + cplx(0, 1.0 / hbar));
    double d = 0;
    for (const auto& a : spinHalfCoefficients(f))
        d = std::max(d, piPW(f, sec, l0, a).mat.distance(piPW(f, sec, l1, a).mat));
    return d;
}

}  // namespace qgw
