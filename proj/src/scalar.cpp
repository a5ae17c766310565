#include "qgw/scalar.hpp"

#include <cctype>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qgw {

// ---------------------------------------------------------------- HalfInt

std::string HalfInt::str() const {
    if (isInteger()) return std::to_string(twice_ / 2);
    return std::to_string(twice_) + "/2";
}

HalfInt HalfInt::parse(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) {
            double d = std::stod(s);
            double t = 2 * d;
            if (std::abs(t - std::round(t)) > 1e-12) throw std::invalid_argument("not a half-integer: " + s);
            return fromTwice(static_cast<int>(std::lround(t)));
        }
        int n = std::stoi(s.substr(0, slash));
        int d = std::stoi(s.substr(slash + 1));
        if (d == 1) return HalfInt(n);
        if (d == 2) return fromTwice(n);
    } catch (const std::logic_error&) {
    }
    throw std::invalid_argument("not a half-integer: " + s);
}

// ---------------------------------------------------------------- LPoly

void LPoly::trim() {
    size_t b = 0;
    while (b < c.size() && c[b] == 0) ++b;
    if (b == c.size()) {
        c.clear();
        low = 0;
        return;
    }
    size_t e = c.size();
    while (c[e - 1] == 0) --e;
    if (b > 0 || e < c.size()) c = std::vector<mpq_class>(c.begin() + b, c.begin() + e);
    low += static_cast<int>(b);
}

LPoly LPoly::constant(const mpq_class& x) { return monomial(x, 0); }

LPoly LPoly::monomial(const mpq_class& x, int e) {
    LPoly p;
    if (x != 0) {
        p.low = e;
        p.c.push_back(x);
    }
    return p;
}

LPoly LPoly::operator+(const LPoly& o) const {
    if (isZero()) return o;
    if (o.isZero()) return *this;
    LPoly r;
    r.low = std::min(low, o.low);
    int hi = std::max(high(), o.high());
    r.c.assign(hi - r.low + 1, mpq_class(0));
    for (size_t k = 0; k < c.size(); ++k) r.c[low - r.low + k] += c[k];
    for (size_t k = 0; k < o.c.size(); ++k) r.c[o.low - r.low + k] += o.c[k];
    r.trim();
    return r;
}

LPoly LPoly::operator-() const {
    LPoly r = *this;
    for (auto& x : r.c) x = -x;
    return r;
}

LPoly LPoly::operator-(const LPoly& o) const { return *this + (-o); }

LPoly LPoly::operator*(const LPoly& o) const {
    if (isZero() || o.isZero()) return {};
    LPoly r;
    r.low = low + o.low;
    r.c.assign(c.size() + o.c.size() - 1, mpq_class(0));
    for (size_t i = 0; i < c.size(); ++i) {
        if (c[i] == 0) continue;
        for (size_t j = 0; j < o.c.size(); ++j) r.c[i + j] += c[i] * o.c[j];
    }
    r.trim();
    return r;
}

LPoly LPoly::scaled(const mpq_class& x) const {
    if (x == 0) return {};
    LPoly r = *this;
    for (auto& y : r.c) y *= x;
    return r;
}

cplx LPoly::eval(cplx v) const {
    cplx acc = 0;
    for (size_t k = c.size(); k-- > 0;) acc = acc * v + c[k].get_d();
    return acc * std::pow(v, low);
}

std::string LPoly::str(const char* var, int expDiv) const {
    if (isZero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (size_t k = c.size(); k-- > 0;) {
        const mpq_class& x = c[k];
        if (x == 0) continue;
        int e = (low + static_cast<int>(k)) / expDiv;
        mpq_class a = abs(x);
        if (first) {
            if (x < 0) os << "-";
        } else {
            os << (x < 0 ? " - " : " + ");
        }
        first = false;
        if (e == 0) {
            os << a.get_str();
            continue;
        }
        if (a != 1) os << a.get_str() << "*";
        os << var;
        if (e != 1) os << "^" << e;
    }
    return os.str();
}

// ---------------------------------------------------------------- ordinary polynomial helpers

namespace {

using Poly = std::vector<mpq_class>;  // index = degree

void ptrim(Poly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

// p mod d, d nonzero
Poly pmod(Poly p, const Poly& d) {
    const mpq_class& lead = d.back();
    while (p.size() >= d.size()) {
        mpq_class f = p.back() / lead;
        size_t shift = p.size() - d.size();
        for (size_t k = 0; k < d.size(); ++k) p[shift + k] -= f * d[k];
        p.pop_back();
        ptrim(p);
    }
    return p;
}

// exact quotient p / d
Poly pdiv(Poly p, const Poly& d) {
    if (p.size() < d.size()) return {};
    Poly q(p.size() - d.size() + 1, mpq_class(0));
    const mpq_class& lead = d.back();
    while (p.size() >= d.size() && !p.empty()) {
        mpq_class f = p.back() / lead;
        size_t shift = p.size() - d.size();
        q[shift] = f;
        for (size_t k = 0; k < d.size(); ++k) p[shift + k] -= f * d[k];
        p.pop_back();
        ptrim(p);
    }
    return q;
}

Poly pgcd(Poly a, Poly b) {
    ptrim(a);
    ptrim(b);
    while (!b.empty()) {
        Poly r = pmod(a, b);
        a = std::move(b);
        b = std::move(r);
        if (!b.empty()) {
            mpq_class l = b.back();
            for (auto& x : b) x /= l;
        }
    }
    if (!a.empty()) {
        mpq_class l = a.back();
        for (auto& x : a) x /= l;
    }
    return a;
}

}  // namespace

// ---------------------------------------------------------------- RatFunc

RatFunc::RatFunc(long n) : num_(LPoly::constant(mpq_class(n))), den_(LPoly::constant(1)) {}
RatFunc::RatFunc(const mpq_class& x) : num_(LPoly::constant(x)), den_(LPoly::constant(1)) {}

RatFunc::RatFunc(LPoly num, LPoly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.isZero()) throw std::domain_error("rational function with zero denominator");
    normalize();
}

RatFunc RatFunc::vpow(int e) {
    RatFunc r;
    r.num_ = LPoly::monomial(1, e);
    return r;
}

void RatFunc::normalize() {
    num_.trim();
    den_.trim();
    if (num_.isZero()) {
        den_ = LPoly::constant(1);
        return;
    }
    num_.low -= den_.low;
    den_.low = 0;
    if (den_.c.size() > 1 && num_.c.size() > 1) {
        Poly g = pgcd(num_.c, den_.c);
        if (g.size() > 1) {
            num_.c = pdiv(num_.c, g);
            den_.c = pdiv(den_.c, g);
        }
    }
    mpq_class lead = den_.c.back();
    if (lead != 1) {
        for (auto& x : num_.c) x /= lead;
        for (auto& x : den_.c) x /= lead;
    }
}

RatFunc RatFunc::operator+(const RatFunc& o) const {
    if (isZero()) return o;
    if (o.isZero()) return *this;
    if (isPolynomial() && o.isPolynomial()) {
        RatFunc r;
        r.num_ = num_ + o.num_;
        return r;
    }
    if (den_ == o.den_) return RatFunc(num_ + o.num_, den_);
    return RatFunc(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RatFunc RatFunc::operator-() const {
    RatFunc r = *this;
    r.num_ = -r.num_;
    return r;
}

RatFunc RatFunc::operator-(const RatFunc& o) const { return *this + (-o); }

RatFunc RatFunc::operator*(const RatFunc& o) const {
    if (isZero() || o.isZero()) return RatFunc();
    if (isPolynomial() && o.isPolynomial()) {
        RatFunc r;
        r.num_ = num_ * o.num_;
        return r;
    }
    return RatFunc(num_ * o.num_, den_ * o.den_);
}

RatFunc RatFunc::inv() const {
    if (isZero()) throw std::domain_error("division by zero in Q(v)");
    return RatFunc(den_, num_);
}

RatFunc RatFunc::operator/(const RatFunc& o) const { return *this * o.inv(); }

cplx RatFunc::eval(cplx v) const {
    cplx d = den_.eval(v);
    if (std::abs(d) < 1e-300) throw std::domain_error("evaluation at a pole");
    return num_.eval(v) / d;
}

std::string RatFunc::str() const {
    mpz_class l = 1;
    for (const auto& x : num_.c) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    for (const auto& x : den_.c) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    mpz_class g = 0;
    LPoly n = num_.scaled(mpq_class(l)), d = den_.scaled(mpq_class(l));
    for (const auto& x : n.c) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_num_mpz_t());
    for (const auto& x : d.c) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_num_mpz_t());
    if (g != 0 && g != 1) {
        mpq_class ig(mpz_class(1), g);
        n = n.scaled(ig);
        d = d.scaled(ig);
    }
    auto compact = [](const LPoly& p) {
        std::string s = p.str();
        std::string out;
        for (char ch : s)
            if (ch != ' ' && ch != '*') out += ch;
        return out;
    };
    return "(" + compact(n) + ")/(" + compact(d) + ")";
}

namespace {

LPoly parseLPoly(const std::string& s) {
    LPoly acc;
    size_t i = 0;
    auto skip = [&] {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    };
    skip();
    if (i == s.size()) throw std::invalid_argument("empty polynomial");
    while (i < s.size()) {
        skip();
        int sign = 1;
        if (s[i] == '+' || s[i] == '-') {
            if (s[i] == '-') sign = -1;
            ++i;
            skip();
        }
        std::string digits;
        while (i < s.size() && (std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '/')) digits += s[i++];
        skip();
        if (i < s.size() && s[i] == '*') ++i;
        skip();
        int e = 0;
        bool hasVar = false;
        if (i < s.size() && s[i] == 'v') {
            hasVar = true;
            ++i;
            e = 1;
            if (i < s.size() && s[i] == '^') {
                ++i;
                std::string ex;
                if (i < s.size() && (s[i] == '-' || s[i] == '+')) ex += s[i++];
                while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ex += s[i++];
                e = std::stoi(ex);
            }
        }
        if (digits.empty() && !hasVar) throw std::invalid_argument("bad polynomial term in '" + s + "'");
        mpq_class coef = digits.empty() ? mpq_class(1) : mpq_class(digits);
        coef.canonicalize();
        acc = acc + LPoly::monomial(coef * sign, e);
        skip();
    }
    return acc;
}

}  // namespace

RatFunc RatFunc::parse(const std::string& s) {
    auto strip = [](std::string t) {
        while (!t.empty() && std::isspace(static_cast<unsigned char>(t.front()))) t.erase(t.begin());
        while (!t.empty() && std::isspace(static_cast<unsigned char>(t.back()))) t.pop_back();
        if (t.size() >= 2 && t.front() == '(' && t.back() == ')') t = t.substr(1, t.size() - 2);
        return t;
    };
    auto pos = s.find(")/(");
    if (pos == std::string::npos) return RatFunc(parseLPoly(strip(s)), LPoly::constant(1));
    return RatFunc(parseLPoly(strip(s.substr(0, pos + 1))), parseLPoly(strip(s.substr(pos + 2))));
}

// ---------------------------------------------------------------- Field / Scalar

Field Field::Numeric(double q) {
    if (!(q > 0) || q == 1.0) throw std::invalid_argument("numeric mode requires q > 0, q != 1");
    return {false, q};
}

std::string Field::key() const {
    if (exact) return "exact";
    std::ostringstream os;
    os.precision(17);
    os << "q=" << q;
    return os.str();
}

Scalar::Scalar(const Field& f, RatFunc r) : f_(f), x_(std::move(r)) {
    if (!f.exact) throw std::logic_error("exact payload in numeric field");
}

Scalar::Scalar(const Field& f, cplx z) : f_(f), x_(z) {
    if (f.exact) throw std::logic_error("numeric payload in exact field");
}

Scalar Scalar::zero(const Field& f) { return f.exact ? Scalar(f, RatFunc()) : Scalar(f, cplx(0)); }
Scalar Scalar::one(const Field& f) { return integer(f, 1); }
Scalar Scalar::integer(const Field& f, long n) {
    return f.exact ? Scalar(f, RatFunc(n)) : Scalar(f, cplx(static_cast<double>(n)));
}
Scalar Scalar::rational(const Field& f, const mpq_class& x) {
    return f.exact ? Scalar(f, RatFunc(x)) : Scalar(f, cplx(x.get_d()));
}
Scalar Scalar::vpow(const Field& f, int e) {
    if (f.exact) return Scalar(f, RatFunc::vpow(e));
    return Scalar(f, cplx(std::pow(f.q, e / 2.0)));
}
Scalar Scalar::qpowComplex(const Field& f, cplx z) {
    if (f.exact) throw std::logic_error("complex power of q requires numeric mode");
    return Scalar(f, std::exp(z * std::log(f.q)));
}

const RatFunc& Scalar::rat() const {
    if (!f_.exact) throw std::logic_error("exact payload requested from numeric scalar");
    return std::get<RatFunc>(x_);
}

cplx Scalar::value() const {
    if (f_.exact) throw std::logic_error("numeric value requested from exact scalar; use eval");
    return std::get<cplx>(x_);
}

void Scalar::checkField(const Scalar& o) const {
    if (!(f_ == o.f_)) throw std::logic_error("scalar mode mismatch: " + f_.key() + " vs " + o.f_.key());
}

Scalar Scalar::operator+(const Scalar& o) const {
    checkField(o);
    if (f_.exact) return Scalar(f_, rat() + o.rat());
    return Scalar(f_, value() + o.value());
}
Scalar Scalar::operator-(const Scalar& o) const {
    checkField(o);
    if (f_.exact) return Scalar(f_, rat() - o.rat());
    return Scalar(f_, value() - o.value());
}
Scalar Scalar::operator*(const Scalar& o) const {
    checkField(o);
    if (f_.exact) return Scalar(f_, rat() * o.rat());
    return Scalar(f_, value() * o.value());
}
Scalar Scalar::operator/(const Scalar& o) const {
    checkField(o);
    return *this * o.inv();
}
Scalar Scalar::operator-() const {
    if (f_.exact) return Scalar(f_, -rat());
    return Scalar(f_, -value());
}
Scalar Scalar::inv() const {
    if (f_.exact) return Scalar(f_, rat().inv());
    if (value() == cplx(0)) throw std::domain_error("division by zero");
    return Scalar(f_, 1.0 / value());
}
Scalar Scalar::conj() const {
    if (f_.exact) return *this;
    return Scalar(f_, std::conj(value()));
}

bool Scalar::isZero(double tol) const {
    if (f_.exact) return rat().isZero();
    return std::abs(value()) <= tol;
}

bool Scalar::isOne() const {
    if (f_.exact) return rat() == RatFunc(1);
    return std::abs(value() - 1.0) <= kDefaultTol;
}

bool Scalar::equals(const Scalar& o, double tol) const {
    checkField(o);
    if (f_.exact) return rat() == o.rat();
    return std::abs(value() - o.value()) <= tol;
}

double Scalar::magnitude() const {
    if (f_.exact) return rat().isZero() ? 0.0 : 1.0;
    return std::abs(value());
}

cplx Scalar::eval(cplx v0) const { return rat().eval(v0); }

Scalar Scalar::toNumeric(double q) const {
    Field nf = Field::Numeric(q);
    if (!f_.exact) return Scalar(nf, value());
    return Scalar(nf, rat().eval(std::sqrt(q)));
}

std::string Scalar::str() const {
    if (f_.exact) return rat().str();
    std::ostringstream os;
    os.precision(17);
    os << "[" << value().real() << ", " << value().imag() << "]";
    return os.str();
}

// ---------------------------------------------------------------- q-numbers

Scalar qnum(const Field& f, HalfInt a) {
    if (!f.exact) return qnumReal(f, a.toDouble());
    if (a.twice() == 0) return Scalar::zero(f);
    if (a.isInteger()) {
        int n = a.twice() / 2;
        int sign = n < 0 ? -1 : 1;
        n = std::abs(n);
        LPoly p;
        for (int j = 0; j < n; ++j) p = p + LPoly::monomial(sign, 2 * (n - 1 - 2 * j));
        return Scalar(f, RatFunc(p, LPoly::constant(1)));
    }
    int t = a.twice();
    LPoly num = LPoly::monomial(1, t) - LPoly::monomial(1, -t);
    LPoly den = LPoly::monomial(1, 2) - LPoly::monomial(1, -2);
    return Scalar(f, RatFunc(num, den));
}

Scalar qnumReal(const Field& f, double a) {
    if (f.exact) throw std::logic_error("real-argument q-number requires numeric mode");
    double q = f.q;
    return Scalar(f, cplx((std::pow(q, a) - std::pow(q, -a)) / (q - 1.0 / q)));
}

Scalar qnumComplex(const Field& f, cplx z) {
    if (f.exact) throw std::logic_error("complex q-number requires numeric mode");
    double lq = std::log(f.q);
    cplx num = std::exp(z * lq) - std::exp(-z * lq);
    return Scalar(f, num / (f.q - 1.0 / f.q));
}

}  // namespace qgw
