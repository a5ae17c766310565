#include "qgw/uq_algebra.hpp"

#include <algorithm>
#include <cctype>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace qgw {

std::string Mono::str() const {
    std::vector<std::string> parts;
    auto gen = [&](const char* g, int e) {
        if (e == 0) return;
        std::string s = g;
        if (e != 1) s += "^" + std::to_string(e);
        parts.push_back(s);
    };
    gen("F", a);
    gen("K", b);
    gen("E", c);
    if (parts.empty()) return "1";
    std::string out = parts[0];
    for (size_t i = 1; i < parts.size(); ++i) out += "*" + parts[i];
    return out;
}

// ---------------------------------------------------------------- PBWElement basics

PBWElement PBWElement::scalar(const Scalar& s) {
    PBWElement r(s.field());
    r.add({}, s);
    return r;
}

PBWElement PBWElement::monomial(const Field& f, Mono m, const Scalar& coeff) {
    PBWElement r(f);
    r.add(m, coeff);
    return r;
}

bool PBWElement::isScalar() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Mono{});
}

Scalar PBWElement::coeff(const Mono& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Scalar::zero(f_) : it->second;
}

int PBWElement::degree() const {
    int d = 0;
    for (const auto& [m, s] : terms_) d = std::max(d, m.degree());
    return d;
}

void PBWElement::add(const Mono& m, const Scalar& s) {
    if (s.isZero(0.0)) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, s);
        return;
    }
    it->second += s;
    if (it->second.isZero(0.0)) terms_.erase(it);
}

PBWElement PBWElement::operator+(const PBWElement& o) const {
    PBWElement r = *this;
    for (const auto& [m, s] : o.terms_) r.add(m, s);
    return r;
}

PBWElement PBWElement::operator-() const {
    PBWElement r(f_);
    for (const auto& [m, s] : terms_) r.terms_.emplace(m, -s);
    return r;
}

PBWElement PBWElement::operator-(const PBWElement& o) const { return *this + (-o); }

PBWElement PBWElement::scaled(const Scalar& s) const {
    PBWElement r(f_);
    if (s.isZero(0.0)) return r;
    for (const auto& [m, c] : terms_) r.add(m, c * s);
    return r;
}

PBWElement PBWElement::operator*(const PBWElement& o) const {
    PBWElement r(f_);
    for (const auto& [m1, s1] : terms_)
        for (const auto& [m2, s2] : o.terms_) {
            Scalar c = s1 * s2;
            PBWElement p = multiplyMono(f_, m1, m2);
            for (const auto& [m, s] : p.terms_) r.add(m, c * s);
        }
    return r;
}

PBWElement PBWElement::pow(int n) const {
    if (n < 0) {
        if (terms_.size() == 1) {
            const auto& [m, s] = *terms_.begin();
            if (m.a == 0 && m.c == 0) return monomial(f_, {0, -m.b, 0}, s.inv()).pow(-n);
        }
        throw std::invalid_argument("negative power of a non-invertible element");
    }
    PBWElement r = one(f_), b = *this;
    while (n > 0) {
        if (n & 1) r = r * b;
        n >>= 1;
        if (n) b = b * b;
    }
    return r;
}

bool PBWElement::operator==(const PBWElement& o) const {
    if (!(f_ == o.f_) || terms_.size() != o.terms_.size()) return false;
    auto it = o.terms_.begin();
    for (const auto& [m, s] : terms_) {
        if (!(m == it->first) || !s.equals(it->second)) return false;
        ++it;
    }
    return true;
}

// ---------------------------------------------------------------- rewriting

namespace {

struct EFKey {
    std::string field;
    int c, a;
    auto operator<=>(const EFKey&) const = default;
};

std::mutex gMemoMutex;
std::map<EFKey, PBWElement> gEFMemo;

Scalar qpowInt(const Field& f, int n) { return Scalar::vpow(f, 2 * n); }

// (K - K^-1)/(q - q^-1) coefficient
Scalar cartanCoeff(const Field& f) { return (qpowInt(f, 1) - qpowInt(f, -1)).inv(); }

bool isNormal(const std::vector<Letter>& w, size_t& at) {
    for (size_t i = 0; i + 1 < w.size(); ++i) {
        char x = w[i].g, y = w[i + 1].g;
        if ((x == 'E' && y == 'F') || (x == 'E' && y == 'K') || (x == 'K' && y == 'F') || (x == 'K' && y == 'K')) {
            at = i;
            return false;
        }
    }
    return true;
}

Mono wordToMono(const std::vector<Letter>& w) {
    Mono m;
    for (const auto& l : w) {
        if (l.g == 'F') ++m.a;
        else if (l.g == 'K') m.b += l.n;
        else ++m.c;
    }
    return m;
}

// E^c F^a, memoized, via repeated single-E rewriting
PBWElement normalEF(const Field& f, int c, int a) {
    if (c == 0 || a == 0) return PBWElement::monomial(f, {a, 0, c});
    EFKey key{f.key(), c, a};
    {
        std::lock_guard<std::mutex> lk(gMemoMutex);
        auto it = gEFMemo.find(key);
        if (it != gEFMemo.end()) return it->second;
    }
    std::vector<Letter> w{{'E'}};
    for (int i = 0; i < a; ++i) w.push_back({'F'});
    PBWElement ef = rewriteWord(f, w);
    PBWElement r(f);
    for (const auto& [m, s] : ef.terms()) {
        // E^{c-1} F^{m.a} K^{m.b} E^{m.c}
        PBWElement inner = normalEF(f, c - 1, m.a);
        for (const auto& [m2, s2] : inner.terms()) {
            Scalar k = s * s2 * qpowInt(f, -2 * m.b * m2.c);
            r.add({m2.a, m2.b + m.b, m2.c + m.c}, k);
        }
    }
    std::lock_guard<std::mutex> lk(gMemoMutex);
    gEFMemo.emplace(key, r);
    return r;
}

}  // namespace

PBWElement rewriteWord(const Field& f, const std::vector<Letter>& word) {
    PBWElement out(f);
    std::vector<std::pair<std::vector<Letter>, Scalar>> stack;
    stack.emplace_back(word, Scalar::one(f));
    const Scalar cc = cartanCoeff(f);
    while (!stack.empty()) {
        auto [w, s] = std::move(stack.back());
        stack.pop_back();
        size_t i;
        if (isNormal(w, i)) {
            out.add(wordToMono(w), s);
            continue;
        }
        char x = w[i].g, y = w[i + 1].g;
        if (x == 'K' && y == 'K') {
            int n = w[i].n + w[i + 1].n;
            w.erase(w.begin() + i, w.begin() + i + 2);
            if (n != 0) w.insert(w.begin() + i, Letter{'K', n});
            stack.emplace_back(std::move(w), s);
        } else if (x == 'E' && y == 'K') {
            int n = w[i + 1].n;
            std::swap(w[i], w[i + 1]);
            stack.emplace_back(std::move(w), s * qpowInt(f, -2 * n));
        } else if (x == 'K' && y == 'F') {
            int n = w[i].n;
            std::swap(w[i], w[i + 1]);
            stack.emplace_back(std::move(w), s * qpowInt(f, -2 * n));
        } else {  // E F -> F E + (K - K^-1)/(q - q^-1)
            std::vector<Letter> swapped = w;
            std::swap(swapped[i], swapped[i + 1]);
            std::vector<Letter> kp = w, km = w;
            kp.erase(kp.begin() + i, kp.begin() + i + 2);
            km.erase(km.begin() + i, km.begin() + i + 2);
            kp.insert(kp.begin() + i, Letter{'K', 1});
            km.insert(km.begin() + i, Letter{'K', -1});
            stack.emplace_back(std::move(swapped), s);
            stack.emplace_back(std::move(kp), s * cc);
            stack.emplace_back(std::move(km), -(s * cc));
        }
    }
    return out;
}

PBWElement multiplyMono(const Field& f, const Mono& x, const Mono& y) {
    PBWElement r(f);
    PBWElement ef = normalEF(f, x.c, y.a);
    for (const auto& [m, s] : ef.terms()) {
        // F^{x.a} K^{x.b} F^{m.a} K^{m.b} E^{m.c} K^{y.b} E^{y.c}
        int e = -2 * x.b * m.a - 2 * y.b * m.c;
        r.add({x.a + m.a, x.b + m.b + y.b, m.c + y.c}, s * qpowInt(f, e));
    }
    return r;
}

// ---------------------------------------------------------------- printing

namespace {

LPoly polyLcm(const LPoly& a, const LPoly& b) {
    RatFunc r(a, b);  // a/g over b/g
    return a * r.den();
}

}  // namespace

std::string PBWElement::str() const {
    if (terms_.empty()) return "0";
    std::vector<std::pair<Mono, Scalar>> items(terms_.begin(), terms_.end());
    std::sort(items.begin(), items.end(), [](const auto& x, const auto& y) {
        return std::make_tuple(x.first.a, x.first.c, -x.first.b) < std::make_tuple(y.first.a, y.first.c, -y.first.b);
    });
    auto monoStr = [](const Mono& m) { return m.str(); };
    std::ostringstream os;
    if (!f_.exact) {
        bool first = true;
        for (const auto& [m, s] : items) {
            if (!first) os << " + ";
            first = false;
            cplx z = s.value();
            std::ostringstream c;
            c.precision(17);
            if (z.imag() == 0) c << z.real();
            else c << "(" << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "*i)";
            if (m == Mono{}) os << c.str();
            else os << c.str() << "*" << monoStr(m);
        }
        return os.str();
    }
    // common denominator
    LPoly D = LPoly::constant(1);
    for (const auto& [m, s] : items) D = polyLcm(D, s.rat().den());
    // integer coefficients in the denominator
    mpz_class l = 1;
    for (const auto& x : D.c) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    D = D.scaled(mpq_class(l));
    // balance exponents when the degree is even
    int h = D.high();
    if (h % 2 == 0) D.low -= h / 2;
    std::vector<LPoly> nums;
    for (const auto& [m, s] : items) {
        RatFunc n = s.rat() * RatFunc(D, LPoly::constant(1));
        if (!n.isPolynomial()) throw std::logic_error("common denominator failed");
        nums.push_back(n.num());
    }
    auto allEven = [](const LPoly& p) {
        for (size_t k = 0; k < p.c.size(); ++k)
            if (p.c[k] != 0 && (p.low + static_cast<int>(k)) % 2 != 0) return false;
        return true;
    };
    bool even = allEven(D);
    for (const auto& p : nums) even = even && allEven(p);
    const char* var = even ? "q" : "v";
    int div = even ? 2 : 1;
    bool hasDen = !(D.c.size() == 1 && D.low == 0 && D.c[0] == 1);
    std::string body;
    for (size_t t = 0; t < items.size(); ++t) {
        const LPoly& p = nums[t];
        const Mono& m = items[t].first;
        bool isConst = p.c.size() == 1 && p.low == 0;
        std::string piece;
        bool negative = false;
        if (isConst) {
            mpq_class c = p.c[0];
            if (c < 0) {
                negative = true;
                c = -c;
            }
            if (m == Mono{}) piece = c.get_str();
            else if (c == 1) piece = monoStr(m);
            else piece = c.get_str() + "*" + monoStr(m);
        } else {
            std::string ps = p.str(var, div);
            if (p.c.size() == 1) {
                // single term: pull sign out
                if (p.c[0] < 0) {
                    negative = true;
                    ps = (-p).str(var, div);
                }
                piece = (m == Mono{}) ? ps : ps + "*" + monoStr(m);
            } else {
                piece = "(" + ps + ")";
                if (!(m == Mono{})) piece += "*" + monoStr(m);
            }
        }
        if (t == 0) body = negative ? "-" + piece : piece;
        else body += (negative ? " - " : " + ") + piece;
    }
    if (!hasDen) return body;
    std::string ds = D.str(var, div);
    bool simpleDen = D.c.size() == 1;
    return "(" + body + ")/" + (simpleDen ? ds : "(" + ds + ")");
}

// ---------------------------------------------------------------- parser

namespace {

class Parser {
public:
    Parser(const Field& f, const std::string& s) : f_(f), s_(s) {}

    PBWElement parseAll() {
        PBWElement r = expr();
        skip();
        if (i_ != s_.size()) fail("unexpected character '" + std::string(1, s_[i_]) + "'");
        return r;
    }

private:
    const Field& f_;
    const std::string& s_;
    size_t i_ = 0;

    [[noreturn]] void fail(const std::string& msg) const {
        throw std::invalid_argument("syntax error at position " + std::to_string(i_) + ": " + msg);
    }
    void skip() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }
    bool peek(char c) {
        skip();
        return i_ < s_.size() && s_[i_] == c;
    }

    PBWElement expr() {
        skip();
        PBWElement r(f_);
        bool neg = false;
        if (peek('-')) {
            neg = true;
            ++i_;
        } else if (peek('+')) {
            ++i_;
        }
        r = term();
        if (neg) r = -r;
        while (true) {
            if (peek('+')) {
                ++i_;
                r = r + term();
            } else if (peek('-')) {
                ++i_;
                r = r - term();
            } else {
                break;
            }
        }
        return r;
    }

    PBWElement term() {
        PBWElement r = factor();
        while (true) {
            if (peek('*')) {
                ++i_;
                r = r * factor();
            } else if (peek('/')) {
                ++i_;
                size_t at = i_;
                PBWElement d = factor();
                if (!d.isScalar() || d.isZero()) {
                    i_ = at;
                    fail("division only by nonzero scalars");
                }
                r = r.scaled(d.coeff({}).inv());
            } else {
                break;
            }
        }
        return r;
    }

    int integer() {
        skip();
        size_t st = i_;
        if (i_ < s_.size() && (s_[i_] == '-' || s_[i_] == '+')) ++i_;
        while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
        std::string t = s_.substr(st, i_ - st);
        if (t.empty() || t == "-" || t == "+") fail("integer expected");
        return std::stoi(t);
    }

    PBWElement factor() {
        PBWElement base = atom();
        if (peek('^')) {
            ++i_;
            bool paren = peek('(');
            if (paren) ++i_;
            int n = integer();
            if (paren) {
                if (!peek(')')) fail("')' expected");
                ++i_;
            }
            if (n < 0) {
                if (base.terms().size() != 1) fail("negative power of a non-invertible element");
                const auto& [m, s] = *base.terms().begin();
                if (m.a != 0 || m.c != 0) fail("negative power of a non-invertible element");
                PBWElement inv = PBWElement::monomial(f_, {0, -m.b, 0}, s.inv());
                return inv.pow(-n);
            }
            return base.pow(n);
        }
        return base;
    }

    PBWElement atom() {
        skip();
        if (i_ >= s_.size()) fail("unexpected end of input");
        char ch = s_[i_];
        if (ch == '(') {
            ++i_;
            PBWElement r = expr();
            if (!peek(')')) fail("')' expected");
            ++i_;
            return r;
        }
        if (ch == '[') {
            ++i_;
            int n = integer();
            if (!peek(']')) fail("']' expected");
            ++i_;
            skip();
            if (s_.compare(i_, 2, "_q") != 0) fail("'_q' expected after ']'");
            i_ += 2;
            return PBWElement::scalar(qnum(f_, n));
        }
        if (ch == 'E') { ++i_; return PBWElement::E(f_); }
        if (ch == 'F') { ++i_; return PBWElement::F(f_); }
        if (ch == 'K') { ++i_; return PBWElement::K(f_); }
        if (ch == 'q') { ++i_; return PBWElement::scalar(Scalar::vpow(f_, 2)); }
        if (ch == 'v') { ++i_; return PBWElement::scalar(Scalar::vpow(f_, 1)); }
        if (ch == 'i') {
            if (f_.exact) fail("imaginary unit requires numeric mode");
            ++i_;
            return PBWElement::scalar(Scalar(f_, cplx(0, 1)));
        }
        if (ch == 'H') fail("H is not an element of the algebra; use K = q^H");
        if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '.') {
            size_t st = i_;
            while (i_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[i_])) || s_[i_] == '.' ||
                                      s_[i_] == 'e' ||
                                      ((s_[i_] == '-' || s_[i_] == '+') && i_ > st && s_[i_ - 1] == 'e')))
                ++i_;
            std::string t = s_.substr(st, i_ - st);
            if (t.find_first_of(".e") == std::string::npos) return PBWElement::scalar(Scalar::rational(f_, mpq_class(t)));
            if (f_.exact) {
                // decimal literal: exact rational value of the decimal string
                auto dot = t.find('.');
                if (t.find('e') != std::string::npos) fail("exponent notation requires numeric mode");
                std::string digits = t.substr(0, dot) + t.substr(dot + 1);
                mpz_class den = 1;
                for (size_t k = dot + 1; k < t.size(); ++k) den *= 10;
                mpq_class x(mpz_class(digits.empty() ? "0" : digits), den);
                x.canonicalize();
                return PBWElement::scalar(Scalar::rational(f_, x));
            }
            return PBWElement::scalar(Scalar(f_, cplx(std::stod(t))));
        }
        fail("unexpected character '" + std::string(1, ch) + "'");
    }
};

}  // namespace

PBWElement parse(const Field& f, const std::string& text) { return Parser(f, text).parseAll(); }

// ---------------------------------------------------------------- tensors

Tensor Tensor::pure(const std::vector<PBWElement>& legs) {
    Tensor t(legs.at(0).field(), static_cast<int>(legs.size()));
    t.add(std::vector<Mono>(legs.size()), Scalar::one(t.f_));
    for (size_t i = 0; i < legs.size(); ++i) {
        Tensor n(t.f_, t.arity_);
        for (const auto& [key, s] : t.terms_)
            for (const auto& [m, c] : legs[i].terms()) {
                auto k2 = key;
                k2[i] = m;
                n.add(k2, s * c);
            }
        t = std::move(n);
    }
    return t;
}

void Tensor::add(const std::vector<Mono>& key, const Scalar& s) {
    if (s.isZero(0.0)) return;
    auto it = terms_.find(key);
    if (it == terms_.end()) {
        terms_.emplace(key, s);
        return;
    }
    it->second += s;
    if (it->second.isZero(0.0)) terms_.erase(it);
}

Tensor Tensor::operator+(const Tensor& o) const {
    Tensor r = *this;
    for (const auto& [k, s] : o.terms_) r.add(k, s);
    return r;
}

Tensor Tensor::scaled(const Scalar& s) const {
    Tensor r(f_, arity_);
    for (const auto& [k, c] : terms_) r.add(k, c * s);
    return r;
}

Tensor Tensor::operator-(const Tensor& o) const { return *this + o.scaled(-Scalar::one(f_)); }

Tensor Tensor::operator*(const Tensor& o) const {
    Tensor r(f_, arity_);
    for (const auto& [k1, s1] : terms_)
        for (const auto& [k2, s2] : o.terms_) {
            // legwise products, expanded
            std::vector<std::pair<std::vector<Mono>, Scalar>> acc{{{}, s1 * s2}};
            for (int i = 0; i < arity_; ++i) {
                PBWElement p = multiplyMono(f_, k1[i], k2[i]);
                std::vector<std::pair<std::vector<Mono>, Scalar>> next;
                for (const auto& [pre, c] : acc)
                    for (const auto& [m, s] : p.terms()) {
                        auto key = pre;
                        key.push_back(m);
                        next.emplace_back(std::move(key), c * s);
                    }
                acc = std::move(next);
            }
            for (const auto& [k, c] : acc) r.add(k, c);
        }
    return r;
}

bool Tensor::operator==(const Tensor& o) const {
    if (arity_ != o.arity_ || terms_.size() != o.terms_.size()) return false;
    auto it = o.terms_.begin();
    for (const auto& [k, s] : terms_) {
        if (k != it->first || !s.equals(it->second)) return false;
        ++it;
    }
    return true;
}

// ---------------------------------------------------------------- Hopf structure

namespace {

struct MonoKey {
    std::string field;
    Mono m;
    auto operator<=>(const MonoKey&) const = default;
};

std::map<MonoKey, Tensor> gCoproductMemo;

Tensor coproductMono(const Field& f, const Mono& m) {
    MonoKey key{f.key(), m};
    {
        std::lock_guard<std::mutex> lk(gMemoMutex);
        auto it = gCoproductMemo.find(key);
        if (it != gCoproductMemo.end()) return it->second;
    }
    Tensor r = Tensor::pure({PBWElement::one(f), PBWElement::one(f)});
    Tensor dE = Tensor::pure({PBWElement::E(f), PBWElement::K(f)}) +
                Tensor::pure({PBWElement::one(f), PBWElement::E(f)});
    Tensor dF = Tensor::pure({PBWElement::F(f), PBWElement::one(f)}) +
                Tensor::pure({PBWElement::K(f, -1), PBWElement::F(f)});
    Tensor dK = Tensor::pure({PBWElement::K(f, m.b), PBWElement::K(f, m.b)});
    for (int i = 0; i < m.a; ++i) r = r * dF;
    r = r * dK;
    for (int i = 0; i < m.c; ++i) r = r * dE;
    std::lock_guard<std::mutex> lk(gMemoMutex);
    gCoproductMemo.emplace(key, r);
    return r;
}

PBWElement mapMonoAnti(const Field& f, const Mono& m, const PBWElement& e, const PBWElement& fimg,
                       const PBWElement& kimg) {
    // image of F^a K^b E^c under an anti-homomorphism: img(E)^c img(K)^b img(F)^a
    PBWElement r = PBWElement::one(f);
    for (int i = 0; i < m.c; ++i) r = r * e;
    r = r * kimg.pow(m.b < 0 ? 0 : m.b);
    if (m.b < 0) {
        // img(K^-1) = img(K)^-1 for the maps used here (img(K) is a monomial K^{±1})
        const auto& [km, ks] = *kimg.terms().begin();
        PBWElement kinv = PBWElement::monomial(f, {0, -km.b, 0}, ks.inv());
        r = r * kinv.pow(-m.b);
    }
    for (int i = 0; i < m.a; ++i) r = r * fimg;
    return r;
}

}  // namespace

Tensor coproduct(const PBWElement& x) {
    Tensor r(x.field(), 2);
    for (const auto& [m, s] : x.terms()) r = r + coproductMono(x.field(), m).scaled(s);
    return r;
}

Tensor coproductLeg(const Tensor& t, int leg) {
    Tensor r(t.field(), t.arity() + 1);
    for (const auto& [key, s] : t.terms()) {
        Tensor d = coproductMono(t.field(), key[leg]);
        for (const auto& [dk, ds] : d.terms()) {
            std::vector<Mono> k2;
            for (int i = 0; i < t.arity(); ++i) {
                if (i == leg) {
                    k2.push_back(dk[0]);
                    k2.push_back(dk[1]);
                } else {
                    k2.push_back(key[i]);
                }
            }
            r.add(k2, s * ds);
        }
    }
    return r;
}

Scalar counit(const PBWElement& x) {
    Scalar r = Scalar::zero(x.field());
    for (const auto& [m, s] : x.terms())
        if (m.a == 0 && m.c == 0) r += s;
    return r;
}

Tensor counitLeg(const Tensor& t, int leg) {
    Tensor r(t.field(), t.arity() - 1);
    for (const auto& [key, s] : t.terms()) {
        const Mono& m = key[leg];
        if (m.a != 0 || m.c != 0) continue;
        std::vector<Mono> k2;
        for (int i = 0; i < t.arity(); ++i)
            if (i != leg) k2.push_back(key[i]);
        r.add(k2, s);
    }
    return r;
}

PBWElement antipode(const PBWElement& x) {
    const Field& f = x.field();
    PBWElement sE = -(PBWElement::E(f) * PBWElement::K(f, -1));
    PBWElement sF = -(PBWElement::K(f) * PBWElement::F(f));
    PBWElement sK = PBWElement::K(f, -1);
    PBWElement r(f);
    for (const auto& [m, s] : x.terms()) r = r + mapMonoAnti(f, m, sE, sF, sK).scaled(s);
    return r;
}

PBWElement antipodeInverse(const PBWElement& x) {
    const Field& f = x.field();
    PBWElement sE = -(PBWElement::K(f, -1) * PBWElement::E(f));
    PBWElement sF = -(PBWElement::F(f) * PBWElement::K(f));
    PBWElement sK = PBWElement::K(f, -1);
    PBWElement r(f);
    for (const auto& [m, s] : x.terms()) r = r + mapMonoAnti(f, m, sE, sF, sK).scaled(s);
    return r;
}

PBWElement star(const PBWElement& x) {
    const Field& f = x.field();
    PBWElement sE = PBWElement::K(f) * PBWElement::F(f);
    PBWElement sF = PBWElement::E(f) * PBWElement::K(f, -1);
    PBWElement sK = PBWElement::K(f);
    PBWElement r(f);
    for (const auto& [m, s] : x.terms()) r = r + mapMonoAnti(f, m, sE, sF, sK).scaled(s.conj());
    return r;
}

PBWElement multiplyLegs(const Tensor& t, LegMap left, LegMap right) {
    if (t.arity() != 2) throw std::logic_error("multiplyLegs expects a 2-tensor");
    const Field& f = t.field();
    PBWElement r(f);
    for (const auto& [key, s] : t.terms()) {
        PBWElement x = PBWElement::monomial(f, key[0]);
        PBWElement y = PBWElement::monomial(f, key[1]);
        if (left == LegMap::S) x = antipode(x);
        if (right == LegMap::S) y = antipode(y);
        r = r + (x * y).scaled(s);
    }
    return r;
}

}  // namespace qgw
