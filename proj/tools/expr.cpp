#include "expr.hpp"

#include <cctype>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qgw::cli {

namespace {

class Parser {
public:
    Parser(const Field& f, const std::string& s) : f_(f), s_(s) {}

    PWFunction run() {
        PWFunction r = expr();
        skip();
        if (p_ != s_.size()) fail("unexpected '" + std::string(1, s_[p_]) + "'");
        return r;
    }

private:
    const Field& f_;
    const std::string& s_;
    size_t p_ = 0;

    [[noreturn]] void fail(const std::string& what) const {
        throw std::invalid_argument("parse error at " + std::to_string(p_) + ": " + what);
    }

    void skip() {
        while (p_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[p_]))) ++p_;
    }
    bool eat(char c) {
        skip();
        if (p_ < s_.size() && s_[p_] == c) {
            ++p_;
            return true;
        }
        return false;
    }
    bool startsAtom() {
        skip();
        if (p_ >= s_.size()) return false;
        char c = s_[p_];
        return std::isalnum(static_cast<unsigned char>(c)) || c == '(' || c == '.';
    }

    PWFunction scalar(const Scalar& c) const { return PWFunction::unit(f_).scaled(c); }

    bool isScalar(const PWFunction& a) const {
        for (const auto& [t, m] : a.components())
            if (t != 0 && !m.isZero(0.0)) return false;
        return true;
    }
    Scalar scalarValue(const PWFunction& a) const { return a.at(HalfInt(0))(0, 0); }

    PWFunction expr() {
        PWFunction r(f_);
        bool neg = false;
        if (eat('-')) neg = true;
        else eat('+');
        PWFunction t = term();
        r = neg ? -t : t;
        for (;;) {
            if (eat('+')) r = r + term();
            else if (eat('-')) r = r - term();
            else return r;
        }
    }

    PWFunction term() {
        PWFunction r = power();
        for (;;) {
            if (eat('*')) {
                r = pwMultiply(r, power());
            } else if (eat('/')) {
                PWFunction d = power();
                if (!isScalar(d)) fail("division by a non-scalar");
                r = r.scaled(scalarValue(d).inv());
            } else if (startsAtom()) {
                r = pwMultiply(r, power());
            } else {
                return r;
            }
        }
    }

    PWFunction power() {
        if (eat('-')) return -power();
        PWFunction a = atom();
        while (eat('^')) {
            if (eat('*')) {
                a = pwStar(a);
                continue;
            }
            bool neg = eat('-');
            skip();
            int n = integer();
            if (neg) {
                if (!isScalar(a)) fail("negative power of a non-scalar");
                a = scalar(scalarValue(a).inv());
            }
            PWFunction r = PWFunction::unit(f_);
            for (int k = 0; k < n; ++k) r = pwMultiply(r, a);
            a = r;
        }
        return a;
    }

    int integer() {
        size_t start = p_;
        while (p_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[p_]))) ++p_;
        if (start == p_) fail("expected an integer");
        return std::stoi(s_.substr(start, p_ - start));
    }

    std::string token() {
        skip();
        size_t start = p_;
        while (p_ < s_.size() && s_[p_] != ',' && s_[p_] != ')') ++p_;
        std::string t = s_.substr(start, p_ - start);
        while (!t.empty() && std::isspace(static_cast<unsigned char>(t.back()))) t.pop_back();
        return t;
    }

    PWFunction atom() {
        skip();
        if (p_ >= s_.size()) fail("unexpected end of input");
        if (eat('(')) {
            PWFunction r = expr();
            if (!eat(')')) fail("expected ')'");
            return r;
        }
        char c = s_[p_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            size_t start = p_;
            while (p_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[p_])) || s_[p_] == '.')) ++p_;
            std::string num = s_.substr(start, p_ - start);
            if (num.find('.') == std::string::npos) return scalar(Scalar::rational(f_, mpq_class(num)));
            if (f_.exact) fail("decimal literal in exact mode");
            return scalar(Scalar(f_, cplx(std::stod(num), 0)));
        }
        if (!std::isalpha(static_cast<unsigned char>(c))) fail("unexpected '" + std::string(1, c) + "'");
        size_t start = p_;
        while (p_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[p_]))) ++p_;
        std::string id = s_.substr(start, p_ - start);
        if (id == "alpha") return alpha(f_);
        if (id == "beta") return beta(f_);
        if (id == "gamma") return gamma(f_);
        if (id == "delta") return delta(f_);
        if (id == "q") return scalar(Scalar::vpow(f_, 2));
        if (id == "v") return scalar(Scalar::vpow(f_, 1));
        if (id == "i") {
            if (f_.exact) fail("'i' needs numeric mode");
            return scalar(Scalar(f_, cplx(0, 1)));
        }
        if (id == "u") {
            if (!eat('(')) fail("expected '(' after u");
            HalfInt m = HalfInt::parse(token());
            if (!eat(',')) fail("expected ','");
            int i = std::stoi(token());
            if (!eat(',')) fail("expected ','");
            int j = std::stoi(token());
            if (!eat(')')) fail("expected ')'");
            if (m.twice() < 0 || i < 0 || j < 0 || i > m.twice() || j > m.twice()) fail("u(m,i,j) index out of range");
            return PWFunction::coefficient(f_, m, i, j);
        }
        fail("unknown identifier '" + id + "'");
    }
};

}  // namespace

PWFunction parsePW(const Field& f, const std::string& text) { return Parser(f, text).run(); }

Scalar parseScalar(const Field& f, const std::string& text) {
    PWFunction a = parsePW(f, text);
    for (const auto& [t, m] : a.components())
        if (t != 0 && !m.isZero(0.0)) throw std::invalid_argument("not a scalar: " + text);
    return a.at(HalfInt(0))(0, 0);
}

cplx parseComplex(const std::string& text, double q) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    double scale = 1;
    const std::string suffix = "/hbar";
    if (s.size() > suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0) {
        scale = 2 * std::numbers::pi / std::log(q);
        s.resize(s.size() - suffix.size());
    }
    cplx z = 0;
    size_t p = 0;
    if (s.empty()) throw std::invalid_argument("empty complex number");
    while (p < s.size()) {
        size_t used = 0;
        double x = 1;
        size_t start = p;
        if (s[p] == '+' || s[p] == '-') ++p;
        if (p < s.size() && s[p] == 'i') {
            x = s[start] == '-' ? -1 : 1;
            z += cplx(0, x);
            ++p;
            continue;
        }
        x = std::stod(s.substr(start), &used);
        p = start + used;
        if (p < s.size() && s[p] == 'i') {
            z += cplx(0, x);
            ++p;
        } else {
            z += cplx(x, 0);
        }
    }
    return z * scale;
}

double parseReal(const std::string& text) {
    auto slash = text.find('/');
    size_t used = 0;
    if (slash == std::string::npos) {
        double x = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument("bad number: " + text);
        return x;
    }
    double a = std::stod(text.substr(0, slash)), b = std::stod(text.substr(slash + 1));
    if (b == 0) throw std::invalid_argument("zero denominator: " + text);
    return a / b;
}

}  // namespace qgw::cli
