#include "qgw/matrix.hpp"

#include <algorithm>
#include <stdexcept>

namespace qgw {

Mat::Mat(const Field& f, int rows, int cols)
    : f_(f), r_(rows), c_(cols), a_(static_cast<size_t>(rows) * cols, Scalar::zero(f)) {}

Mat Mat::identity(const Field& f, int n) {
    Mat m(f, n, n);
    for (int i = 0; i < n; ++i) m(i, i) = Scalar::one(f);
    return m;
}

Mat Mat::unit(const Field& f, int rows, int cols, int i, int j) {
    Mat m(f, rows, cols);
    m(i, j) = Scalar::one(f);
    return m;
}

Mat Mat::operator+(const Mat& o) const {
    Mat r = *this;
    r += o;
    return r;
}

Mat& Mat::operator+=(const Mat& o) {
    if (r_ != o.r_ || c_ != o.c_) throw std::logic_error("matrix shape mismatch in +");
    for (size_t k = 0; k < a_.size(); ++k)
        if (!o.a_[k].isZero(0.0)) a_[k] += o.a_[k];
    return *this;
}

Mat Mat::operator-(const Mat& o) const { return *this + (-o); }

Mat Mat::operator-() const {
    Mat r = *this;
    for (auto& x : r.a_) x = -x;
    return r;
}

Mat Mat::operator*(const Mat& o) const {
    if (c_ != o.r_) throw std::logic_error("matrix shape mismatch in *");
    Mat r(f_, r_, o.c_);
    for (int i = 0; i < r_; ++i)
        for (int k = 0; k < c_; ++k) {
            const Scalar& x = (*this)(i, k);
            if (x.isZero(0.0)) continue;
            for (int j = 0; j < o.c_; ++j) {
                const Scalar& y = o(k, j);
                if (y.isZero(0.0)) continue;
                r(i, j) += x * y;
            }
        }
    return r;
}

Mat Mat::scaled(const Scalar& s) const {
    Mat r = *this;
    for (auto& x : r.a_)
        if (!x.isZero(0.0)) x = x * s;
    return r;
}

Mat Mat::transpose() const {
    Mat r(f_, c_, r_);
    for (int i = 0; i < r_; ++i)
        for (int j = 0; j < c_; ++j) r(j, i) = (*this)(i, j);
    return r;
}

Mat Mat::conj() const {
    if (f_.exact) return *this;
    Mat r = *this;
    for (auto& x : r.a_) x = x.conj();
    return r;
}

Mat Mat::kron(const Mat& o) const {
    Mat r(f_, r_ * o.r_, c_ * o.c_);
    for (int i = 0; i < r_; ++i)
        for (int j = 0; j < c_; ++j) {
            const Scalar& x = (*this)(i, j);
            if (x.isZero(0.0)) continue;
            for (int k = 0; k < o.r_; ++k)
                for (int l = 0; l < o.c_; ++l) {
                    const Scalar& y = o(k, l);
                    if (y.isZero(0.0)) continue;
                    r(i * o.r_ + k, j * o.c_ + l) = x * y;
                }
        }
    return r;
}

Mat Mat::block(int r0, int c0, int nr, int nc) const {
    Mat r(f_, nr, nc);
    for (int i = 0; i < nr; ++i)
        for (int j = 0; j < nc; ++j) r(i, j) = (*this)(r0 + i, c0 + j);
    return r;
}

void Mat::setBlock(int r0, int c0, const Mat& b) {
    for (int i = 0; i < b.rows(); ++i)
        for (int j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
}

Scalar Mat::trace() const {
    Scalar t = Scalar::zero(f_);
    for (int i = 0; i < std::min(r_, c_); ++i) t += (*this)(i, i);
    return t;
}

bool Mat::isZero(double tol) const {
    for (const auto& x : a_)
        if (!x.isZero(tol)) return false;
    return true;
}

bool Mat::equals(const Mat& o, double tol) const {
    if (r_ != o.r_ || c_ != o.c_) return false;
    for (size_t k = 0; k < a_.size(); ++k)
        if (!a_[k].equals(o.a_[k], tol)) return false;
    return true;
}

double Mat::distance(const Mat& o) const {
    if (r_ != o.r_ || c_ != o.c_) throw std::logic_error("matrix shape mismatch in distance");
    double d = 0;
    for (size_t k = 0; k < a_.size(); ++k) d = std::max(d, (a_[k] - o.a_[k]).magnitude());
    return d;
}

double Mat::maxAbs() const {
    double d = 0;
    for (const auto& x : a_) d = std::max(d, x.magnitude());
    return d;
}

Mat Mat::toNumeric(double q) const {
    Mat r(Field::Numeric(q), r_, c_);
    for (size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k].toNumeric(q);
    return r;
}

std::vector<int> rref(Mat& m, double tol) {
    const bool exact = m.field().exact;
    double scale = exact ? 1.0 : std::max(1.0, m.maxAbs());
    std::vector<int> pivots;
    int row = 0;
    for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
        int best = -1;
        double bestMag = exact ? 0.0 : tol * scale;
        for (int i = row; i < m.rows(); ++i) {
            double mag = m(i, col).magnitude();
            if (exact ? mag > 0 : mag > bestMag) {
                best = i;
                bestMag = mag;
                if (exact) break;
            }
        }
        if (best < 0) {
            if (!exact)
                for (int i = row; i < m.rows(); ++i) m(i, col) = Scalar::zero(m.field());
            continue;
        }
        if (best != row)
            for (int j = 0; j < m.cols(); ++j) std::swap(m(row, j), m(best, j));
        Scalar p = m(row, col).inv();
        for (int j = col; j < m.cols(); ++j)
            if (!m(row, j).isZero(0.0)) m(row, j) = m(row, j) * p;
        for (int i = 0; i < m.rows(); ++i) {
            if (i == row || m(i, col).isZero(0.0)) continue;
            Scalar f = m(i, col);
            for (int j = col; j < m.cols(); ++j)
                if (!m(row, j).isZero(0.0)) m(i, j) = m(i, j) - f * m(row, j);
            m(i, col) = Scalar::zero(m.field());
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

int rank(const Mat& m, double tol) {
    Mat c = m;
    return static_cast<int>(rref(c, tol).size());
}

Mat kernel(const Mat& m, double tol) {
    Mat r = m;
    auto piv = rref(r, tol);
    std::vector<bool> isPivot(m.cols(), false);
    for (int p : piv) isPivot[p] = true;
    std::vector<int> freeCols;
    for (int j = 0; j < m.cols(); ++j)
        if (!isPivot[j]) freeCols.push_back(j);
    Mat k(m.field(), m.cols(), static_cast<int>(freeCols.size()));
    for (size_t t = 0; t < freeCols.size(); ++t) {
        int fc = freeCols[t];
        k(fc, static_cast<int>(t)) = Scalar::one(m.field());
        for (size_t i = 0; i < piv.size(); ++i) k(piv[i], static_cast<int>(t)) = -r(static_cast<int>(i), fc);
    }
    return k;
}

Mat solve(const Mat& a, const Mat& b, double tol) {
    if (a.rows() != a.cols() || a.rows() != b.rows()) throw std::logic_error("solve: shape mismatch");
    int n = a.rows();
    Mat aug(a.field(), n, n + b.cols());
    aug.setBlock(0, 0, a);
    aug.setBlock(0, n, b);
    auto piv = rref(aug, tol);
    if (static_cast<int>(piv.size()) < n || piv[n - 1] != n - 1)
        throw std::domain_error("singular linear system");
    return aug.block(0, n, n, b.cols());
}

Mat inverse(const Mat& m, double tol) { return solve(m, Mat::identity(m.field(), m.rows()), tol); }

}  // namespace qgw
