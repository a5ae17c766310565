#pragma once

#include "qgw/scalar.hpp"

#include <vector>

namespace qgw {

/// Dense row-major matrix over Scalar.
class Mat {
public:
    Mat() = default;
    Mat(const Field& f, int rows, int cols);

    static Mat identity(const Field& f, int n);
    static Mat unit(const Field& f, int rows, int cols, int i, int j);

    int rows() const { return r_; }
    int cols() const { return c_; }
    const Field& field() const { return f_; }

    Scalar& operator()(int i, int j) { return a_[static_cast<size_t>(i) * c_ + j]; }
    const Scalar& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * c_ + j]; }

    Mat operator+(const Mat& o) const;
    Mat operator-(const Mat& o) const;
    Mat operator*(const Mat& o) const;
    Mat operator-() const;
    Mat scaled(const Scalar& s) const;
    Mat& operator+=(const Mat& o);

    Mat transpose() const;
    Mat conj() const;
    Mat adjoint() const { return conj().transpose(); }
    Mat kron(const Mat& o) const;
    Mat block(int r0, int c0, int nr, int nc) const;
    void setBlock(int r0, int c0, const Mat& b);
    Scalar trace() const;

    bool isZero(double tol = kDefaultTol) const;
    bool equals(const Mat& o, double tol = kDefaultTol) const;
    /// Largest entry magnitude of this - o (numeric); 0 or 1 in exact mode.
    double distance(const Mat& o) const;
    double maxAbs() const;

    Mat toNumeric(double q) const;

private:
    Field f_;
    int r_ = 0, c_ = 0;
    std::vector<Scalar> a_;
};

/// Reduced row echelon form; returns pivot columns. Leading entries are 1.
std::vector<int> rref(Mat& m, double tol = 1e-10);
int rank(const Mat& m, double tol = 1e-10);
/// Columns form a basis of the kernel, each normalized to RREF-style
/// (coefficient 1 at its free variable).
Mat kernel(const Mat& m, double tol = 1e-10);
Mat inverse(const Mat& m, double tol = 1e-12);
/// Solve A X = B for square invertible A.
Mat solve(const Mat& a, const Mat& b, double tol = 1e-12);

}  // namespace qgw
