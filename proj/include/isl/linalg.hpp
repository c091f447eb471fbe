#pragma once
#include <cstddef>
#include <initializer_list>
#include <vector>

#include "isl/errors.hpp"

namespace isl {

// Dense real vector, double precision. Sized at construction.
class Vec {
public:
    Vec() = default;
    explicit Vec(std::size_t n, double fill = 0.0) : d_(n, fill) {}
    Vec(std::initializer_list<double> init) : d_(init) {}

    std::size_t size() const { return d_.size(); }
    double operator[](std::size_t i) const { return d_[i]; }
    double& operator[](std::size_t i) { return d_[i]; }

    const double* data() const { return d_.data(); }
    double* data() { return d_.data(); }
    auto begin() const { return d_.begin(); }
    auto end() const { return d_.end(); }

    Vec& operator+=(const Vec& o);
    Vec& operator-=(const Vec& o);
    Vec& operator*=(double s);

private:
    std::vector<double> d_;
};

Vec operator+(Vec a, const Vec& b);
Vec operator-(Vec a, const Vec& b);
Vec operator*(Vec a, double s);
Vec operator*(double s, Vec a);
Vec operator-(Vec a);

double dot(const Vec& a, const Vec& b);
double norm(const Vec& v);
double max_abs(const Vec& v);
bool is_finite(const Vec& v);

// Dense row-major matrix.
class Mat {
public:
    Mat() = default;
    Mat(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), d_(rows * cols, fill) {}

    static Mat identity(std::size_t n);
    // Builds a matrix whose columns are the given vectors (all of equal size).
    static Mat from_cols(const std::vector<Vec>& cols, std::size_t rows_if_empty = 0);
    static Mat from_rows(const std::vector<Vec>& rows, std::size_t cols_if_empty = 0);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double operator()(std::size_t i, std::size_t j) const { return d_[i * cols_ + j]; }
    double& operator()(std::size_t i, std::size_t j) { return d_[i * cols_ + j]; }

    Vec row(std::size_t i) const;
    Vec col(std::size_t j) const;
    void set_row(std::size_t i, const Vec& v);
    void set_col(std::size_t j, const Vec& v);

    Mat& operator+=(const Mat& o);
    Mat& operator-=(const Mat& o);
    Mat& operator*=(double s);

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<double> d_;
};

Mat operator+(Mat a, const Mat& b);
Mat operator-(Mat a, const Mat& b);
Mat operator*(Mat a, double s);
Mat operator*(double s, Mat a);
Mat operator*(const Mat& a, const Mat& b);
Vec operator*(const Mat& a, const Vec& v);

Mat transpose(const Mat& a);
double max_abs(const Mat& a);
double trace(const Mat& a);
bool is_finite(const Mat& a);
Mat outer(const Vec& a, const Vec& b);

// Solves A x = b by Gaussian elimination with partial pivoting.
// Throws RankDeficientError when a pivot falls below tolerance.
Vec solve(Mat a, Vec b, double pivot_tol = 1e-13);

// Determinant of a small square matrix (same elimination).
double determinant(Mat a);

// Eigen-decomposition of a symmetric matrix by cyclic Jacobi sweeps.
// Returns eigenvalues in descending order; columns of `vectors` match.
struct SymEigen {
    Vec values;
    Mat vectors;
};
SymEigen sym_eigen(Mat a);

// Modified Gram-Schmidt in input order with one re-orthogonalization
// sweep per vector. Throws RankDeficientError when an eliminated
// residual drops below `rank_tol`.
std::vector<Vec> orthonormalize(const std::vector<Vec>& vectors, double rank_tol = 1e-10);

// Orthonormal basis of the nullspace of J (full row rank required).
// Deterministic: the complement of the row space is assembled from the
// standard basis vectors in coordinate order, each normalized with its
// first nonzero component made positive.
std::vector<Vec> nullspace_basis(const Mat& j, double rank_tol = 1e-10);

// Rank-tolerant variant: rows below tolerance are dropped instead of
// throwing. Returns {orthonormal row-space basis, orthonormal complement}.
struct SplitBasis {
    std::vector<Vec> span;
    std::vector<Vec> complement;
};
SplitBasis split_space(const std::vector<Vec>& spanning, std::size_t ambient_dim,
                       double rank_tol = 1e-10);

} // namespace isl
