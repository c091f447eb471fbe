#include "isl/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace isl {

namespace {

void require_same_size(const Vec& a, const Vec& b) {
    if (a.size() != b.size())
        throw DimensionError("vector size mismatch: " + std::to_string(a.size()) + " vs " +
                             std::to_string(b.size()));
}

void require_same_shape(const Mat& a, const Mat& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionError("matrix shape mismatch");
}

} // namespace

Vec& Vec::operator+=(const Vec& o) {
    require_same_size(*this, o);
    for (std::size_t i = 0; i < size(); ++i) d_[i] += o[i];
    return *this;
}

Vec& Vec::operator-=(const Vec& o) {
    require_same_size(*this, o);
    for (std::size_t i = 0; i < size(); ++i) d_[i] -= o[i];
    return *this;
}

Vec& Vec::operator*=(double s) {
    for (auto& x : d_) x *= s;
    return *this;
}

Vec operator+(Vec a, const Vec& b) { return a += b; }
Vec operator-(Vec a, const Vec& b) { return a -= b; }
Vec operator*(Vec a, double s) { return a *= s; }
Vec operator*(double s, Vec a) { return a *= s; }
Vec operator-(Vec a) { return a *= -1.0; }

double dot(const Vec& a, const Vec& b) {
    require_same_size(a, b);
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm(const Vec& v) { return std::sqrt(dot(v, v)); }

double max_abs(const Vec& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

bool is_finite(const Vec& v) {
    for (double x : v)
        if (!std::isfinite(x)) return false;
    return true;
}

Mat Mat::identity(std::size_t n) {
    Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Mat Mat::from_cols(const std::vector<Vec>& cols, std::size_t rows_if_empty) {
    if (cols.empty()) return Mat(rows_if_empty, 0);
    Mat m(cols.front().size(), cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) m.set_col(j, cols[j]);
    return m;
}

Mat Mat::from_rows(const std::vector<Vec>& rows, std::size_t cols_if_empty) {
    if (rows.empty()) return Mat(0, cols_if_empty);
    Mat m(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) m.set_row(i, rows[i]);
    return m;
}

Vec Mat::row(std::size_t i) const {
    Vec v(cols_);
    for (std::size_t j = 0; j < cols_; ++j) v[j] = (*this)(i, j);
    return v;
}

Vec Mat::col(std::size_t j) const {
    Vec v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
}

void Mat::set_row(std::size_t i, const Vec& v) {
    if (v.size() != cols_) throw DimensionError("set_row size mismatch");
    for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = v[j];
}

void Mat::set_col(std::size_t j, const Vec& v) {
    if (v.size() != rows_) throw DimensionError("set_col size mismatch");
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

Mat& Mat::operator+=(const Mat& o) {
    require_same_shape(*this, o);
    for (std::size_t i = 0; i < d_.size(); ++i) d_[i] += o.d_[i];
    return *this;
}

Mat& Mat::operator-=(const Mat& o) {
    require_same_shape(*this, o);
    for (std::size_t i = 0; i < d_.size(); ++i) d_[i] -= o.d_[i];
    return *this;
}

Mat& Mat::operator*=(double s) {
    for (auto& x : d_) x *= s;
    return *this;
}

Mat operator+(Mat a, const Mat& b) { return a += b; }
Mat operator-(Mat a, const Mat& b) { return a -= b; }
Mat operator*(Mat a, double s) { return a *= s; }
Mat operator*(double s, Mat a) { return a *= s; }

Mat operator*(const Mat& a, const Mat& b) {
    if (a.cols() != b.rows()) throw DimensionError("matrix product shape mismatch");
    Mat c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

Vec operator*(const Mat& a, const Vec& v) {
    if (a.cols() != v.size()) throw DimensionError("matrix-vector shape mismatch");
    Vec r(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * v[j];
        r[i] = s;
    }
    return r;
}

Mat transpose(const Mat& a) {
    Mat t(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
    return t;
}

double max_abs(const Mat& a) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) m = std::max(m, std::abs(a(i, j)));
    return m;
}

double trace(const Mat& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < std::min(a.rows(), a.cols()); ++i) s += a(i, i);
    return s;
}

bool is_finite(const Mat& a) {
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (!std::isfinite(a(i, j))) return false;
    return true;
}

Mat outer(const Vec& a, const Vec& b) {
    Mat m(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) m(i, j) = a[i] * b[j];
    return m;
}

Vec solve(Mat a, Vec b, double pivot_tol) {
    if (a.rows() != a.cols() || a.rows() != b.size())
        throw DimensionError("solve expects square system");
    const std::size_t n = a.rows();
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;

    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::abs(a(i, k)) > std::abs(a(piv, k))) piv = i;
        if (piv != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
            std::swap(b[k], b[piv]);
        }
        if (std::abs(a(k, k)) < pivot_tol)
            throw RankDeficientError("singular system: pivot " + std::to_string(a(k, k)));
        for (std::size_t i = k + 1; i < n; ++i) {
            const double f = a(i, k) / a(k, k);
            if (f == 0.0) continue;
            for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
            b[i] -= f * b[k];
        }
    }
    Vec x(n);
    for (std::size_t ii = n; ii-- > 0;) {
        double s = b[ii];
        for (std::size_t j = ii + 1; j < n; ++j) s -= a(ii, j) * x[j];
        x[ii] = s / a(ii, ii);
    }
    if (!is_finite(x)) throw NumericError("non-finite solution");
    return x;
}

double determinant(Mat a) {
    if (a.rows() != a.cols()) throw DimensionError("determinant expects square matrix");
    const std::size_t n = a.rows();
    double det = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::abs(a(i, k)) > std::abs(a(piv, k))) piv = i;
        if (piv != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
            det = -det;
        }
        if (a(k, k) == 0.0) return 0.0;
        det *= a(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            const double f = a(i, k) / a(k, k);
            for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
        }
    }
    return det;
}

SymEigen sym_eigen(Mat a) {
    if (a.rows() != a.cols()) throw DimensionError("sym_eigen expects square matrix");
    const std::size_t n = a.rows();
    Mat v = Mat::identity(n);
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
        if (off < 1e-28) break;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                if (std::abs(a(p, q)) < 1e-300) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
    }
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t i, std::size_t j) { return a(i, i) > a(j, j); });
    SymEigen out;
    out.values = Vec(n);
    out.vectors = Mat(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        out.values[j] = a(order[j], order[j]);
        out.vectors.set_col(j, v.col(order[j]));
    }
    return out;
}

namespace {

// Eliminates the components of v along the unit vectors in basis, twice.
Vec eliminate(Vec v, const std::vector<Vec>& basis) {
    for (int pass = 0; pass < 2; ++pass)
        for (const Vec& q : basis) v -= q * dot(q, v);
    return v;
}

void make_first_nonzero_positive(Vec& v) {
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (std::abs(v[i]) > 1e-9) {
            if (v[i] < 0) v *= -1.0;
            return;
        }
    }
}

} // namespace

std::vector<Vec> orthonormalize(const std::vector<Vec>& vectors, double rank_tol) {
    std::vector<Vec> q;
    q.reserve(vectors.size());
    for (const Vec& v : vectors) {
        if (!is_finite(v)) throw NumericError("non-finite input vector");
        Vec w = eliminate(v, q);
        const double r = norm(w);
        if (r < rank_tol)
            throw RankDeficientError("dependent vector in orthonormalize, residual " +
                                     std::to_string(r));
        q.push_back(w * (1.0 / r));
    }
    return q;
}

SplitBasis split_space(const std::vector<Vec>& spanning, std::size_t ambient_dim,
                       double rank_tol) {
    SplitBasis out;
    for (const Vec& v : spanning) {
        if (v.size() != ambient_dim) throw DimensionError("split_space dimension mismatch");
        Vec w = eliminate(v, out.span);
        const double r = norm(w);
        if (r >= rank_tol) out.span.push_back(w * (1.0 / r));
    }
    // Fill the complement from standard basis vectors in coordinate order.
    const std::size_t want = ambient_dim - out.span.size();
    std::vector<Vec> all = out.span;
    for (std::size_t i = 0; i < ambient_dim && out.complement.size() < want; ++i) {
        Vec e(ambient_dim);
        e[i] = 1.0;
        Vec w = eliminate(e, all);
        const double r = norm(w);
        if (r >= 1e-8) {
            Vec q = w * (1.0 / r);
            make_first_nonzero_positive(q);
            out.complement.push_back(q);
            all.push_back(q);
        }
    }
    if (out.complement.size() != want)
        throw RankDeficientError("complement construction incomplete");
    return out;
}

std::vector<Vec> nullspace_basis(const Mat& j, double rank_tol) {
    std::vector<Vec> rows;
    rows.reserve(j.rows());
    for (std::size_t i = 0; i < j.rows(); ++i) rows.push_back(j.row(i));
    // Full row rank is part of the contract.
    orthonormalize(rows, rank_tol);
    return split_space(rows, j.cols(), rank_tol).complement;
}

} // namespace isl
