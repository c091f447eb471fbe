#include "isl/manifold.hpp"

#include <cmath>
#include <string>

namespace isl {

double poly_eval(const Polynomial& p, const Vec& x) {
    double s = 0.0;
    for (const Monomial& t : p) {
        double v = t.coeff;
        for (std::size_t i = 0; i < t.exps.size(); ++i) {
            for (int e = 0; e < t.exps[i]; ++e) v *= x[i];
        }
        s += v;
    }
    return s;
}

Vec poly_gradient(const Polynomial& p, const Vec& x) {
    Vec g(x.size());
    for (const Monomial& t : p) {
        for (std::size_t i = 0; i < t.exps.size(); ++i) {
            const int e = t.exps[i];
            if (e == 0) continue;
            double v = t.coeff * e;
            for (std::size_t k = 0; k < t.exps.size(); ++k) {
                int reps = t.exps[k] - (k == i ? 1 : 0);
                for (int r = 0; r < reps; ++r) v *= x[k];
            }
            g[i] += v;
        }
    }
    return g;
}

Polynomial sphere_polynomial(int m, double radius) {
    return block_sphere_polynomial(m, 0, m, radius);
}

Polynomial block_sphere_polynomial(int m, int first, int count, double radius) {
    Polynomial p;
    for (int i = first; i < first + count; ++i) {
        Monomial t;
        t.coeff = 1.0;
        t.exps.assign(m, 0);
        t.exps[i] = 2;
        p.push_back(std::move(t));
    }
    Monomial c;
    c.coeff = -radius * radius;
    c.exps.assign(m, 0);
    p.push_back(std::move(c));
    return p;
}

ImplicitSubmanifold ImplicitSubmanifold::sphere(int m, double radius) {
    if (m < 2 || radius <= 0.0) throw InvalidParamsError("sphere requires m >= 2, R > 0");
    ImplicitSubmanifold M(ManifoldKind::Sphere, m, {sphere_polynomial(m, radius)});
    M.radius_ = radius;
    return M;
}

ImplicitSubmanifold ImplicitSubmanifold::product_spheres(int p, double r1, double r2) {
    if (p < 2 || r1 <= 0.0 || r2 <= 0.0)
        throw InvalidParamsError("product_spheres requires p >= 2, r1 > 0, r2 > 0");
    const int m = 2 * p;
    std::vector<Polynomial> cs;
    cs.push_back(block_sphere_polynomial(m, 0, p, r1));
    cs.push_back(block_sphere_polynomial(m, p, p, r2));
    ImplicitSubmanifold M(ManifoldKind::ProductSpheres, m, std::move(cs));
    M.r1_ = r1;
    M.r2_ = r2;
    M.block_ = p;
    return M;
}

ImplicitSubmanifold ImplicitSubmanifold::custom(int m, std::vector<Polynomial> constraints) {
    if (constraints.empty()) throw InvalidParamsError("custom manifold needs constraints");
    if (m < static_cast<int>(constraints.size()) + 1)
        throw InvalidParamsError("ambient dimension must exceed codimension");
    for (const auto& p : constraints)
        for (const auto& t : p)
            if (static_cast<int>(t.exps.size()) != m)
                throw InvalidParamsError("monomial exponent list must have length m");
    return ImplicitSubmanifold(ManifoldKind::CustomImplicit, m, std::move(constraints));
}

Vec ImplicitSubmanifold::constraint(const Vec& x) const {
    if (static_cast<int>(x.size()) != m_) throw DimensionError("constraint: wrong dimension");
    Vec f(constraints_.size());
    for (std::size_t i = 0; i < constraints_.size(); ++i) f[i] = poly_eval(constraints_[i], x);
    return f;
}

Mat ImplicitSubmanifold::jacobian(const Vec& x) const {
    if (static_cast<int>(x.size()) != m_) throw DimensionError("jacobian: wrong dimension");
    Mat j(constraints_.size(), m_);
    for (std::size_t i = 0; i < constraints_.size(); ++i)
        j.set_row(i, poly_gradient(constraints_[i], x));
    return j;
}

bool ImplicitSubmanifold::on_manifold(const Vec& x, double tol) const {
    return max_abs(constraint(x)) <= tol;
}

void ImplicitSubmanifold::require_on_manifold(const Vec& x, double tol) const {
    if (!on_manifold(x, tol))
        throw NotOnManifoldError("point off manifold, |F| = " +
                                 std::to_string(max_abs(constraint(x))));
}

PointFrame frames_at(const ImplicitSubmanifold& M, const Vec& x) {
    M.require_on_manifold(x);
    PointFrame f;
    f.x = x;

    std::vector<Vec> normals;
    if (M.kind() == ManifoldKind::Sphere) {
        normals.push_back(x * (1.0 / M.radius()));
    } else if (M.kind() == ManifoldKind::ProductSpheres) {
        // Analytic orthonormal pair, radial direction first so that the
        // induced a-matrix carries the (+2, -2) sigma pattern on its
        // diagonal. The second vector points along the first factor and
        // against the second.
        const int p = M.block();
        const double r1 = M.r1(), r2 = M.r2();
        const double s = std::sqrt(r1 * r1 + r2 * r2);
        Vec radial(2 * p), shear(2 * p);
        for (int i = 0; i < p; ++i) {
            radial[i] = x[i] / s;
            radial[p + i] = x[p + i] / s;
            shear[i] = (r2 / r1) * x[i] / s;
            shear[p + i] = -(r1 / r2) * x[p + i] / s;
        }
        normals.push_back(radial);
        normals.push_back(shear);
    } else {
        Mat j = M.jacobian(x);
        std::vector<Vec> rows;
        for (std::size_t i = 0; i < j.rows(); ++i) rows.push_back(j.row(i));
        normals = orthonormalize(rows);
    }
    f.N = Mat::from_cols(normals, x.size());
    f.T = Mat::from_cols(nullspace_basis(M.jacobian(x)), x.size());
    return f;
}

SplitVector split_vector(const PointFrame& f, const Vec& v) {
    if (v.size() != f.x.size()) throw DimensionError("split_vector: wrong dimension");
    SplitVector out;
    out.tangential = transpose(f.T) * v;
    out.normal = transpose(f.N) * v;
    return out;
}

Vec retract(const ImplicitSubmanifold& M, const Vec& x0) {
    return newton_retract([&](const Vec& y) { return M.constraint(y); },
                          [&](const Vec& y) { return M.jacobian(y); }, x0);
}

Vec curve_point_dir(const ImplicitSubmanifold& M, const Vec& x, const Vec& direction,
                    double t) {
    return retract(M, x + direction * t);
}

Vec curve_point(const ImplicitSubmanifold& M, const PointFrame& f, const Vec& tangent_coords,
                double t) {
    return curve_point_dir(M, f.x, f.T * tangent_coords, t);
}

Mat tangent_projector(const ImplicitSubmanifold& M, const Vec& x) {
    PointFrame f = frames_at(M, x);
    Mat pi = Mat::identity(x.size());
    for (int a = 0; a < f.r(); ++a) {
        Vec na = f.N.col(a);
        pi -= outer(na, na);
    }
    return pi;
}

Vec project_tangent(const ImplicitSubmanifold& M, const Vec& x, const Vec& v) {
    PointFrame f = frames_at(M, x);
    Vec out = v;
    for (int a = 0; a < f.r(); ++a) {
        Vec na = f.N.col(a);
        out -= na * dot(na, v);
    }
    return out;
}

double GaussianStream::next_uniform() {
    // splitmix64 step; top 53 bits as a double in (0,1).
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    z ^= z >> 31;
    const double u = (static_cast<double>(z >> 11) + 0.5) * (1.0 / 9007199254740992.0);
    return u;
}

double GaussianStream::next() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    const double u1 = next_uniform();
    const double u2 = next_uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * 3.14159265358979323846 * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
}

Vec GaussianStream::next_vec(int n) {
    Vec v(n);
    for (int i = 0; i < n; ++i) v[i] = next();
    return v;
}

std::vector<Vec> sample_points(const ImplicitSubmanifold& M, int count, std::uint64_t seed) {
    if (count < 1) throw InvalidParamsError("sample count must be >= 1");
    GaussianStream g(seed);
    std::vector<Vec> pts;
    pts.reserve(count);
    int attempts = 0;
    while (static_cast<int>(pts.size()) < count) {
        if (++attempts > 100 * count)
            throw NoConvergenceError("sampling failed to land on the manifold");
        Vec raw = g.next_vec(M.ambient_dim());
        try {
            pts.push_back(retract(M, raw));
        } catch (const Error&) {
            // outside the retraction basin; draw again
        }
    }
    return pts;
}

} // namespace isl
