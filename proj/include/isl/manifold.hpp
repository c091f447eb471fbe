#pragma once
#include <cstdint>
#include <vector>

#include "isl/fd.hpp"
#include "isl/linalg.hpp"

namespace isl {

enum class ManifoldKind { Sphere, ProductSpheres, CustomImplicit };

// Signed monomial with integer exponents, one entry per coordinate.
struct Monomial {
    double coeff = 0.0;
    std::vector<int> exps;
};
// A polynomial constraint is a sum of monomials; the zero set contributes
// one codimension.
using Polynomial = std::vector<Monomial>;

double poly_eval(const Polynomial& p, const Vec& x);
Vec poly_gradient(const Polynomial& p, const Vec& x);
Polynomial sphere_polynomial(int m, double radius);
Polynomial block_sphere_polynomial(int m, int first, int count, double radius);

// Level set F(x) = 0 of codimension r in E^m with analytic Jacobian.
class ImplicitSubmanifold {
public:
    static ImplicitSubmanifold sphere(int m, double radius);
    // Product of two spheres of dimension p-1 embedded in E^{2p}: the
    // leading p coordinates lie on a sphere of radius r1, the trailing p
    // on one of radius r2.
    static ImplicitSubmanifold product_spheres(int p, double r1, double r2);
    static ImplicitSubmanifold custom(int m, std::vector<Polynomial> constraints);

    int ambient_dim() const { return m_; }
    int codim() const { return static_cast<int>(constraints_.size()); }
    int dim() const { return m_ - codim(); }
    ManifoldKind kind() const { return kind_; }
    double radius() const { return radius_; }
    double r1() const { return r1_; }
    double r2() const { return r2_; }
    int block() const { return block_; }
    const std::vector<Polynomial>& constraints() const { return constraints_; }

    Vec constraint(const Vec& x) const;  // F: E^m -> E^r
    Mat jacobian(const Vec& x) const;    // rows are constraint gradients
    bool on_manifold(const Vec& x, double tol = 1e-10) const;
    void require_on_manifold(const Vec& x, double tol = 1e-10) const;

private:
    ImplicitSubmanifold(ManifoldKind kind, int m, std::vector<Polynomial> cs)
        : kind_(kind), m_(m), constraints_(std::move(cs)) {}

    ManifoldKind kind_;
    int m_;
    std::vector<Polynomial> constraints_;
    double radius_ = 0.0, r1_ = 0.0, r2_ = 0.0;
    int block_ = 0;
};

// A point with orthonormal tangent and normal bases (columns of T and N).
struct PointFrame {
    Vec x;
    Mat T;  // m x n
    Mat N;  // m x r
    int n() const { return static_cast<int>(T.cols()); }
    int r() const { return static_cast<int>(N.cols()); }
    int m() const { return static_cast<int>(x.size()); }
};

// Canonical smooth frame at x. The normal basis comes from the constraint
// gradients in declaration order; spheres use the outward radial normal
// and sphere products an analytic pair so that frame fields stay smooth
// under differentiation (see frames_at in manifold.cpp for the order).
PointFrame frames_at(const ImplicitSubmanifold& M, const Vec& x);

// Coordinates of v in the frame: v = T*tangential + N*normal.
struct SplitVector {
    Vec tangential;  // n coords
    Vec normal;      // r coords
};
SplitVector split_vector(const PointFrame& f, const Vec& v);

// Retraction of x0 onto M (normal-space Newton correction).
Vec retract(const ImplicitSubmanifold& M, const Vec& x0);

// c(t) = retract(x + t*(T*coords)): a curve on M through f.x with
// prescribed initial velocity in frame coordinates.
Vec curve_point(const ImplicitSubmanifold& M, const PointFrame& f, const Vec& tangent_coords,
                double t);
// Same with an ambient direction vector.
Vec curve_point_dir(const ImplicitSubmanifold& M, const Vec& x, const Vec& direction,
                    double t);

// Orthogonal projector onto the tangent space at x (frame independent).
Mat tangent_projector(const ImplicitSubmanifold& M, const Vec& x);
Vec project_tangent(const ImplicitSubmanifold& M, const Vec& x, const Vec& v);

// Deterministic on-manifold sample: Gaussian draws retracted onto M.
// All randomness flows from the seed.
std::vector<Vec> sample_points(const ImplicitSubmanifold& M, int count, std::uint64_t seed);

// Seeded Gaussian stream (explicit algorithm so output is reproducible
// across standard libraries).
class GaussianStream {
public:
    explicit GaussianStream(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ULL) {}
    double next();
    Vec next_vec(int n);

private:
    double next_uniform();  // in (0,1)
    std::uint64_t state_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

} // namespace isl
