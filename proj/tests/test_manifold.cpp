#include <doctest.h>

#include <cmath>

#include "isl/manifold.hpp"

using namespace isl;

namespace {
const double kS2 = std::sqrt(2.0) / 2.0;
}

TEST_CASE("sphere constraint and gradient") {
    auto M = ImplicitSubmanifold::sphere(4, 1.0);
    CHECK(M.codim() == 1);
    CHECK(max_abs(M.constraint(Vec{1, 0, 0, 0})) == 0.0);
    auto M2 = ImplicitSubmanifold::sphere(3, 2.0);
    Mat j = M2.jacobian(Vec{2, 0, 0});
    CHECK(max_abs(j.row(0) - Vec{4, 0, 0}) == 0.0);
}

TEST_CASE("sphere product constraint") {
    auto M = ImplicitSubmanifold::product_spheres(2, 0.6, 0.8);
    CHECK(M.codim() == 2);
    CHECK(max_abs(M.constraint(Vec{0.6, 0, 0.8, 0})) < 1e-15);
}

TEST_CASE("frames: sphere normal is the outward radial direction") {
    auto M = ImplicitSubmanifold::sphere(4, 1.0);
    auto f = frames_at(M, Vec{1, 0, 0, 0});
    CHECK(max_abs(f.N.col(0) - Vec{1, 0, 0, 0}) == 0.0);
    CHECK(max_abs(f.T.col(0) - Vec{0, 1, 0, 0}) == 0.0);
    CHECK(max_abs(f.T.col(1) - Vec{0, 0, 1, 0}) == 0.0);
    CHECK(max_abs(f.T.col(2) - Vec{0, 0, 0, 1}) == 0.0);
}

TEST_CASE("frames: sphere product analytic normal pair, radial first") {
    auto M = ImplicitSubmanifold::product_spheres(2, kS2, kS2);
    Vec x{kS2, 0, kS2, 0};
    auto f = frames_at(M, x);
    CHECK(max_abs(f.N.col(0) - Vec{kS2, 0, kS2, 0}) < 1e-15);
    CHECK(max_abs(f.N.col(1) - Vec{kS2, 0, -kS2, 0}) < 1e-15);
}

TEST_CASE("frames: circle tangent sign is deterministic") {
    auto M = ImplicitSubmanifold::sphere(2, 1.0);
    auto f = frames_at(M, Vec{0, 1});
    CHECK(max_abs(f.N.col(0) - Vec{0, 1}) == 0.0);
    CHECK(max_abs(f.T.col(0) - Vec{1, 0}) < 1e-15);
}

TEST_CASE("frames satisfy the orthonormality and tangency contracts") {
    auto M = ImplicitSubmanifold::product_spheres(3, 0.6, 0.8);
    for (const Vec& x : sample_points(M, 25, 5)) {
        auto f = frames_at(M, x);
        CHECK(max_abs(transpose(f.T) * f.T - Mat::identity(f.n())) < 1e-10);
        CHECK(max_abs(transpose(f.N) * f.N - Mat::identity(f.r())) < 1e-10);
        CHECK(max_abs(transpose(f.T) * f.N) < 1e-10);
        CHECK(max_abs(M.jacobian(x) * f.T) < 1e-9);
    }
}

TEST_CASE("frames reject off-manifold points") {
    auto M = ImplicitSubmanifold::sphere(3, 1.0);
    CHECK_THROWS_AS(frames_at(M, Vec{2, 0, 0}), NotOnManifoldError);
}

TEST_CASE("split_vector: frame vectors map to unit coordinates") {
    auto M = ImplicitSubmanifold::sphere(4, 1.0);
    auto f = frames_at(M, Vec{1, 0, 0, 0});
    auto sn = split_vector(f, f.N.col(0));
    CHECK(max_abs(sn.tangential) < 1e-15);
    CHECK(max_abs(sn.normal - Vec{1}) < 1e-15);
    auto st = split_vector(f, f.T.col(0));
    CHECK(max_abs(st.tangential - Vec{1, 0, 0}) < 1e-15);
    CHECK(max_abs(st.normal) < 1e-15);
    auto sv = split_vector(f, Vec{1, 1, 0, 0});
    CHECK(max_abs(sv.tangential - Vec{1, 0, 0}) < 1e-15);
    CHECK(max_abs(sv.normal - Vec{1}) < 1e-15);
}

TEST_CASE("split_vector reconstructs random ambient vectors") {
    auto M = ImplicitSubmanifold::product_spheres(2, 0.6, 0.8);
    GaussianStream g(17);
    for (const Vec& x : sample_points(M, 10, 23)) {
        auto f = frames_at(M, x);
        for (int rep = 0; rep < 10; ++rep) {
            Vec v = g.next_vec(4);
            Vec rec = f.T * split_vector(f, v).tangential + f.N * split_vector(f, v).normal;
            CHECK(max_abs(rec - v) < 1e-10);
        }
    }
}

TEST_CASE("curve_point: t = 0 returns the base point, and stays on M") {
    auto M = ImplicitSubmanifold::sphere(2, 1.0);
    auto f = frames_at(M, Vec{1, 0});
    CHECK(max_abs(curve_point(M, f, Vec{0}, 0.0) - f.x) == 0.0);
    Vec c = curve_point(M, f, Vec{1}, 0.1);
    Vec expected = Vec{1, 0.1} * (1.0 / std::sqrt(1.01));
    CHECK(max_abs(c - expected) < 1e-12);
    GaussianStream g(2);
    for (int rep = 0; rep < 20; ++rep) {
        double t = 0.2 * (g.next());
        Vec y = curve_point(M, f, Vec{1}, t * 0.5);
        CHECK(max_abs(M.constraint(y)) < 1e-12);
    }
}

TEST_CASE("curve velocity matches the requested tangent direction") {
    auto M = ImplicitSubmanifold::product_spheres(2, 0.6, 0.8);
    for (const Vec& x : sample_points(M, 5, 31)) {
        auto f = frames_at(M, x);
        for (int i = 0; i < f.n(); ++i) {
            Vec e(f.n());
            e[i] = 1.0;
            FdConfig cfg{1e-6};
            Vec vel = central_difference(
                [&](double t) { return curve_point(M, f, e, t); }, cfg);
            CHECK(max_abs(vel - f.T.col(i)) < 1e-9);
        }
    }
}

TEST_CASE("normal frame varies continuously along curves") {
    auto M = ImplicitSubmanifold::product_spheres(2, 0.6, 0.8);
    for (const Vec& x : sample_points(M, 5, 37)) {
        auto f = frames_at(M, x);
        Vec e(f.n());
        e[0] = 1.0;
        for (double t : {1e-3, 5e-4, 1e-4}) {
            auto g2 = frames_at(M, curve_point(M, f, e, t));
            for (int a = 0; a < f.r(); ++a)
                CHECK(norm(g2.N.col(a) - f.N.col(a)) < 10.0 * t);
        }
    }
}

TEST_CASE("custom polynomial manifold reproduces the sphere") {
    auto poly = sphere_polynomial(3, 1.0);
    auto M = ImplicitSubmanifold::custom(3, {poly});
    Vec x = retract(M, Vec{1, 1, 1});
    CHECK(max_abs(M.constraint(x)) < 1e-12);
    auto f = frames_at(M, x);
    CHECK(max_abs(transpose(f.T) * f.T - Mat::identity(2)) < 1e-12);
    // gradient-based normal agrees with the radial direction
    CHECK(std::abs(std::abs(dot(f.N.col(0), x)) - 1.0) < 1e-12);
}

TEST_CASE("sampling is deterministic in the seed") {
    auto M = ImplicitSubmanifold::sphere(4, 2.0);
    auto a = sample_points(M, 10, 77);
    auto b = sample_points(M, 10, 77);
    for (int i = 0; i < 10; ++i) CHECK(max_abs(a[i] - b[i]) == 0.0);
    auto c = sample_points(M, 10, 78);
    CHECK(max_abs(c[0] - a[0]) > 1e-6);
}
