#include <doctest.h>

#include <cmath>

#include "isl/ambient.hpp"
#include "isl/manifold.hpp"

using namespace isl;

TEST_CASE("swap exchanges coordinate blocks") {
    auto s = AmbientStructure::swap(1);
    CHECK(max_abs(s.apply(Vec{3, 4}) - Vec{4, 3}) == 0.0);
    auto s2 = AmbientStructure::swap(2);
    CHECK(max_abs(s2.apply(Vec{1, 2, 3, 4}) - Vec{3, 4, 1, 2}) == 0.0);
}

TEST_CASE("reflection flips the trailing block") {
    auto s = AmbientStructure::reflection(1, 1);
    CHECK(max_abs(s.apply(Vec{3, 4}) - Vec{3, -4}) == 0.0);
    auto s2 = AmbientStructure::reflection(2, 2);
    CHECK(max_abs(s2.apply(Vec{1, 2, 3, 4}) - Vec{1, 2, -3, -4}) == 0.0);
}

TEST_CASE("fixed-axis swap keeps the middle coordinate") {
    auto s = AmbientStructure::fixed_axis_swap(1);
    CHECK(max_abs(s.apply(Vec{1, 5, 2}) - Vec{2, 5, 1}) == 0.0);
}

TEST_CASE("applying twice gives epsilon times the identity") {
    auto s = AmbientStructure::swap(2);
    GaussianStream g(11);
    for (int rep = 0; rep < 20; ++rep) {
        Vec v = g.next_vec(4);
        CHECK(max_abs(s.apply(s.apply(v)) - v) < 1e-14);
    }
}

TEST_CASE("compatibility report passes for built-in structures") {
    for (auto s : {AmbientStructure::swap(3), AmbientStructure::reflection(2, 3),
                   AmbientStructure::fixed_axis_swap(2)}) {
        auto rep = s.check_compatibility();
        CHECK(rep.all_passed());
        for (const auto& r : rep.records) CHECK(r.max_residual == 0.0);
    }
}

TEST_CASE("compatibility report fails for a non-orthogonal custom matrix") {
    Mat bad = Mat::identity(2);
    bad(0, 1) = 0.5;  // involution fails and so does metric compatibility
    auto s = AmbientStructure::custom_unchecked(bad, +1);
    auto rep = s.check_compatibility();
    CHECK_FALSE(rep.all_passed());
    CHECK(rep.find("1.2")->max_residual > 1e-6);
    CHECK_THROWS_AS(AmbientStructure::custom(bad, +1), InvalidStructureError);
}

TEST_CASE("quarter-turn rotation is a valid epsilon = -1 structure") {
    Mat rot(2, 2);
    rot(0, 1) = -1.0;
    rot(1, 0) = 1.0;
    auto s = AmbientStructure::custom(rot, -1);
    auto rep = s.check_compatibility();
    CHECK(rep.all_passed());
    for (const auto& r : rep.records) CHECK(r.max_residual == 0.0);
}

TEST_CASE("metric compatibility and epsilon adjointness on random pairs") {
    auto s = AmbientStructure::swap(3);
    Mat rot(2, 2);
    rot(0, 1) = -1.0;
    rot(1, 0) = 1.0;
    auto sneg = AmbientStructure::custom(rot, -1);
    GaussianStream g(99);
    for (int rep = 0; rep < 100; ++rep) {
        Vec u6 = g.next_vec(6), v6 = g.next_vec(6);
        CHECK(std::abs(dot(s.apply(u6), s.apply(v6)) - dot(u6, v6)) < 1e-12);
        CHECK(std::abs(dot(s.apply(u6), v6) - s.epsilon() * dot(u6, s.apply(v6))) < 1e-12);
        Vec u2 = g.next_vec(2), v2 = g.next_vec(2);
        CHECK(std::abs(dot(sneg.apply(u2), sneg.apply(v2)) - dot(u2, v2)) < 1e-12);
        CHECK(std::abs(dot(sneg.apply(u2), v2) - sneg.epsilon() * dot(u2, sneg.apply(v2))) <
              1e-12);
    }
}

TEST_CASE("trace counts the eigenvalue split") {
    CHECK(trace(AmbientStructure::swap(3).matrix()) == 0.0);
    CHECK(trace(AmbientStructure::reflection(4, 1).matrix()) == 3.0);
    CHECK(trace(AmbientStructure::reflection(1, 4).matrix()) == -3.0);
}
