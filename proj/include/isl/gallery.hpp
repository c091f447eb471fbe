#pragma once
#include <string>
#include <vector>

#include "isl/induced.hpp"

namespace isl {

enum class GalleryId { Ex1SphereSwap, Ex2ProductSpheres, Ex3OddSphere, Ex4ReflectionSphere };

// Bound ambient structure + submanifold for each of the four effective
// constructions, together with coordinate-level closed forms for the
// induced structure components.
struct GalleryExample {
    GalleryId id;
    int p = 2;
    int q = 3;
    double R = 1.0;
    double r1 = 0.6;
    double r2 = 0.8;
    AmbientStructure ambient;
    ImplicitSubmanifold manifold;

    // Odd sphere in a block-swap ambient with one fixed axis.
    static GalleryExample ex1(int p = 2, double R = 1.0);
    // Product of two spheres inside the unit hypersphere of a block-swap
    // ambient; requires r1^2 + r2^2 = 1.
    static GalleryExample ex2(int p = 2, double r1 = 0.6, double r2 = 0.8);
    static GalleryExample ex3(int p = 2, double R = 1.0);
    // Sphere in a reflection ambient.
    static GalleryExample ex4(int p = 2, int q = 3, double R = 1.0);

    static GalleryExample from_name(const std::string& name);
    std::string name() const;
};

// Induced structure evaluated from the example's printed coordinate
// formulas (no ambient matrix application, no splitting), expressed in
// the canonical frame of the submanifold.
InducedStructureData closed_form_structure(const GalleryExample& ex, const Vec& x);

// Nested sequence of codimension-one inclusions given by adding one
// polynomial constraint per link, outermost first.
struct ImmersionChain {
    AmbientStructure ambient;
    int m;
    std::vector<Polynomial> links;
};
// The hypersphere-then-product chain belonging to an ex2 instance.
ImmersionChain ex2_chain(const GalleryExample& ex);

// Induced structure on the innermost manifold assembled link by link:
// each stage splits the previous stage's tensor against the new unit
// normal. Normal index 1 is the innermost link.
InducedStructureData compose_immersions(const ImmersionChain& chain, const Vec& x);

// Closed forms against the generic pipeline, componentwise after frame
// alignment, plus the per-example identity suite.
ResidualReport oracle_crosscheck(const GalleryExample& ex, const std::vector<Vec>& points,
                                 double tol = kAlgTol);

// Two-path agreement for the ex2 chain: composition versus the direct
// codimension-two computation, and the a-matrix pattern.
ResidualReport composition_crosscheck(const GalleryExample& ex, const std::vector<Vec>& points,
                                      double tol = kAlgTol);

} // namespace isl
