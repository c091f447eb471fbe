#pragma once
#include <string>

#include "isl/ambient.hpp"
#include "isl/manifold.hpp"
#include "isl/report.hpp"
#include "isl/tolerances.hpp"

namespace isl {

// The structure induced on a submanifold by an ambient involution,
// expressed in the coordinates of an orthonormal point frame: a tangent
// endomorphism, one covector and one tangent vector per normal direction,
// and the normal-normal coefficient matrix.
struct InducedStructureData {
    PointFrame frame;
    int epsilon = 1;
    Mat P_tan;  // n x n
    Mat u;      // r x n, row a = covector u_a
    Mat xi;     // n x r, column a = vector xi_a
    Mat A_mat;  // r x r, (a, b) = <Q N_a, N_b>

    int n() const { return static_cast<int>(P_tan.rows()); }
    int r() const { return static_cast<int>(A_mat.rows()); }
};

// Splits Q T_i and Q N_a into tangential and normal parts.
InducedStructureData compute_induced(const AmbientStructure& s, const PointFrame& f);

// Algebraic identity suite for the induced structure: the P-squared
// relation, u-P compatibility, a-matrix epsilon symmetry, the xi Gram
// identity, P xi expansion, duality of u and xi, epsilon symmetry of P
// and the metric contraction identity. Record keys 1.6.i .. 1.7.iii.
ResidualReport induced_identity_suite(const InducedStructureData& d, double tol = kAlgTol);

// Recomputes the structure in the normal frame rotated by K (rows give
// the new basis in terms of the old). Components obey the covariance
// laws u' = K u, xi' = xi K^T, A' = K A K^T.
InducedStructureData rotate_normal_frame(const AmbientStructure& s,
                                         const InducedStructureData& d, const Mat& K);
// The covariance laws applied directly to the components (no recompute).
InducedStructureData transform_components(const InducedStructureData& d, const Mat& K);

// Re-expresses d in the frame `target` (same point, same spaces): both
// the tangent basis change and the normal basis change are applied.
InducedStructureData align_to_frame(const InducedStructureData& d, const PointFrame& target,
                                    double tol = 1e-8);

enum class StructureClass {
    GeneralAEF,          // nonzero a-matrix
    AlmostRParacontact,  // epsilon = +1, a = 0 (P^3 - P = 0)
    AlmostRContact,      // epsilon = -1, a = 0 (P^3 + P = 0)
};

struct Classification {
    StructureClass tag;
    std::string name;       // includes the r = 1 specializations
    double a_norm;          // max |a_ab|
    double cubic_residual;  // |P^3 -/+ P| when a = 0, else 0
};
Classification classify_structure(const InducedStructureData& d, double tol = kAlgTol);

// Properties of the distribution D = intersection of ker u_a: P-invariance,
// involutivity of P^2 on D, metric preservation, orthogonality to the xi's.
// The report notes dim D and flags degenerate (vanishing xi) directions.
ResidualReport distribution_check(const InducedStructureData& d, double tol = kAlgTol);

} // namespace isl
