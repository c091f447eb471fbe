#pragma once
#include <functional>
#include <vector>

#include "isl/induced.hpp"

namespace isl {

// Extrinsic data at a point, tangent coordinates throughout: Weingarten
// operators, second fundamental forms and normal-connection coefficients
// relative to the canonical frame field.
struct ShapeData {
    PointFrame frame;
    std::vector<Mat> A;  // r operators, n x n
    std::vector<Mat> h;  // r bilinear forms, h[a](i,j) = h_a(T_i, T_j)
    std::vector<Mat> l;  // r matrices r x n, l[a](b,i) = l_ab(T_i)
};

// All first covariant derivatives of the induced fields at the base
// point, obtained by central differences along retraction curves. Tangent
// test fields are extensions of the basis vectors by orthogonal
// projection onto the moving tangent space.
struct CovariantCache {
    // dP[k] has column j = (nabla_{T_k} P)(T_j)
    std::vector<Mat> dP;
    // du[k](a, j) = (nabla_{T_k} u_a)(T_j)
    std::vector<Mat> du;
    // dxi[k] has column a = nabla_{T_k} xi_a
    std::vector<Mat> dxi;
    // da[k](a, b) = T_k(a_ab)
    std::vector<Mat> da;
    // nablaY[k][j] = nabla_{T_k} Yhat_j (coords)
    std::vector<std::vector<Vec>> nablaY;
    // dPY[k][j] = nabla_{T_k} (P Yhat_j) (coords)
    std::vector<std::vector<Vec>> dPY;
    // bracket[i][j] = [Xhat_i, Xhat_j] (coords)
    std::vector<std::vector<Vec>> bracket;
    // du_raw[k](a, j) = T_k(u_a(Yhat_j)) before the connection correction
    std::vector<Mat> du_raw;
};

struct FdBundle {
    ShapeData shape;
    CovariantCache cov;
};

// Shape data alone (one frame differentiation pass).
ShapeData shape_at(const ImplicitSubmanifold& M, const PointFrame& f, const FdConfig& cfg);

// Shape data plus the covariant cache from the same curve evaluations.
FdBundle analyze_point(const AmbientStructure& s, const ImplicitSubmanifold& M,
                       const PointFrame& f, const InducedStructureData& ind,
                       const FdConfig& cfg);

// Finite-difference verification of the four covariant-derivative
// identities for parallel ambient structures (record keys 2.6.i .. 2.6.iv).
ResidualReport covariant_identity_suite(const InducedStructureData& ind, const ShapeData& sh,
                                        const CovariantCache& cov, double tol = kFdTol);

// Defect-tensor verification: measures Q-parallelism failure along the
// submanifold and re-checks the covariant identities with the defect
// terms included (record keys 2.30, 2.31, 2.32.i .. 2.32.iv). The
// optional field override substitutes a position-dependent matrix for
// the ambient application inside the finite-difference path.
using AmbientMatrixField = std::function<Mat(const Vec&)>;
ResidualReport defect_suite(const AmbientStructure& s, const ImplicitSubmanifold& M,
                            const PointFrame& f, const InducedStructureData& ind,
                            const ShapeData& sh, const CovariantCache& cov,
                            const FdConfig& cfg, double tol = kFdTol,
                            const AmbientMatrixField& field_override = nullptr);

// Hypersurface specialization: the scalar identity suite, the simplified
// covariant identities, the Killing bilinear identity, umbilical fits
// and their consequences, the divergence relation, plus the conditional
// eigen-structure diagnostics (gated unless their hypotheses hold).
ResidualReport hypersurface_suite(const InducedStructureData& ind, const ShapeData& sh,
                                  const CovariantCache& cov, double alg_tol = kAlgTol,
                                  double fd_tol = kFdTol);

// Codimension-two specialization: the nine-identity algebraic block, the
// trace-free reduction and its finite-difference consequences, plus the
// vanishing-normal-connection flag consumed by the normality suites.
ResidualReport codim2_suite(const InducedStructureData& ind, const ShapeData& sh,
                            const CovariantCache& cov, double alg_tol = kAlgTol,
                            double fd_tol = kFdTol);

} // namespace isl
