#pragma once
#include <string>

#include "isl/linalg.hpp"
#include "isl/report.hpp"

namespace isl {

enum class AmbientKind { Swap, FixedAxisSwap, Reflection, Custom };

// A constant-coefficient involution on Euclidean space, compatible with
// the inner product: matrix Q with Q^2 = eps*I and Q^T Q = I. Immutable
// after construction.
class AmbientStructure {
public:
    // Block swap (x, y) -> (y, x) on E^{2p}.
    static AmbientStructure swap(int p);
    // Block swap around a fixed middle axis, (x, t, y) -> (y, t, x) on E^{2p+1}.
    static AmbientStructure fixed_axis_swap(int p);
    // Sign flip of the trailing block, (x, y) -> (x, -y) on E^{p+q}.
    static AmbientStructure reflection(int p, int q);
    // Arbitrary matrix with explicit epsilon; invariants verified.
    static AmbientStructure custom(Mat m, int epsilon);
    // As above but without verification; compatibility reports stay
    // meaningful for deliberately broken inputs.
    static AmbientStructure custom_unchecked(Mat m, int epsilon);

    int dim() const { return static_cast<int>(p_tilde_.rows()); }
    int epsilon() const { return epsilon_; }
    AmbientKind kind() const { return kind_; }
    const Mat& matrix() const { return p_tilde_; }

    Vec apply(const Vec& v) const;

    // Residuals of the involution, metric-compatibility and
    // (anti)self-adjointness conditions.
    ResidualReport check_compatibility() const;

private:
    AmbientStructure(AmbientKind kind, Mat m, int epsilon)
        : kind_(kind), p_tilde_(std::move(m)), epsilon_(epsilon) {}
    void validate() const;

    AmbientKind kind_;
    Mat p_tilde_;
    int epsilon_;
};

} // namespace isl
