#include "isl/fd.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace isl {

Vec newton_retract(const std::function<Vec(const Vec&)>& constraint,
                   const std::function<Mat(const Vec&)>& jacobian, Vec x0,
                   int max_iterations) {
    constexpr double accept_tol = 1e-12;
    constexpr double target_tol = 1e-14;

    double best = std::numeric_limits<double>::infinity();
    for (int it = 0; it < max_iterations; ++it) {
        Vec f = constraint(x0);
        if (!is_finite(f)) throw NumericError("non-finite constraint value");
        const double r = max_abs(f);
        if (r <= target_tol) return x0;
        if (r >= best && best <= accept_tol) return x0;  // stalled below acceptance
        best = std::min(best, r);

        Mat j = jacobian(x0);
        // Normal-space correction: x <- x - J^T (J J^T)^{-1} F.
        Mat jjt = j * transpose(j);
        Vec y = solve(jjt, f);
        Vec step = transpose(j) * y;
        x0 -= step;
    }
    Vec f = constraint(x0);
    if (max_abs(f) <= accept_tol) return x0;
    throw NoConvergenceError("retraction did not converge, |F| = " +
                             std::to_string(max_abs(f)));
}

} // namespace isl
