#pragma once
#include <algorithm>
#include <functional>
#include <type_traits>

#include "isl/linalg.hpp"

namespace isl {

// Central two-point finite-difference configuration.
struct FdConfig {
    double step = 1e-5;
};

// Default step scaled by the base point: 1e-5 * max(1, |x|).
inline FdConfig default_fd_config(const Vec& base) {
    return FdConfig{1e-5 * std::max(1.0, norm(base))};
}

// (f(+h) - f(-h)) / (2h). Works for scalar- and vector-valued f.
template <class F>
auto central_difference(F&& f, const FdConfig& cfg) {
    const double h = cfg.step;
    if (!(h > 0.0)) throw InvalidParamsError("finite-difference step must be positive");
    auto fp = f(h);
    auto fm = f(-h);
    if constexpr (std::is_arithmetic_v<decltype(fp)>)
        return (fp - fm) / (2.0 * h);
    else
        return (fp - fm) * (1.0 / (2.0 * h));
}

// Projects x0 onto the zero set of F, correcting only along the span of
// the constraint gradients at each iterate (Gauss-Newton on F). The
// returned point satisfies |F| <= 1e-12; iteration continues below that
// threshold while it keeps improving so that curves built from nearby
// retractions stay smooth to roundoff.
Vec newton_retract(const std::function<Vec(const Vec&)>& constraint,
                   const std::function<Mat(const Vec&)>& jacobian, Vec x0,
                   int max_iterations = 20);

} // namespace isl
