#pragma once

namespace isl {

// Tolerance split: identities checked by plain algebra at a point versus
// identities that involve finite differencing.
inline constexpr double kAlgTol = 1e-9;
inline constexpr double kFdTol = 1e-5;

} // namespace isl
