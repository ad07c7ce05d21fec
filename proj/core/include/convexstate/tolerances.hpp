#pragma once

namespace convexstate {

/// Numerical tolerances shared by every floating-point check in the library.
///
/// Exact (rational) computations ignore these entirely.
struct Tolerances {
  double equality = 1e-10;        ///< generic "equal within" threshold
  double psd_slack = 1e-10;       ///< minimum eigenvalue accepted as PSD
  double iteration_stop = 1e-12;  ///< convergence threshold for iterative solvers
  double hermitian = 1e-12;       ///< entrywise slack when accepting a Hermitian matrix
};

inline constexpr Tolerances kDefaultTolerances{};

}  // namespace convexstate
