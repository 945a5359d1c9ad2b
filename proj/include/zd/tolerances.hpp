#pragma once

#include <cstddef>

namespace zd {

// Central defaults for every tolerance used by the library. Exact-by-
// construction identities get 1e-12; anything mediated by a linear solve
// gets 1e-9. Callers may override per run; reports echo effective values.
struct Tolerances {
  double exact = 1e-12;        // construction identities, probability sums
  double relation = 1e-9;      // enforced-relation residuals under exact solves
  double support_mass = 1e-12; // degenerate-branch threshold on <e^K> and target masses
  double stationary_sum = 1e-10;
  double stationary_residual = 1e-9;  // ||pi - pi T||_inf for exact/power methods
  double h_relation = 1e-8;    // exponential-family sweep residuals
  double fd_derivative = 1e-6; // finite-difference h-derivative checks
  double recognition = 1e-9;   // ZD classification threshold on recognize residual
  double power_tol = 1e-12;    // successive-delta tolerance for power iteration
  std::size_t power_max_iters = 1000000;
};

inline constexpr const char* kVersion = "0.1.0";

// Largest history space any tensor or chain may index.
inline constexpr std::size_t kMaxHistories = std::size_t{1} << 24;

}  // namespace zd
