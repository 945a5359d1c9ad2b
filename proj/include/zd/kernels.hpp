#pragma once

#include <cstddef>

namespace zd {
namespace kernels {

// One synchronous update out = pi * M of the history chain, in gather form:
// every history q*P + r (r < P) feeds the P successors j*stride + q, so
//   out[h'] = sum_r pi[q*P + r] * step[(q*P + r)*P + j'],
// with j' = h' / stride, q = h' mod stride, stride = size / P. Each output
// entry is an independent fixed-order sum, which keeps the serial and
// OpenMP versions bit-identical.
void apply_transition_serial(const double* pi, const double* step, double* out,
                             std::size_t size, std::size_t num_profiles);
void apply_transition_omp(const double* pi, const double* step, double* out,
                          std::size_t size, std::size_t num_profiles);

// sum_h pi[h] * f[h], accumulated in fixed-size blocks whose partial sums
// combine in block order; the OpenMP version distributes blocks but keeps
// the identical summation tree, so results match the serial ones exactly.
double expectation_serial(const double* pi, const double* f, std::size_t size);
double expectation_omp(const double* pi, const double* f, std::size_t size);

inline constexpr std::size_t kReductionBlock = 4096;

}  // namespace kernels
}  // namespace zd
