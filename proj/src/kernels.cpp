#include "zd/kernels.hpp"

#include <cstdint>
#include <vector>

namespace zd {
namespace kernels {

namespace {

inline double gather_one(const double* pi, const double* step, std::size_t h_next,
                         std::size_t stride, std::size_t P) {
  const std::size_t j = h_next / stride;
  const std::size_t q = h_next % stride;
  double sum = 0.0;
  const std::size_t base = q * P;
  for (std::size_t r = 0; r < P; r++) {
    sum += pi[base + r] * step[(base + r) * P + j];
  }
  return sum;
}

}  // namespace

void apply_transition_serial(const double* pi, const double* step, double* out,
                             std::size_t size, std::size_t num_profiles) {
  const std::size_t stride = size / num_profiles;
  for (std::size_t h = 0; h < size; h++) {
    out[h] = gather_one(pi, step, h, stride, num_profiles);
  }
}

void apply_transition_omp(const double* pi, const double* step, double* out,
                          std::size_t size, std::size_t num_profiles) {
  const std::size_t stride = size / num_profiles;
  const std::int64_t n = static_cast<std::int64_t>(size);
#pragma omp parallel for schedule(static)
  for (std::int64_t h = 0; h < n; h++) {
    out[h] = gather_one(pi, step, static_cast<std::size_t>(h), stride, num_profiles);
  }
}

double expectation_serial(const double* pi, const double* f, std::size_t size) {
  const std::size_t num_blocks = (size + kReductionBlock - 1) / kReductionBlock;
  double total = 0.0;
  for (std::size_t b = 0; b < num_blocks; b++) {
    const std::size_t lo = b * kReductionBlock;
    const std::size_t hi = lo + kReductionBlock < size ? lo + kReductionBlock : size;
    double part = 0.0;
    for (std::size_t h = lo; h < hi; h++) part += pi[h] * f[h];
    total += part;
  }
  return total;
}

double expectation_omp(const double* pi, const double* f, std::size_t size) {
  const std::size_t num_blocks = (size + kReductionBlock - 1) / kReductionBlock;
  std::vector<double> parts(num_blocks, 0.0);
  const std::int64_t nb = static_cast<std::int64_t>(num_blocks);
#pragma omp parallel for schedule(static)
  for (std::int64_t b = 0; b < nb; b++) {
    const std::size_t lo = static_cast<std::size_t>(b) * kReductionBlock;
    const std::size_t hi = lo + kReductionBlock < size ? lo + kReductionBlock : size;
    double part = 0.0;
    for (std::size_t h = lo; h < hi; h++) part += pi[h] * f[h];
    parts[b] = part;
  }
  double total = 0.0;
  for (double p : parts) total += p;
  return total;
}

}  // namespace kernels
}  // namespace zd
