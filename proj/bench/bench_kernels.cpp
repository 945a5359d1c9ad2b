#include <chrono>
#include <cstdio>
#include <cstring>
#include <random>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "zd/kernels.hpp"
#include "zd/markov.hpp"
#include "zd/random.hpp"

using namespace zd;

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point t0, Clock::time_point t1) {
  return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

std::vector<double> random_dist(std::size_t size, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<double> pi(size);
  double sum = 0.0;
  for (double& p : pi) {
    p = uniform_double(rng);
    sum += p;
  }
  for (double& p : pi) p /= sum;
  return pi;
}

using TransitionFn = void (*)(const double*, const double*, double*, std::size_t,
                              std::size_t);

// `repeat` power-iteration sweeps from pi0; returns the final vector so the
// serial and OpenMP runs can be compared bitwise.
std::vector<double> run_sweeps(TransitionFn fn, const std::vector<double>& pi0,
                               const std::vector<double>& step, std::size_t P, int repeat,
                               double* ms_per_sweep) {
  std::vector<double> cur = pi0;
  std::vector<double> nxt(pi0.size());
  fn(cur.data(), step.data(), nxt.data(), cur.size(), P);  // warmup, discarded
  const auto t0 = Clock::now();
  for (int r = 0; r < repeat; r++) {
    fn(cur.data(), step.data(), nxt.data(), cur.size(), P);
    cur.swap(nxt);
  }
  *ms_per_sweep = elapsed_ms(t0, Clock::now()) / repeat;
  return cur;
}

using ExpectationFn = double (*)(const double*, const double*, std::size_t);

double run_expectations(ExpectationFn fn, const std::vector<double>& pi,
                        const std::vector<double>& f, int repeat, double* ms_per_call) {
  volatile double sink = fn(pi.data(), f.data(), pi.size());
  const auto t0 = Clock::now();
  double last = 0.0;
  for (int r = 0; r < repeat; r++) {
    last = fn(pi.data(), f.data(), pi.size());
    sink = last;
  }
  *ms_per_call = elapsed_ms(t0, Clock::now()) / repeat;
  (void)sink;
  return last;
}

}  // namespace

int main(int argc, char** argv) {
  const bool smoke = argc > 1 && std::strcmp(argv[1], "--smoke") == 0;
  const int min_mem = smoke ? 3 : 6;
  const int max_mem = smoke ? 4 : 8;
  const int repeat = smoke ? 5 : 400;

  int threads = 1;
#ifdef _OPENMP
  threads = omp_get_max_threads();
#endif
  std::printf("transition/expectation kernels, serial vs OpenMP (%d threads), %d sweeps\n",
              threads, repeat);
  std::printf("%3s %9s %12s %12s %8s %12s %12s %8s %6s\n", "n", "histories", "serial ms",
              "omp ms", "speedup", "dot ser us", "dot omp us", "speedup", "match");

  const GameSpec game = GameSpec::prisoners_dilemma({});
  bool all_match = true;
  for (int memory = min_mem; memory <= max_mem; memory++) {
    std::mt19937_64 rng(9000 + memory);
    const HistoryChain chain = build_chain(
        game, {random_strategy(game, 1, memory, rng), random_strategy(game, 2, memory, rng)});
    const std::size_t H = chain.size();
    const std::size_t P = game.num_profiles();
    const std::vector<double> pi0 = random_dist(H, 77 + memory);

    double ms_serial = 0.0;
    double ms_omp = 0.0;
    const std::vector<double> out_serial = run_sweeps(
        kernels::apply_transition_serial, pi0, chain.step, P, repeat, &ms_serial);
    const std::vector<double> out_omp =
        run_sweeps(kernels::apply_transition_omp, pi0, chain.step, P, repeat, &ms_omp);
    bool match = out_serial == out_omp;

    std::mt19937_64 frng(5 + memory);
    std::vector<double> f(H);
    for (double& x : f) x = 10.0 * uniform_double(frng) - 5.0;
    double us_serial = 0.0;
    double us_omp = 0.0;
    const double dot_serial =
        run_expectations(kernels::expectation_serial, out_serial, f, repeat, &us_serial);
    const double dot_omp =
        run_expectations(kernels::expectation_omp, out_serial, f, repeat, &us_omp);
    us_serial *= 1000.0;
    us_omp *= 1000.0;
    match = match && dot_serial == dot_omp;
    all_match = all_match && match;

    std::printf("%3d %9zu %12.4f %12.4f %8.2f %12.3f %12.3f %8.2f %6s\n", memory, H,
                ms_serial, ms_omp, ms_serial / ms_omp, us_serial, us_omp,
                us_serial / us_omp, match ? "yes" : "NO");
  }
  if (!all_match) {
    std::printf("serial and OpenMP kernels disagree\n");
    return 1;
  }
  return 0;
}
