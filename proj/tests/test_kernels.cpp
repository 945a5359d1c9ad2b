#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <vector>

#include "zd/catalog.hpp"
#include "zd/kernels.hpp"
#include "zd/markov.hpp"
#include "zd/random.hpp"

using namespace zd;

namespace {

const GameSpec kPD = GameSpec::prisoners_dilemma({});

HistoryChain random_chain(int memory, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return build_chain(kPD, {random_strategy(kPD, 1, memory, rng),
                           random_strategy(kPD, 2, memory, rng)});
}

}  // namespace

TEST_CASE("gather kernel matches the dense transition matrix") {
  for (int memory : {1, 2, 3}) {
    HistoryChain chain = random_chain(memory, 1000 + memory);
    const std::size_t H = chain.size();
    std::mt19937_64 rng(7);
    std::vector<double> pi(H);
    double sum = 0.0;
    for (double& p : pi) {
      p = uniform_double(rng);
      sum += p;
    }
    for (double& p : pi) p /= sum;

    std::vector<double> expect(H, 0.0);
    for (std::size_t from = 0; from < H; from++) {
      for (std::size_t to = 0; to < H; to++) {
        expect[to] += pi[from] * chain.transition(from, to);
      }
    }
    std::vector<double> got(H);
    kernels::apply_transition_serial(pi.data(), chain.step.data(), got.data(), H, 4);
    double total = 0.0;
    for (std::size_t h = 0; h < H; h++) {
      CHECK(got[h] == doctest::Approx(expect[h]).epsilon(1e-13));
      total += got[h];
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("serial and OpenMP transitions agree bitwise") {
  for (int memory : {1, 3, 5, 7}) {
    HistoryChain chain = random_chain(memory, 2000 + memory);
    const std::size_t H = chain.size();
    std::mt19937_64 rng(11);
    std::vector<double> pi(H);
    double sum = 0.0;
    for (double& p : pi) {
      p = uniform_double(rng);
      sum += p;
    }
    for (double& p : pi) p /= sum;
    std::vector<double> serial(H), parallel(H);
    kernels::apply_transition_serial(pi.data(), chain.step.data(), serial.data(), H, 4);
    kernels::apply_transition_omp(pi.data(), chain.step.data(), parallel.data(), H, 4);
    CHECK(serial == parallel);
  }
}

TEST_CASE("serial and OpenMP expectations agree bitwise") {
  std::mt19937_64 rng(31);
  for (std::size_t size : {1ul, 100ul, 4096ul, 4097ul, 100000ul}) {
    std::vector<double> pi(size), f(size);
    for (std::size_t i = 0; i < size; i++) {
      pi[i] = uniform_double(rng);
      f[i] = 10.0 * uniform_double(rng) - 5.0;
    }
    double serial = kernels::expectation_serial(pi.data(), f.data(), size);
    double parallel = kernels::expectation_omp(pi.data(), f.data(), size);
    CHECK(serial == parallel);

    long double naive = 0.0;
    for (std::size_t i = 0; i < size; i++) {
      naive += static_cast<long double>(pi[i]) * static_cast<long double>(f[i]);
    }
    CHECK(serial == doctest::Approx(static_cast<double>(naive)).epsilon(1e-12));
  }
}

TEST_CASE("step rows are distributions") {
  HistoryChain chain = random_chain(4, 99);
  const std::size_t H = chain.size();
  for (std::size_t h = 0; h < H; h++) {
    double sum = 0.0;
    for (std::size_t j = 0; j < 4; j++) sum += chain.step[h * 4 + j];
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
  }
}
