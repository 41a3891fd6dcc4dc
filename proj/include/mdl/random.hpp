#pragma once

// Reproducible randomness and deterministic fan-out.
//
// std::mt19937_64's output sequence is fixed by the standard; the
// distribution helpers below are written out so results do not depend on
// the standard library's distribution implementations.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>

namespace mdl {

std::uint64_t splitmix64(std::uint64_t x);

// Seed for the index-th independent stream derived from a base seed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  // Uniform on [0, 1) with 53 random bits.
  double uniform();
  // Uniform on {lo, ..., hi}.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);
  bool bernoulli(double p) { return uniform() < p; }
  // Standard normal via Box-Muller.
  double normal();

 private:
  std::mt19937_64 engine_;
};

// Runs body(i) for i in [0, count) on up to `threads` workers. Callers write
// results to per-index slots and reduce in index order, so outcomes do not
// depend on the thread count.
void parallel_for(std::size_t count, std::size_t threads, const std::function<void(std::size_t)>& body);

}  // namespace mdl
