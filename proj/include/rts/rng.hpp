#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace rts {

// All randomized code goes through these helpers instead of the std
// distributions, whose output sequences are implementation-defined. Same
// seed, same draws, on every compiler.
using Rng = std::mt19937_64;

inline double uniform_real(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Inclusive range [lo, hi], rejection-sampled to stay unbiased.
int uniform_int(Rng& rng, int lo, int hi);

// Knuth's product-of-uniforms sampler; fine for the arrival rates used here.
int poisson(Rng& rng, double mean);

// Index drawn from unnormalized non-negative weights.
int pick_weighted(Rng& rng, const std::vector<double>& weights);

template <class T>
void shuffle_vec(std::vector<T>& v, Rng& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(i - 1)));
    std::swap(v[i - 1], v[j]);
  }
}

}  // namespace rts
