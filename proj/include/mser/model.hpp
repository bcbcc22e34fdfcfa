#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "mser/network.hpp"
#include "mser/triangles.hpp"

namespace mser {

/// Per-layer intra-layer edge probabilities and the node-aligned inter-layer probability.
struct MserParams {
  std::vector<double> p;
  double q = 1.0;

  std::size_t num_layers() const { return p.size(); }
  /// Throws ValidationError unless L >= 1 and every probability lies in [0, 1].
  void validate() const;
  bool uniform() const;

  friend bool operator==(const MserParams&, const MserParams&) = default;
};

struct RngSeed {
  std::uint64_t value = 0;
  friend bool operator==(const RngSeed&, const RngSeed&) = default;
};

/// SplitMix64 finaliser.
std::uint64_t mix64(std::uint64_t x);

/// Seed of the child stream `index` of `parent`. Distinct indices give
/// statistically independent streams; the map is a pure function.
RngSeed derive_seed(RngSeed parent, std::uint64_t index);

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(std::mt19937_64& engine) {
  return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

/// One MSER draw. Layer i uses stream derive_seed(seed, i); the couplings use
/// stream derive_seed(seed, L). q == 1 yields full coupling.
MultisliceNetwork sample(const MserParams& params, std::size_t num_nodes, RngSeed seed);

/// Maximum-likelihood edge probabilities. Per layer: |E^i| / C(n,2); pooled:
/// sum |E^i| / (L C(n,2)) in every layer. q is fixed to 1.
/// Throws ValidationError when n < 2.
MserParams fit_mle(const MultisliceNetwork& net, bool pooled);

/// P(X_alpha = 1): p_i^3, p_i p_j^2 q^2 or p_i p_j p_k q^3 by type.
double index_probability(const MserParams& params, const TriangleIndex& idx);

}  // namespace mser
