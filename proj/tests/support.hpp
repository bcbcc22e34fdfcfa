#pragma once

#include <filesystem>
#include <random>
#include <vector>

#include "mser/io.hpp"
#include "mser/model.hpp"
#include "mser/network.hpp"

namespace mser::fixtures {

inline std::filesystem::path data_path(const char* name) {
  return std::filesystem::path(MSER_DATA_DIR) / name;
}

inline LabeledNetwork florentine() { return load_network(data_path("florentine.mnet")); }

// Random node-aligned network with per-layer densities drawn uniformly and
// each coupling kept with probability q.
inline MultisliceNetwork random_network(std::mt19937_64& rng, std::size_t n, std::size_t L,
                                        double q) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<IntraEdge> edges;
  for (LayerIndex l = 0; l < L; ++l) {
    const double p = unit(rng);
    for (NodeIndex u = 0; u < n; ++u)
      for (NodeIndex v = u + 1; v < n; ++v)
        if (unit(rng) < p) edges.push_back({l, u, v});
  }
  std::vector<Coupling> couplings;
  for (LayerIndex i = 0; i < L; ++i)
    for (LayerIndex j = i + 1; j < L; ++j)
      for (NodeIndex u = 0; u < n; ++u)
        if (unit(rng) < q) couplings.push_back({i, j, u});
  return MultisliceNetwork::build(n, L, edges, couplings);
}

inline MultisliceNetwork complete_network(std::size_t n, std::size_t L) {
  std::vector<IntraEdge> edges;
  for (LayerIndex l = 0; l < L; ++l)
    for (NodeIndex u = 0; u < n; ++u)
      for (NodeIndex v = u + 1; v < n; ++v) edges.push_back({l, u, v});
  return MultisliceNetwork::build(n, L, edges, FullCoupling{});
}

}  // namespace mser::fixtures
