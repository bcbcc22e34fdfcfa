#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "mser/model.hpp"
#include "mser/network.hpp"
#include "mser/triangles.hpp"

namespace mser {

enum class Statistic : std::uint8_t { W1, W2, W3, Total };

std::string_view to_string(Statistic s);
/// Accepts "W1"/"1D", "W2"/"2D", "W3"/"3D", "TOTAL"/"Sum" (case-insensitive).
Statistic parse_statistic(std::string_view text);
std::int64_t statistic_value(const TriangleCounts& counts, Statistic s);

struct GofConfig {
  std::size_t num_replicates = 999;
  RngSeed master_seed{};
  std::vector<Statistic> statistics{Statistic::W1, Statistic::W2, Statistic::W3, Statistic::Total};
  double alpha = 0.05;
  MserParams null_params;
  std::size_t num_nodes = 0;
  /// 0 picks std::thread::hardware_concurrency(). Results do not depend on it.
  std::size_t num_threads = 0;
};

struct StatisticResult {
  Statistic statistic = Statistic::W1;
  std::int64_t observed = 0;
  std::int64_t q_low = 0;
  std::int64_t q_high = 0;
  /// Simulated values strictly above / equal to the observed one.
  std::size_t greater = 0;
  std::size_t ties = 0;
  /// Upper-tail mid-p value.
  double p_value = 1.0;
  /// Two-sided decision: observed outside [q_low, q_high].
  bool reject = false;
  /// Sorted simulated values.
  std::vector<std::int64_t> simulated;
};

struct GofResult {
  std::size_t num_replicates = 0;
  double alpha = 0.05;
  RngSeed master_seed{};
  TriangleCounts observed;
  std::vector<StatisticResult> statistics;

  const StatisticResult& at(Statistic s) const;
};

/// Monte Carlo test of the MSER null. Replicate r is sample(null_params, n,
/// derive_seed(master_seed, r)). Throws ConfigError on dimension mismatch or a
/// bad alpha / replicate count.
GofResult run_gof(const MultisliceNetwork& net, const GofConfig& cfg);

/// Simulated triangle counts for replicates [0, num_replicates), in replicate order.
std::vector<TriangleCounts> simulate_counts(const MserParams& params, std::size_t num_nodes,
                                            RngSeed master_seed, std::size_t num_replicates,
                                            std::size_t num_threads = 0);

/// (G + (T + 1)/2) / (N + 1); the observation itself counts as one of the ties.
double mid_p_value(std::size_t greater, std::size_t ties, std::size_t num_replicates);

/// Order statistics at 1-based ranks ceil(alpha/2 N) and ceil((1 - alpha/2) N)
/// of a sorted sample. Throws std::invalid_argument on empty input.
std::pair<std::int64_t, std::int64_t> empirical_quantiles(std::span<const std::int64_t> sorted,
                                                          double alpha);

/// (value, count) pairs of a sorted sample.
std::vector<std::pair<std::int64_t, std::size_t>> histogram(std::span<const std::int64_t> sorted);

}  // namespace mser
