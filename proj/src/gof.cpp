#include "mser/gof.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>
#include <string>
#include <thread>

#include "mser/errors.hpp"

namespace mser {

std::string_view to_string(Statistic s) {
  switch (s) {
    case Statistic::W1: return "W1";
    case Statistic::W2: return "W2";
    case Statistic::W3: return "W3";
    case Statistic::Total: return "TOTAL";
  }
  return "?";
}

Statistic parse_statistic(std::string_view text) {
  std::string t(text);
  std::transform(t.begin(), t.end(), t.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  if (t == "W1" || t == "1D") return Statistic::W1;
  if (t == "W2" || t == "2D") return Statistic::W2;
  if (t == "W3" || t == "3D") return Statistic::W3;
  if (t == "TOTAL" || t == "SUM" || t == "W") return Statistic::Total;
  throw ConfigError("unknown statistic '" + std::string(text) + "'");
}

std::int64_t statistic_value(const TriangleCounts& counts, Statistic s) {
  switch (s) {
    case Statistic::W1: return counts.w1;
    case Statistic::W2: return counts.w2;
    case Statistic::W3: return counts.w3;
    case Statistic::Total: return counts.total();
  }
  return 0;
}

const StatisticResult& GofResult::at(Statistic s) const {
  for (const auto& r : statistics)
    if (r.statistic == s) return r;
  throw std::out_of_range("statistic " + std::string(to_string(s)) + " was not tested");
}

double mid_p_value(std::size_t greater, std::size_t ties, std::size_t num_replicates) {
  if (greater + ties > num_replicates)
    throw std::invalid_argument("greater + ties exceeds the number of replicates");
  return (static_cast<double>(greater) + (static_cast<double>(ties) + 1.0) / 2.0) /
         (static_cast<double>(num_replicates) + 1.0);
}

std::pair<std::int64_t, std::int64_t> empirical_quantiles(std::span<const std::int64_t> sorted,
                                                          double alpha) {
  if (sorted.empty()) throw std::invalid_argument("quantiles of an empty sample");
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0, 1)");
  const double N = static_cast<double>(sorted.size());
  const auto rank = [&](double level) {
    // tolerate representation error in level * N
    auto r = static_cast<std::size_t>(std::ceil(level * N - 1e-9));
    return std::clamp<std::size_t>(r, 1, sorted.size());
  };
  return {sorted[rank(alpha / 2.0) - 1], sorted[rank(1.0 - alpha / 2.0) - 1]};
}

std::vector<std::pair<std::int64_t, std::size_t>> histogram(std::span<const std::int64_t> sorted) {
  std::vector<std::pair<std::int64_t, std::size_t>> out;
  for (auto v : sorted) {
    if (!out.empty() && out.back().first == v)
      ++out.back().second;
    else
      out.emplace_back(v, 1);
  }
  return out;
}

std::vector<TriangleCounts> simulate_counts(const MserParams& params, std::size_t num_nodes,
                                            RngSeed master_seed, std::size_t num_replicates,
                                            std::size_t num_threads) {
  params.validate();
  std::vector<TriangleCounts> out(num_replicates);
  const auto run = [&](std::size_t begin, std::size_t end) {
    for (std::size_t r = begin; r < end; ++r)
      out[r] = count_fast(sample(params, num_nodes, derive_seed(master_seed, r)));
  };

  std::size_t threads = num_threads != 0 ? num_threads : std::thread::hardware_concurrency();
  threads = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(1, num_replicates));
  if (threads == 1) {
    run(0, num_replicates);
    return out;
  }
  {
    std::vector<std::jthread> pool;
    const std::size_t chunk = (num_replicates + threads - 1) / threads;
    for (std::size_t t = 0; t < threads; ++t) {
      const std::size_t begin = t * chunk;
      const std::size_t end = std::min(num_replicates, begin + chunk);
      if (begin < end) pool.emplace_back(run, begin, end);
    }
  }
  return out;
}

GofResult run_gof(const MultisliceNetwork& net, const GofConfig& cfg) {
  if (cfg.num_replicates < 1) throw ConfigError("need at least one replicate");
  if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0)) throw ConfigError("alpha must lie in (0, 1)");
  if (cfg.num_nodes != net.num_nodes())
    throw ConfigError("config has n = " + std::to_string(cfg.num_nodes) + " but the network has " +
                      std::to_string(net.num_nodes()) + " nodes");
  if (cfg.null_params.num_layers() != net.num_layers())
    throw ConfigError("null parameters have " + std::to_string(cfg.null_params.num_layers()) +
                      " layers but the network has " + std::to_string(net.num_layers()));
  if (cfg.statistics.empty()) throw ConfigError("no statistics selected");
  cfg.null_params.validate();

  GofResult result;
  result.num_replicates = cfg.num_replicates;
  result.alpha = cfg.alpha;
  result.master_seed = cfg.master_seed;
  result.observed = count_fast(net);

  const auto sims = simulate_counts(cfg.null_params, cfg.num_nodes, cfg.master_seed,
                                    cfg.num_replicates, cfg.num_threads);

  for (const Statistic s : cfg.statistics) {
    StatisticResult r;
    r.statistic = s;
    r.observed = statistic_value(result.observed, s);
    r.simulated.reserve(sims.size());
    for (const auto& c : sims) r.simulated.push_back(statistic_value(c, s));
    std::sort(r.simulated.begin(), r.simulated.end());

    const auto [lo, hi] = std::equal_range(r.simulated.begin(), r.simulated.end(), r.observed);
    r.ties = static_cast<std::size_t>(hi - lo);
    r.greater = static_cast<std::size_t>(r.simulated.end() - hi);
    r.p_value = mid_p_value(r.greater, r.ties, cfg.num_replicates);
    std::tie(r.q_low, r.q_high) = empirical_quantiles(r.simulated, cfg.alpha);
    r.reject = r.observed < r.q_low || r.observed > r.q_high;
    result.statistics.push_back(std::move(r));
  }
  return result;
}

}  // namespace mser
