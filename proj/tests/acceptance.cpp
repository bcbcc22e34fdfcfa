// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>

#include "mser/gof.hpp"
#include "mser/io.hpp"
#include "mser/model.hpp"
#include "mser/moments.hpp"
#include "mser/report.hpp"
#include "mser/triangles.hpp"
#include "support.hpp"

using namespace mser;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double v, int digits = 4) {
  std::ostringstream s;
  s.precision(digits);
  s << v;
  return s.str();
}

std::string counts_str(const TriangleCounts& c) {
  return "(" + std::to_string(c.w1) + ", " + std::to_string(c.w2) + ", " + std::to_string(c.w3) + ")";
}

std::optional<LabeledNetwork> lazega() {
  const auto path = fixtures::data_path("lazega.mnet");
  if (!std::filesystem::exists(path)) return std::nullopt;
  return load_network(path);
}

const char* kLazegaMissing = "fixture data/lazega.mnet is not available";

Outcome florentine_census() {
  const auto t0 = Clock::now();
  const auto net = fixtures::florentine().network;
  const auto trace = count_by_trace(supra_matrices(net));
  const auto enumeration = count_by_enumeration(net);
  std::array<int, 2> per_layer{};
  for (const auto& idx : enumerate_present(net, TriangleType::OneD)) ++per_layer[idx.layers[0]];
  const double secs = seconds_since(t0);
  const TriangleCounts want{8, 15, 0};
  const bool ok = trace == want && enumeration == want && per_layer == std::array<int, 2>{3, 5} && secs < 1.0;
  return {ok, "trace " + counts_str(trace) + ", enumeration " + counts_str(enumeration) + ", 1D by layer " +
                  std::to_string(per_layer[0]) + "/" + std::to_string(per_layer[1]) + ", " + fmt(secs, 3) + " s"};
}

Outcome lazega_census() {
  const auto t0 = Clock::now();
  const auto ln = lazega();
  if (!ln) return {false, kLazegaMissing};
  const auto trace = count_by_trace(supra_matrices(ln->network));
  const auto enumeration = count_by_enumeration(ln->network);
  const double secs = seconds_since(t0);
  const TriangleCounts want{5927, 28440, 8106};
  return {trace == want && enumeration == want && secs < 5.0,
          "trace " + counts_str(trace) + ", enumeration " + counts_str(enumeration) + ", " + fmt(secs, 3) + " s"};
}

Outcome gamma_sizes_check() {
  const auto g = gamma_sizes(16, 2);
  return {g == GammaSizes{1120, 3360, 0}, "gamma_sizes(16, 2) = (" + std::to_string(g.gamma1) + ", " +
                                              std::to_string(g.gamma2) + ", " + std::to_string(g.gamma3) + ")"};
}

Outcome moments() {
  const auto flor = fixtures::florentine();
  const auto fm = expected_counts(fit_mle(flor.network, true), 16);
  const bool flor_ok = std::abs(fm.lambda1 - 3.47) <= 0.01 && std::abs(fm.lambda2 - 10.42) <= 0.01 &&
                       std::abs(fm.lambda_total - 13.89) <= 0.01;
  std::string detail = "Florentine lambda = (" + fmt(fm.lambda1) + ", " + fmt(fm.lambda2) + "), total " +
                       fmt(fm.lambda_total);
  const auto ln = lazega();
  if (!ln) return {false, detail + "; " + kLazegaMissing};

  ReportOptions opts;
  opts.run_gof = false;
  opts.references = {{"lambda3", 2319.0}};
  const auto rep = build_report(*ln, "lazega.mnet", "", opts);
  const auto& m = rep.moments;
  const bool laz_ok = std::abs(m.lambda1 - 3033) <= 1 && std::abs(m.lambda2 - 15592) <= 2;
  const auto& ref = rep.references.at(0);
  const bool flagged = ref.mismatch && ref.computed == m.lambda3;
  detail += "; Lazega lambda = (" + fmt(m.lambda1, 6) + ", " + fmt(m.lambda2, 7) + ", " + fmt(m.lambda3, 6) +
            "), lambda3 vs 2319 " + (flagged ? "flagged" : "NOT flagged");
  return {flor_ok && laz_ok && flagged, detail};
}

Outcome gof_reproduction() {
  const auto t0 = Clock::now();
  const auto net = fixtures::florentine().network;
  GofConfig cfg;
  cfg.null_params = fit_mle(net, true);
  cfg.num_nodes = 16;
  cfg.statistics = {Statistic::W1};
  bool flor_ok = true;
  double p_min = 1.0, p_max = 0.0;
  std::int64_t lo_min = 1 << 30, lo_max = -1, hi_min = 1 << 30, hi_max = -1;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    cfg.master_seed = RngSeed{seed};
    const auto& w1 = run_gof(net, cfg).at(Statistic::W1);
    flor_ok = flor_ok && std::abs(w1.q_low - 0) <= 1 && std::abs(w1.q_high - 9) <= 1 &&
              std::abs(w1.p_value - 0.059) <= 0.023;
    p_min = std::min(p_min, w1.p_value);
    p_max = std::max(p_max, w1.p_value);
    lo_min = std::min(lo_min, w1.q_low);
    lo_max = std::max(lo_max, w1.q_low);
    hi_min = std::min(hi_min, w1.q_high);
    hi_max = std::max(hi_max, w1.q_high);
  }
  std::string detail = "Florentine 1D over 10 seeds: q_low in [" + std::to_string(lo_min) + ", " +
                       std::to_string(lo_max) + "], q_high in [" + std::to_string(hi_min) + ", " +
                       std::to_string(hi_max) + "], mid-p in [" + fmt(p_min, 3) + ", " + fmt(p_max, 3) + "]";
  const auto ln = lazega();
  if (!ln) return {false, detail + "; " + kLazegaMissing};

  GofConfig lc;
  lc.null_params = fit_mle(ln->network, false);
  lc.num_nodes = ln->network.num_nodes();
  lc.master_seed = RngSeed{1};
  const auto res = run_gof(ln->network, lc);
  bool laz_ok = true;
  double worst = 0.0;
  for (const auto& s : res.statistics) {
    laz_ok = laz_ok && s.reject && s.p_value <= 0.005;
    worst = std::max(worst, s.p_value);
  }
  const double secs = seconds_since(t0);
  detail += "; Lazega max p = " + fmt(worst, 3) + (laz_ok ? ", all rejected" : ", NOT all rejected") + ", " +
            fmt(secs, 3) + " s";
  return {flor_ok && laz_ok && secs < 60.0, detail};
}

Outcome method_equivalence() {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int agree = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng() % 8, L = 1 + rng() % 4;
    const auto net = fixtures::random_network(rng, n, L, unit(rng));
    if (count_by_trace(supra_matrices(net)) == count_by_enumeration(net)) ++agree;
  }
  return {agree == 200, std::to_string(agree) + "/200 random networks agree"};
}

Outcome oracle_sweep() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst_rel = 0.0;
  int dominated = 0, draws = 0;
  for (; draws < 50; ++draws) {
    const std::size_t n = 4 + rng() % 4, L = 1 + rng() % 3;
    MserParams params;
    for (std::size_t i = 0; i < L; ++i) params.p.push_back(unit(rng));
    params.q = unit(rng);
    const auto o = exact_covariance_oracle(params, n);
    const auto r = covariance_bounds(params, n);
    for (auto [exact, formula] : {std::pair{o.r11, r.r11}, std::pair{o.r21, r.r21}})
      if (formula != 0.0 || exact != 0.0)
        worst_rel = std::max(worst_rel, std::abs(exact - formula) / std::max(std::abs(formula), 1e-300));
    const double tol = 1e-12;
    if (o.r31 <= r.r31 * (1 + tol) && o.r22 <= r.r22 * (1 + tol) && o.r23 <= r.r23 * (1 + tol) &&
        o.r33 <= r.r33 * (1 + tol))
      ++dominated;
  }
  const double secs = seconds_since(t0);
  // same draws with q pinned to 1, reported for context only
  std::mt19937_64 again(7);
  int dominated_full = 0;
  for (int d = 0; d < draws; ++d) {
    const std::size_t n = 4 + again() % 4, L = 1 + again() % 3;
    MserParams params;
    for (std::size_t i = 0; i < L; ++i) params.p.push_back(unit(again));
    unit(again);
    params.q = 1.0;
    const auto o = exact_covariance_oracle(params, n);
    const auto r = covariance_bounds(params, n);
    const double tol = 1e-12;
    if (o.r31 <= r.r31 * (1 + tol) && o.r22 <= r.r22 * (1 + tol) && o.r23 <= r.r23 * (1 + tol) &&
        o.r33 <= r.r33 * (1 + tol))
      ++dominated_full;
  }
  return {worst_rel <= 1e-9 && dominated == draws && secs < 120.0,
          "max relative error of exact classes " + fmt(worst_rel, 3) + ", bounds dominate in " +
              std::to_string(dominated) + "/" + std::to_string(draws) + " draws with random q (" +
              std::to_string(dominated_full) + "/" + std::to_string(draws) + " at q = 1), " + fmt(secs, 3) +
              " s"};
}

Outcome tv_bounds() {
  const double uniform = tv_bound_uniform(35.0 / 240, 16, 2);
  const auto flor = tv_bound_general(fit_mle(fixtures::florentine().network, true), 16);
  std::string detail = "uniform bound " + fmt(uniform, 6) + " (reference figure 3345 differs), Florentine general " +
                       fmt(flor.general_bound) + (flor.uninformative ? " uninformative" : " informative");
  const bool flor_ok = std::abs(uniform - 3433.5) <= 0.5 && flor.uninformative;
  const auto ln = lazega();
  if (!ln) return {false, detail + "; " + kLazegaMissing};
  const auto laz = tv_bound_general(fit_mle(ln->network, false), ln->network.num_nodes());
  detail += ", Lazega general " + fmt(laz.general_bound) + (laz.uninformative ? " uninformative" : " informative");
  return {flor_ok && laz.uninformative, detail};
}

Outcome sparse_decay() {
  std::vector<double> b;
  for (std::size_t n : {50u, 100u, 200u, 400u}) {
    const double p = 1.0 / n;
    b.push_back(tv_bound_general({{p, p}, 1.0}, n).general_bound);
  }
  const bool decreasing = b[0] > b[1] && b[1] > b[2] && b[2] > b[3];
  return {decreasing && b[3] < b[0] / 4,
          "bounds " + fmt(b[0]) + ", " + fmt(b[1]) + ", " + fmt(b[2]) + ", " + fmt(b[3])};
}

double poisson_tv(const std::vector<std::int64_t>& values, double lambda) {
  std::map<std::int64_t, double> freq;
  for (auto v : values) freq[v] += 1.0 / values.size();
  double diff = 0.0, covered = 0.0;
  for (const auto& [k, f] : freq) {
    const double pk = std::exp(-lambda + k * std::log(lambda) - std::lgamma(k + 1.0));
    diff += std::abs(f - pk);
    covered += pk;
  }
  // Poisson mass outside the observed support counts in full
  return 0.5 * (diff + std::max(0.0, 1.0 - covered));
}

Outcome poisson_convergence() {
  const std::size_t n = 200;
  const double p = 1.0 / n;
  const MserParams params{{p, p}, 1.0};
  const auto sims = simulate_counts(params, n, RngSeed{2026}, 10000);
  const auto m = expected_counts(params, n);
  const std::array<double, 3> lambda{m.lambda1, m.lambda2, m.lambda3};
  std::array<std::vector<std::int64_t>, 3> comp;
  for (const auto& c : sims) {
    comp[0].push_back(c.w1);
    comp[1].push_back(c.w2);
    comp[2].push_back(c.w3);
  }
  bool ok = true;
  std::string detail = "TV to Poisson:";
  for (int t = 0; t < 3; ++t) {
    if (lambda[t] == 0.0) {
      const bool all_zero = std::all_of(comp[t].begin(), comp[t].end(), [](auto v) { return v == 0; });
      ok = ok && all_zero;
      detail += " W" + std::to_string(t + 1) + (all_zero ? " degenerate at 0 (lambda 0)" : " nonzero with lambda 0");
      continue;
    }
    const double tv = poisson_tv(comp[t], lambda[t]);
    ok = ok && tv < 0.05;
    detail += " W" + std::to_string(t + 1) + " " + fmt(tv, 3);
  }
  detail += "; correlations:";
  for (int a = 0; a < 3; ++a)
    for (int b = a + 1; b < 3; ++b) {
      double ma = 0, mb = 0;
      const double N = comp[a].size();
      for (std::size_t r = 0; r < comp[a].size(); ++r) {
        ma += comp[a][r] / N;
        mb += comp[b][r] / N;
      }
      double saa = 0, sbb = 0, sab = 0;
      for (std::size_t r = 0; r < comp[a].size(); ++r) {
        const double da = comp[a][r] - ma, db = comp[b][r] - mb;
        saa += da * da;
        sbb += db * db;
        sab += da * db;
      }
      const std::string pair = " W" + std::to_string(a + 1) + "/W" + std::to_string(b + 1);
      if (saa == 0.0 || sbb == 0.0) {
        // a constant component has zero covariance with everything
        detail += pair + " undefined (constant component, covariance 0)";
        continue;
      }
      const double rho = sab / std::sqrt(saa * sbb);
      ok = ok && std::abs(rho) < 0.05;
      detail += pair + " " + fmt(rho, 3);
    }
  return {ok, detail};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"Florentine census", florentine_census},
      {"Lazega census", lazega_census},
      {"Gamma sizes", gamma_sizes_check},
      {"Moments", moments},
      {"GoF reproduction", gof_reproduction},
      {"Method equivalence", method_equivalence},
      {"Covariance oracle", oracle_sweep},
      {"TV bounds", tv_bounds},
      {"Sparse decay", sparse_decay},
      {"Poisson convergence", poisson_convergence},
  };
  int failures = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << k + 1 << " (" << criteria[k].first
              << "): " << o.detail << std::endl;
  }
  std::cout << (criteria.size() - failures) << "/" << criteria.size() << " criteria passed" << std::endl;
  return failures == 0 ? 0 : 1;
}
