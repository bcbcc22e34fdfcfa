#include "mser/moments.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "mser/errors.hpp"
#include "mser/triangles.hpp"

namespace mser {

namespace {

double choose3(double n) { return n < 3 ? 0.0 : n * (n - 1) * (n - 2) / 6.0; }

// Sums over the ordered tuples of distinct layers, [L]^{m,!=}, as plain nested loops.
class TupleSums {
 public:
  explicit TupleSums(const std::vector<double>& p) : p_(p), L_(p.size()) {}

  template <typename F>
  double over1(F&& f) const {
    CompensatedSum s;
    for (std::size_t i = 0; i < L_; ++i) s += f(p_[i]);
    return s.value();
  }

  template <typename F>
  double over2(F&& f) const {
    CompensatedSum s;
    for (std::size_t i = 0; i < L_; ++i)
      for (std::size_t j = 0; j < L_; ++j) {
        if (j == i) continue;
        s += f(p_[i], p_[j]);
      }
    return s.value();
  }

  template <typename F>
  double over3(F&& f) const {
    CompensatedSum s;
    for (std::size_t i = 0; i < L_; ++i)
      for (std::size_t j = 0; j < L_; ++j) {
        if (j == i) continue;
        for (std::size_t k = 0; k < L_; ++k) {
          if (k == i || k == j) continue;
          s += f(p_[i], p_[j], p_[k]);
        }
      }
    return s.value();
  }

  template <typename F>
  double over4(F&& f) const {
    CompensatedSum s;
    for (std::size_t i = 0; i < L_; ++i)
      for (std::size_t j = 0; j < L_; ++j) {
        if (j == i) continue;
        for (std::size_t k = 0; k < L_; ++k) {
          if (k == i || k == j) continue;
          for (std::size_t l = 0; l < L_; ++l) {
            if (l == i || l == j || l == k) continue;
            s += f(p_[i], p_[j], p_[k], p_[l]);
          }
        }
      }
    return s.value();
  }

  template <typename F>
  double over5(F&& f) const {
    CompensatedSum s;
    for (std::size_t i = 0; i < L_; ++i)
      for (std::size_t j = 0; j < L_; ++j) {
        if (j == i) continue;
        for (std::size_t k = 0; k < L_; ++k) {
          if (k == i || k == j) continue;
          for (std::size_t l = 0; l < L_; ++l) {
            if (l == i || l == j || l == k) continue;
            for (std::size_t m = 0; m < L_; ++m) {
              if (m == i || m == j || m == k || m == l) continue;
              s += f(p_[i], p_[j], p_[k], p_[l], p_[m]);
            }
          }
        }
      }
    return s.value();
  }

 private:
  const std::vector<double>& p_;
  std::size_t L_;
};

double pw(double x, int k) {
  double r = 1.0;
  for (int e = 0; e < k; ++e) r *= x;
  return r;
}

// Edge indicator required by a triangle index, with its success probability.
struct Requirement {
  std::uint64_t key;
  double prob;
};

struct IndexRequirements {
  std::array<Requirement, 6> items{};
  std::size_t size = 0;
  double prob = 1.0;
  TriangleType type = TriangleType::OneD;
};

IndexRequirements requirements_of(const TriangleIndex& idx, const MserParams& params,
                                  std::uint64_t n, std::uint64_t L) {
  IndexRequirements r;
  r.type = idx.type();
  const auto add = [&r](std::uint64_t key, double prob) { r.items[r.size++] = {key, prob}; };
  const auto intra = [&](LayerIndex layer, NodeIndex u, NodeIndex v) {
    const std::uint64_t lo = std::min(u, v), hi = std::max(u, v);
    add((static_cast<std::uint64_t>(layer) * n + lo) * n + hi, params.p[layer]);
  };
  const std::uint64_t down_base = L * n * n;
  const auto down = [&](NodeIndex u, LayerIndex a, LayerIndex b) {
    const std::uint64_t lo = std::min(a, b), hi = std::max(a, b);
    add(down_base + (static_cast<std::uint64_t>(u) * L + lo) * L + hi, params.q);
  };

  const auto [a1, a2, a3] = idx.nodes;
  const auto [i, j, k] = idx.layers;
  intra(i, a1, a2);
  intra(j, a2, a3);
  intra(k, a3, a1);
  if (i != j) down(a2, i, j);
  if (j != k) down(a3, j, k);
  if (k != i) down(a1, k, i);

  std::sort(r.items.begin(), r.items.begin() + static_cast<std::ptrdiff_t>(r.size),
            [](const Requirement& x, const Requirement& y) { return x.key < y.key; });
  for (std::size_t t = 0; t < r.size; ++t) r.prob *= r.items[t].prob;
  return r;
}

// P(all requirements of a and b present); nullopt when they share nothing.
std::optional<double> joint_probability(const IndexRequirements& a, const IndexRequirements& b) {
  double prob = 1.0;
  bool shared = false;
  std::size_t x = 0, y = 0;
  while (x < a.size || y < b.size) {
    if (y == b.size || (x < a.size && a.items[x].key < b.items[y].key)) {
      prob *= a.items[x++].prob;
    } else if (x == a.size || b.items[y].key < a.items[x].key) {
      prob *= b.items[y++].prob;
    } else {
      prob *= a.items[x].prob;
      shared = true;
      ++x;
      ++y;
    }
  }
  if (!shared) return std::nullopt;
  return prob;
}

}  // namespace

CompensatedSum& CompensatedSum::operator+=(double x) {
  const double t = sum_ + x;
  if (std::abs(sum_) >= std::abs(x))
    compensation_ += (sum_ - t) + x;
  else
    compensation_ += (x - t) + sum_;
  sum_ = t;
  return *this;
}

MomentSummary expected_counts(const MserParams& params, std::size_t num_nodes) {
  params.validate();
  const double c3 = choose3(static_cast<double>(num_nodes));
  const double q = params.q;
  const TupleSums sums(params.p);

  MomentSummary m;
  m.lambda1 = c3 * sums.over1([](double pi) { return pw(pi, 3); });
  m.lambda2 = 3.0 * c3 * sums.over2([q](double pi, double pj) { return pi * pj * pj * q * q; });
  m.lambda3 = c3 * sums.over3([q](double pi, double pj, double pk) { return pi * pj * pk * pw(q, 3); });
  m.lambda_total = m.lambda1 + m.lambda2 + m.lambda3;
  return m;
}

CovarianceBoundReport covariance_bounds(const MserParams& params, std::size_t num_nodes) {
  params.validate();
  CovarianceBoundReport r;
  if (num_nodes < 3) return r;

  const double n = static_cast<double>(num_nodes);
  const double c3 = choose3(n);
  const double q = params.q;
  const double n3 = pw(n, 3), n4 = pw(n, 4), n5 = pw(n, 5);
  const TupleSums S(params.p);

  r.r11 = c3 * 3.0 * (n - 3.0) * S.over1([](double pi) { return pw(pi, 5) * (1.0 - pi); });

  r.r21 = S.over2([&](double pi, double pj) {
    return 3.0 * c3 * q * q *
           ((n - 2.0) * pw(pi, 3) * pw(pj, 2) * (1.0 - pi) +
            2.0 * (n - 3.0) * pi * pw(pj, 4) * (1.0 - pj) + pi * pw(pj, 3) * (1.0 - pj * pj));
  });

  r.r31 = 0.5 * n4 * S.over3([&](double pi, double pj, double pk) {
    return pw(pi, 3) * pj * pk * pw(q, 3);
  });

  {
    CompensatedSum s;
    s += n3 / 6.0 * S.over2([&](double pi, double pj) {
      return 4.0 * pw(pi, 2) * pw(pj, 2) * pw(q, 3) + pw(pi, 3) * pw(pj, 3) * q * q * (1.0 - q * q);
    });
    s += 4.0 / 3.0 * n3 * S.over3([&](double pi, double pj, double pk) {
      return pi * pw(pj, 2) * pk * pw(q, 4);
    });
    s += n4 / 6.0 * S.over2([&](double pi, double pj) {
      return 8.0 * pw(pi, 3) * pw(pj, 2) * pw(q, 3) +
             2.0 * pw(pi, 3) * pw(pj, 3) * pw(q, 3) * (1.0 - q) + pi * pw(pj, 4) * q * q +
             4.0 * pw(pi, 2) * pw(pj, 4) * pw(q, 3) * (1.0 - q) +
             pw(pi, 3) * pw(pj, 3) * q * q * (1.0 - q * q);
    });
    s += n4 / 6.0 * S.over3([&](double pi, double pj, double pk) {
      return 5.0 * pi * pw(pj, 2) * pw(pk, 2) * pw(q, 4) + 4.0 * pi * pw(pj, 3) * pk * pw(q, 4);
    });
    s += 2.0 / 3.0 * n3 * S.over2([&](double pi, double pj) {
      return pw(pi, 2) * pw(pj, 4) * pw(q, 3) * (1.0 - q) +
             pw(pi, 3) * pw(pj, 3) * pw(q, 3) * (1.0 - q);
    });
    r.r22 = s.value();
  }

  {
    CompensatedSum s;
    s += 3.0 * n3 * S.over3([&](double pi, double pj, double pk) {
      return 2.0 * pi * pw(pj, 2) * pk * pw(q, 4) +
             pw(pi, 2) * pw(pj, 3) * pk * pw(q, 4) * (1.0 - q);
    });
    s += 1.5 * n3 * S.over4([&](double pi, double pj, double pk, double pl) {
      return pi * pj * pk * pw(pl, 2) * pw(q, 5);
    });
    s += n4 * S.over3([&](double pi, double pj, double pk) {
      return 2.0 * pw(pi, 2) * pw(pj, 2) * pk * pw(q, 5) +
             2.0 * pw(pi, 2) * pw(pj, 3) * pk * pw(q, 4) * (1.0 - q) +
             pw(pi, 3) * pj * pk * pw(q, 4);
    });
    s += 1.5 * n4 * S.over4([&](double pi, double pj, double pk, double pl) {
      return pi * pj * pw(pk, 2) * pl * pw(q, 5);
    });
    s += 0.25 * n5 * S.over3([&](double pi, double pj, double pk) {
      return 4.0 * pi * pw(pj, 2) * pw(pk, 3) * pw(q, 4) * (1.0 - q);
    });
    r.r23 = s.value();
  }

  {
    CompensatedSum s;
    s += 0.5 * n3 * S.over3([&](double pi, double pj, double pk) {
      return pi * pw(pj, 2) * pw(pk, 2) * pw(q, 5);
    });
    s += 0.5 * n3 * S.over4([&](double pi, double pj, double pk, double pl) {
      return 3.0 * pi * pj * pk * pl * pw(q, 5) +
             pw(pi, 2) * pw(pj, 2) * pk * pl * pw(q, 5) * (1.0 - q);
    });
    s += 0.5 * n4 * S.over3([&](double pi, double pj, double pk) {
      return 2.0 * pw(pi, 2) * pw(pj, 2) * pw(pk, 2) * pw(q, 5) * (1.0 - q) +
             2.0 * pw(pi, 2) * pj * pw(pk, 2) * pw(q, 4);
    });
    s += 0.5 * n4 * S.over4([&](double pi, double pj, double pk, double pl) {
      return pw(pi, 2) * pw(pj, 2) * pk * pl * pw(q, 5) * (1.0 - q) +
             pi * pw(pj, 2) * pk * pl * pw(q, 5);
    });
    s += n3 * S.over5([&](double pi, double pj, double pk, double pl, double pm) {
      return pi * pj * pk * pl * pm * pw(q, 6);
    });
    s += 0.5 * n5 * S.over3([&](double pi, double pj, double pk) {
      return pw(pi, 2) * pw(pj, 2) * pw(pk, 2) * pw(q, 5) * (1.0 - q);
    });
    s += n4 * S.over5([&](double pi, double pj, double pk, double pl, double pm) {
      return pi * pj * pk * pl * pm * pw(q, 6);
    });
    s += 0.25 * n5 * S.over4([&](double pi, double pj, double pk, double pl) {
      return 2.0 * pi * pw(pj, 2) * pw(pk, 2) * pl * pw(q, 5) * (1.0 - q);
    });
    r.r33 = s.value();
  }
  return r;
}

CovarianceBoundReport exact_covariance_oracle(const MserParams& params, std::size_t num_nodes) {
  params.validate();
  const GammaSizes g = gamma_sizes(static_cast<std::int64_t>(num_nodes),
                                   static_cast<std::int64_t>(params.num_layers()));
  const double gamma = static_cast<double>(g.gamma1 + g.gamma2 + g.gamma3);
  if (gamma * gamma > kOraclePairLimit)
    throw SizeError("covariance oracle needs " + std::to_string(gamma * gamma) +
                    " pair evaluations; limit is " + std::to_string(kOraclePairLimit));

  const auto indices = all_indices(num_nodes, params.num_layers());
  std::vector<IndexRequirements> reqs;
  reqs.reserve(indices.size());
  for (const auto& idx : indices)
    reqs.push_back(requirements_of(idx, params, num_nodes, params.num_layers()));

  // slot of (type(a), type(b)) in the report, or -1 for the mirrored classes
  const auto slot = [](TriangleType a, TriangleType b) -> int {
    const int x = static_cast<int>(a), y = static_cast<int>(b);
    if (x == 1 && y == 1) return 0;
    if (x == 2 && y == 1) return 1;
    if (x == 3 && y == 1) return 2;
    if (x == 2 && y == 2) return 3;
    if (x == 2 && y == 3) return 4;
    if (x == 3 && y == 3) return 5;
    return -1;
  };

  std::array<CompensatedSum, 6> totals;
  for (std::size_t a = 0; a < reqs.size(); ++a) {
    std::array<CompensatedSum, 6> row;
    for (std::size_t b = 0; b < reqs.size(); ++b) {
      if (a == b) continue;
      const int s = slot(reqs[a].type, reqs[b].type);
      if (s < 0) continue;
      const auto joint = joint_probability(reqs[a], reqs[b]);
      if (!joint) continue;
      row[s] += *joint - reqs[a].prob * reqs[b].prob;
    }
    for (std::size_t s = 0; s < 6; ++s) totals[s] += row[s].value();
  }

  CovarianceBoundReport r;
  r.r11 = totals[0].value();
  r.r21 = totals[1].value();
  r.r31 = totals[2].value();
  r.r22 = totals[3].value();
  r.r23 = totals[4].value();
  r.r33 = totals[5].value();
  return r;
}

TvBoundReport tv_bound_general(const MserParams& params, std::size_t num_nodes) {
  params.validate();
  const double c3 = choose3(static_cast<double>(num_nodes));
  const double q = params.q;
  const TupleSums S(params.p);

  TvBoundReport t;
  // sum of P(X_alpha = 1)^2 over all canonical indices
  CompensatedSum ind;
  ind += c3 * S.over1([](double pi) { return pw(pi, 6); });
  ind += 3.0 * c3 * S.over2([q](double pi, double pj) { return pw(pi, 2) * pw(pj, 4) * pw(q, 4); });
  ind += c3 * S.over3([q](double pi, double pj, double pk) {
    return pw(pi, 2) * pw(pj, 2) * pw(pk, 2) * pw(q, 6);
  });
  t.indicator_term = ind.value();

  const auto r = covariance_bounds(params, num_nodes);
  CompensatedSum cov;
  cov += r.r11;
  cov += r.r22;
  cov += r.r33;
  cov += 2.0 * r.r21;
  cov += 2.0 * r.r31;
  cov += 2.0 * r.r23;
  t.covariance_term = cov.value();
  t.general_bound = t.indicator_term + t.covariance_term;

  if (params.uniform() && q == 1.0)
    t.uniform_bound = tv_bound_uniform(params.p.front(), num_nodes, params.num_layers());
  t.uninformative = t.general_bound >= 1.0;
  return t;
}

double tv_bound_uniform(double p, std::size_t num_nodes, std::size_t num_layers) {
  if (!(p >= 0.0 && p <= 1.0)) throw ValidationError("p = " + std::to_string(p) + " is not a probability");
  const double n = static_cast<double>(num_nodes);
  const double L = static_cast<double>(num_layers);
  return 21.0 * pw(L, 5) * pw(n, 4) * pw(p, 5) + 107.0 / 6.0 * pw(L, 4) * pw(n, 3) * pw(p, 4);
}

}  // namespace mser
