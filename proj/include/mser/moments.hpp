#pragma once

#include <cstddef>
#include <optional>

#include "mser/model.hpp"

namespace mser {

/// Expected 1D, 2D and 3D triangle counts under the MSER model.
struct MomentSummary {
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double lambda3 = 0.0;
  double lambda_total = 0.0;
};

/// Sums of Cov(X_alpha, X_beta) over ordered pairs of distinct canonical
/// indices, grouped by (type(alpha), type(beta)). For the closed-form report
/// r11 and r21 are exact, the other four are upper bounds.
struct CovarianceBoundReport {
  double r11 = 0.0;
  double r21 = 0.0;
  double r31 = 0.0;
  double r22 = 0.0;
  double r23 = 0.0;
  double r33 = 0.0;
  bool r11_exact = true;
  bool r21_exact = true;
};

struct TvBoundReport {
  double indicator_term = 0.0;
  double covariance_term = 0.0;
  double general_bound = 0.0;
  /// Present only when every p_i is equal and q == 1.
  std::optional<double> uniform_bound;
  /// A total-variation bound >= 1 says nothing.
  bool uninformative = false;
};

/// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  CompensatedSum& operator+=(double x);
  double value() const { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

MomentSummary expected_counts(const MserParams& params, std::size_t num_nodes);

/// Closed-form covariance sums; zero for n < 3.
CovarianceBoundReport covariance_bounds(const MserParams& params, std::size_t num_nodes);

/// Largest |Gamma|^2 the brute-force oracle accepts.
inline constexpr double kOraclePairLimit = 1e8;

/// Brute-force covariance class sums over all ordered pairs of distinct
/// canonical indices. E[X_a X_b] is the probability that the union of the two
/// required edge sets is present. Throws SizeError above kOraclePairLimit.
CovarianceBoundReport exact_covariance_oracle(const MserParams& params, std::size_t num_nodes);

/// Multivariate Poisson total-variation bound for (W1, W2, W3).
TvBoundReport tv_bound_general(const MserParams& params, std::size_t num_nodes);

/// Closed-form bound for equal p and q = 1:
/// 21 L^5 n^4 p^5 + (107/6) L^4 n^3 p^4.
double tv_bound_uniform(double p, std::size_t num_nodes, std::size_t num_layers);

}  // namespace mser
