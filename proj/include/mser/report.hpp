#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "mser/gof.hpp"
#include "mser/io.hpp"
#include "mser/model.hpp"
#include "mser/moments.hpp"
#include "mser/triangles.hpp"

namespace mser {

inline constexpr std::string_view kReportSchemaId = "mser-analysis-report/1";

/// An external figure to compare against, e.g. {"lambda3", 2319}.
struct ReferenceValue {
  std::string quantity;
  double value = 0.0;
};

/// Parses "name=value".
ReferenceValue parse_reference(std::string_view text);

struct ReferenceCheck {
  std::string quantity;
  double computed = 0.0;
  double reference = 0.0;
  double relative_gap = 0.0;
  bool mismatch = false;
};

struct ReportOptions {
  bool pooled = false;
  double q = 1.0;
  bool run_gof = true;
  std::size_t num_replicates = 999;
  RngSeed seed{1};
  double alpha = 0.05;
  std::vector<Statistic> statistics{Statistic::W1, Statistic::W2, Statistic::W3, Statistic::Total};
  std::size_t num_threads = 0;
  std::vector<ReferenceValue> references;
  /// Relative gap above which a reference value is flagged.
  double reference_tolerance = 0.005;
};

struct AnalysisReport {
  std::string source;
  std::string digest;
  std::size_t num_nodes = 0;
  std::size_t num_layers = 0;
  std::vector<std::string> layer_names;
  std::vector<std::size_t> edges_per_layer;
  std::size_t coupling_count = 0;

  bool pooled = false;
  MserParams params;
  GammaSizes gamma;

  TriangleCounts counts_trace;
  TriangleCounts counts_enumeration;
  bool methods_agree = false;
  std::vector<std::int64_t> one_d_per_layer;

  MomentSummary moments;
  CovarianceBoundReport covariance;
  TvBoundReport tv;
  std::optional<GofResult> gof;
  std::vector<ReferenceCheck> references;
};

AnalysisReport build_report(const LabeledNetwork& net, std::string_view source,
                            std::string_view digest, const ReportOptions& options);

/// Looks up a reportable scalar by name (w1, lambda3, tv_uniform, ...).
/// Throws ConfigError for unknown names or quantities absent from the report.
double report_quantity(const AnalysisReport& report, std::string_view name);

using nlohmann::json;

void to_json(json& j, const MserParams& v);
void from_json(const json& j, MserParams& v);
void to_json(json& j, const TriangleCounts& v);
void from_json(const json& j, TriangleCounts& v);
void to_json(json& j, const GammaSizes& v);
void from_json(const json& j, GammaSizes& v);
void to_json(json& j, const MomentSummary& v);
void from_json(const json& j, MomentSummary& v);
void to_json(json& j, const CovarianceBoundReport& v);
void from_json(const json& j, CovarianceBoundReport& v);
void to_json(json& j, const TvBoundReport& v);
void from_json(const json& j, TvBoundReport& v);
void to_json(json& j, const StatisticResult& v);
void from_json(const json& j, StatisticResult& v);
void to_json(json& j, const GofResult& v);
void from_json(const json& j, GofResult& v);
void to_json(json& j, const ReferenceCheck& v);
void from_json(const json& j, ReferenceCheck& v);
void to_json(json& j, const AnalysisReport& v);
void from_json(const json& j, AnalysisReport& v);

/// Pretty-printed JSON with a trailing newline.
std::string dump_json(const json& j);

/// "statistic,value,count" rows for every tested statistic.
std::string histogram_csv(const GofResult& gof);

}  // namespace mser
