#include "mser/report.hpp"

#include <cmath>
#include <sstream>

#include "mser/errors.hpp"

namespace mser {

ReferenceValue parse_reference(std::string_view text) {
  const auto eq = text.find('=');
  if (eq == std::string_view::npos || eq == 0 || eq + 1 == text.size())
    throw ConfigError("reference must look like name=value, got '" + std::string(text) + "'");
  ReferenceValue r;
  r.quantity = std::string(text.substr(0, eq));
  const std::string number(text.substr(eq + 1));
  std::size_t used = 0;
  try {
    r.value = std::stod(number, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != number.size()) throw ConfigError("reference value '" + number + "' is not a number");
  return r;
}

AnalysisReport build_report(const LabeledNetwork& lnet, std::string_view source,
                            std::string_view digest, const ReportOptions& options) {
  const auto& net = lnet.network;
  AnalysisReport r;
  r.source = std::string(source);
  r.digest = std::string(digest);
  r.num_nodes = net.num_nodes();
  r.num_layers = net.num_layers();
  for (LayerIndex i = 0; i < net.num_layers(); ++i) {
    r.layer_names.push_back(lnet.layer_name(i));
    r.edges_per_layer.push_back(net.edge_count(i));
  }
  r.coupling_count = net.coupling_count();

  r.pooled = options.pooled;
  r.params = fit_mle(net, options.pooled);
  r.params.q = options.q;
  r.gamma = gamma_sizes(static_cast<std::int64_t>(r.num_nodes), static_cast<std::int64_t>(r.num_layers));

  r.counts_trace = count_by_trace(supra_matrices(net));
  r.counts_enumeration = count_by_enumeration(net);
  r.methods_agree = r.counts_trace == r.counts_enumeration;
  r.one_d_per_layer.assign(r.num_layers, 0);
  for (const auto& idx : enumerate_present(net, TriangleType::OneD)) ++r.one_d_per_layer[idx.layers[0]];

  r.moments = expected_counts(r.params, r.num_nodes);
  r.covariance = covariance_bounds(r.params, r.num_nodes);
  r.tv = tv_bound_general(r.params, r.num_nodes);

  if (options.run_gof) {
    GofConfig cfg;
    cfg.num_replicates = options.num_replicates;
    cfg.master_seed = options.seed;
    cfg.statistics = options.statistics;
    cfg.alpha = options.alpha;
    cfg.null_params = r.params;
    cfg.num_nodes = r.num_nodes;
    cfg.num_threads = options.num_threads;
    r.gof = run_gof(net, cfg);
  }

  for (const auto& ref : options.references) {
    ReferenceCheck c;
    c.quantity = ref.quantity;
    c.computed = report_quantity(r, ref.quantity);
    c.reference = ref.value;
    const double scale = ref.value != 0.0 ? std::abs(ref.value) : 1.0;
    c.relative_gap = std::abs(c.computed - ref.value) / scale;
    c.mismatch = c.relative_gap > options.reference_tolerance;
    r.references.push_back(c);
  }
  return r;
}

double report_quantity(const AnalysisReport& r, std::string_view name) {
  const auto& t = r.counts_enumeration;
  if (name == "w1") return static_cast<double>(t.w1);
  if (name == "w2") return static_cast<double>(t.w2);
  if (name == "w3") return static_cast<double>(t.w3);
  if (name == "total") return static_cast<double>(t.total());
  if (name == "gamma1") return static_cast<double>(r.gamma.gamma1);
  if (name == "gamma2") return static_cast<double>(r.gamma.gamma2);
  if (name == "gamma3") return static_cast<double>(r.gamma.gamma3);
  if (name == "lambda1") return r.moments.lambda1;
  if (name == "lambda2") return r.moments.lambda2;
  if (name == "lambda3") return r.moments.lambda3;
  if (name == "lambda_total") return r.moments.lambda_total;
  if (name == "tv_general") return r.tv.general_bound;
  if (name == "tv_uniform") {
    if (!r.tv.uniform_bound) throw ConfigError("tv_uniform needs equal p across layers and q = 1");
    return *r.tv.uniform_bound;
  }
  if (name.size() > 1 && name.front() == 'p') {
    std::size_t layer = 0;
    try {
      layer = std::stoul(std::string(name.substr(1)));
    } catch (const std::exception&) {
      throw ConfigError("unknown report quantity '" + std::string(name) + "'");
    }
    if (layer < 1 || layer > r.params.p.size())
      throw ConfigError("no layer " + std::to_string(layer) + " for '" + std::string(name) + "'");
    return r.params.p[layer - 1];
  }
  throw ConfigError("unknown report quantity '" + std::string(name) + "'");
}

void to_json(json& j, const MserParams& v) { j = json{{"p", v.p}, {"q", v.q}}; }
void from_json(const json& j, MserParams& v) {
  j.at("p").get_to(v.p);
  j.at("q").get_to(v.q);
}

void to_json(json& j, const TriangleCounts& v) {
  j = json{{"w1", v.w1}, {"w2", v.w2}, {"w3", v.w3}, {"total", v.total()}};
}
void from_json(const json& j, TriangleCounts& v) {
  j.at("w1").get_to(v.w1);
  j.at("w2").get_to(v.w2);
  j.at("w3").get_to(v.w3);
}

void to_json(json& j, const GammaSizes& v) {
  j = json{{"gamma1", v.gamma1}, {"gamma2", v.gamma2}, {"gamma3", v.gamma3}};
}
void from_json(const json& j, GammaSizes& v) {
  j.at("gamma1").get_to(v.gamma1);
  j.at("gamma2").get_to(v.gamma2);
  j.at("gamma3").get_to(v.gamma3);
}

void to_json(json& j, const MomentSummary& v) {
  j = json{{"lambda1", v.lambda1}, {"lambda2", v.lambda2}, {"lambda3", v.lambda3},
           {"lambda_total", v.lambda_total}};
}
void from_json(const json& j, MomentSummary& v) {
  j.at("lambda1").get_to(v.lambda1);
  j.at("lambda2").get_to(v.lambda2);
  j.at("lambda3").get_to(v.lambda3);
  j.at("lambda_total").get_to(v.lambda_total);
}

void to_json(json& j, const CovarianceBoundReport& v) {
  j = json{{"r11", v.r11}, {"r21", v.r21}, {"r31", v.r31}, {"r22", v.r22},
           {"r23", v.r23}, {"r33", v.r33}, {"r11_exact", v.r11_exact}, {"r21_exact", v.r21_exact}};
}
void from_json(const json& j, CovarianceBoundReport& v) {
  j.at("r11").get_to(v.r11);
  j.at("r21").get_to(v.r21);
  j.at("r31").get_to(v.r31);
  j.at("r22").get_to(v.r22);
  j.at("r23").get_to(v.r23);
  j.at("r33").get_to(v.r33);
  j.at("r11_exact").get_to(v.r11_exact);
  j.at("r21_exact").get_to(v.r21_exact);
}

void to_json(json& j, const TvBoundReport& v) {
  j = json{{"indicator_term", v.indicator_term},
           {"covariance_term", v.covariance_term},
           {"general_bound", v.general_bound},
           {"uniform_bound", v.uniform_bound ? json(*v.uniform_bound) : json(nullptr)},
           {"uninformative", v.uninformative}};
}
void from_json(const json& j, TvBoundReport& v) {
  j.at("indicator_term").get_to(v.indicator_term);
  j.at("covariance_term").get_to(v.covariance_term);
  j.at("general_bound").get_to(v.general_bound);
  const auto& u = j.at("uniform_bound");
  v.uniform_bound = u.is_null() ? std::nullopt : std::optional<double>(u.get<double>());
  j.at("uninformative").get_to(v.uninformative);
}

void to_json(json& j, const StatisticResult& v) {
  j = json{{"statistic", to_string(v.statistic)},
           {"observed", v.observed},
           {"q_low", v.q_low},
           {"q_high", v.q_high},
           {"greater", v.greater},
           {"ties", v.ties},
           {"p_value", v.p_value},
           {"reject", v.reject},
           {"simulated", v.simulated}};
}
void from_json(const json& j, StatisticResult& v) {
  v.statistic = parse_statistic(j.at("statistic").get<std::string>());
  j.at("observed").get_to(v.observed);
  j.at("q_low").get_to(v.q_low);
  j.at("q_high").get_to(v.q_high);
  j.at("greater").get_to(v.greater);
  j.at("ties").get_to(v.ties);
  j.at("p_value").get_to(v.p_value);
  j.at("reject").get_to(v.reject);
  j.at("simulated").get_to(v.simulated);
}

void to_json(json& j, const GofResult& v) {
  j = json{{"num_replicates", v.num_replicates},
           {"alpha", v.alpha},
           {"seed", v.master_seed.value},
           {"observed", v.observed},
           {"statistics", v.statistics}};
}
void from_json(const json& j, GofResult& v) {
  j.at("num_replicates").get_to(v.num_replicates);
  j.at("alpha").get_to(v.alpha);
  j.at("seed").get_to(v.master_seed.value);
  j.at("observed").get_to(v.observed);
  j.at("statistics").get_to(v.statistics);
}

void to_json(json& j, const ReferenceCheck& v) {
  j = json{{"quantity", v.quantity},
           {"computed", v.computed},
           {"reference", v.reference},
           {"relative_gap", v.relative_gap},
           {"mismatch", v.mismatch}};
}
void from_json(const json& j, ReferenceCheck& v) {
  j.at("quantity").get_to(v.quantity);
  j.at("computed").get_to(v.computed);
  j.at("reference").get_to(v.reference);
  j.at("relative_gap").get_to(v.relative_gap);
  j.at("mismatch").get_to(v.mismatch);
}

void to_json(json& j, const AnalysisReport& v) {
  j = json{{"schema", kReportSchemaId},
           {"input",
            {{"source", v.source},
             {"digest", v.digest},
             {"num_nodes", v.num_nodes},
             {"num_layers", v.num_layers},
             {"layer_names", v.layer_names},
             {"edges_per_layer", v.edges_per_layer},
             {"coupling_count", v.coupling_count}}},
           {"fit", {{"pooled", v.pooled}, {"params", v.params}}},
           {"gamma_sizes", v.gamma},
           {"counts",
            {{"trace", v.counts_trace},
             {"enumeration", v.counts_enumeration},
             {"methods_agree", v.methods_agree},
             {"one_d_per_layer", v.one_d_per_layer}}},
           {"moments", v.moments},
           {"covariance_bounds", v.covariance},
           {"tv_bound", v.tv},
           {"gof", v.gof ? json(*v.gof) : json(nullptr)},
           {"references", v.references}};
}

void from_json(const json& j, AnalysisReport& v) {
  if (j.at("schema").get<std::string>() != kReportSchemaId)
    throw ConfigError("unsupported report schema " + j.at("schema").dump());
  const auto& in = j.at("input");
  in.at("source").get_to(v.source);
  in.at("digest").get_to(v.digest);
  in.at("num_nodes").get_to(v.num_nodes);
  in.at("num_layers").get_to(v.num_layers);
  in.at("layer_names").get_to(v.layer_names);
  in.at("edges_per_layer").get_to(v.edges_per_layer);
  in.at("coupling_count").get_to(v.coupling_count);
  j.at("fit").at("pooled").get_to(v.pooled);
  j.at("fit").at("params").get_to(v.params);
  j.at("gamma_sizes").get_to(v.gamma);
  const auto& c = j.at("counts");
  c.at("trace").get_to(v.counts_trace);
  c.at("enumeration").get_to(v.counts_enumeration);
  c.at("methods_agree").get_to(v.methods_agree);
  c.at("one_d_per_layer").get_to(v.one_d_per_layer);
  j.at("moments").get_to(v.moments);
  j.at("covariance_bounds").get_to(v.covariance);
  j.at("tv_bound").get_to(v.tv);
  const auto& g = j.at("gof");
  v.gof = g.is_null() ? std::nullopt : std::optional<GofResult>(g.get<GofResult>());
  j.at("references").get_to(v.references);
}

std::string dump_json(const json& j) { return j.dump(2) + "\n"; }

std::string histogram_csv(const GofResult& gof) {
  std::ostringstream os;
  os << "statistic,value,count\n";
  for (const auto& s : gof.statistics)
    for (const auto& [value, count] : histogram(s.simulated))
      os << to_string(s.statistic) << ',' << value << ',' << count << '\n';
  return os.str();
}

}  // namespace mser
