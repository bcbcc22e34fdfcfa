#include "mser/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include <CLI11.hpp>

#include "mser/errors.hpp"
#include "mser/gof.hpp"
#include "mser/io.hpp"
#include "mser/model.hpp"
#include "mser/moments.hpp"
#include "mser/report.hpp"
#include "mser/triangles.hpp"

namespace mser {

namespace {

struct Input {
  std::string source;
  std::string bytes;
  LabeledNetwork net;
};

Input read_input(const std::string& path, std::istream& in) {
  std::string bytes;
  std::string source = path;
  if (path == "-") {
    bytes.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
    source = "<stdin>";
  } else {
    bytes = read_file(path);
  }
  auto net = parse_network_text(bytes, source);
  return {source, std::move(bytes), std::move(net)};
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot write " + path);
  f << text;
}

std::vector<Statistic> parse_statistics(const std::vector<std::string>& names) {
  std::vector<Statistic> out;
  for (const auto& s : names) out.push_back(parse_statistic(s));
  return out;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Multislice Erdos-Renyi triangle analysis", "mser"};
  app.require_subcommand(1);

  std::string file;
  bool pooled = false;
  std::size_t reps = 999;
  std::uint64_t seed = 1;
  double alpha = 0.05;
  double q = 1.0;
  std::size_t threads = 0;
  std::vector<std::string> stats{"W1", "W2", "W3", "TOTAL"};

  auto* count = app.add_subcommand("count", "Triangle census by trace products and by enumeration");
  count->add_option("file", file, "network file, or - for stdin")->required();
  bool count_json = false;
  count->add_flag("--json", count_json, "emit JSON instead of the one-line summary");

  auto* fit = app.add_subcommand("fit", "Maximum-likelihood MSER parameters");
  fit->add_option("file", file, "network file, or - for stdin")->required();
  fit->add_flag("--pooled", pooled, "one edge probability shared by all layers");

  auto* simulate = app.add_subcommand("simulate", "Sample one MSER network");
  std::size_t sim_n = 0, sim_layers = 0;
  std::vector<double> sim_p;
  std::string sim_out;
  simulate->add_option("--n", sim_n, "number of basis nodes")->required()->check(CLI::PositiveNumber);
  simulate->add_option("--layers", sim_layers, "number of layers")->required()->check(CLI::PositiveNumber);
  simulate->add_option("--p", sim_p, "edge probability per layer (one value is shared)")->required();
  simulate->add_option("--q", q, "inter-layer link probability");
  simulate->add_option("--seed", seed, "random seed");
  simulate->add_option("--out", sim_out, "output file (default stdout)");

  auto* gof = app.add_subcommand("gof", "Monte Carlo goodness-of-fit test of the fitted MSER null");
  std::string histogram_path;
  gof->add_option("file", file, "network file, or - for stdin")->required();
  gof->add_flag("--pooled", pooled, "fit one edge probability shared by all layers");
  gof->add_option("--reps", reps, "number of simulated networks")->check(CLI::PositiveNumber);
  gof->add_option("--seed", seed, "master seed");
  gof->add_option("--alpha", alpha, "two-sided significance level")->check(CLI::Range(0.0, 1.0));
  gof->add_option("--q", q, "inter-layer link probability of the null");
  gof->add_option("--stat", stats, "statistics to test (W1 W2 W3 TOTAL)");
  gof->add_option("--threads", threads, "worker threads (0 = all cores)");
  gof->add_option("--histogram", histogram_path, "write statistic,value,count CSV here");

  auto* bound = app.add_subcommand("bound", "Total-variation bounds for the Poisson approximation");
  std::size_t bound_n = 0;
  std::vector<double> bound_p;
  bound->add_option("file", file, "network file to fit, or - for stdin");
  bound->add_flag("--pooled", pooled, "fit one edge probability shared by all layers");
  bound->add_option("--n", bound_n, "number of basis nodes (with --p instead of a file)");
  bound->add_option("--p", bound_p, "edge probability per layer");
  bound->add_option("--q", q, "inter-layer link probability");

  auto* report = app.add_subcommand("report", "Full analysis report as JSON");
  std::vector<std::string> references;
  bool no_gof = false;
  report->add_option("file", file, "network file, or - for stdin")->required();
  report->add_flag("--pooled", pooled, "fit one edge probability shared by all layers");
  report->add_option("--reps", reps, "number of simulated networks")->check(CLI::PositiveNumber);
  report->add_option("--seed", seed, "master seed");
  report->add_option("--alpha", alpha, "two-sided significance level")->check(CLI::Range(0.0, 1.0));
  report->add_option("--q", q, "inter-layer link probability of the null");
  report->add_option("--stat", stats, "statistics to test (W1 W2 W3 TOTAL)");
  report->add_option("--threads", threads, "worker threads (0 = all cores)");
  report->add_option("--reference", references, "reference value to compare, e.g. lambda3=2319");
  report->add_flag("--no-gof", no_gof, "skip the Monte Carlo test");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "mser: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    if (count->parsed()) {
      const auto input = read_input(file, in);
      const auto by_trace = count_by_trace(supra_matrices(input.net.network));
      const auto by_enum = count_by_enumeration(input.net.network);
      const bool agree = by_trace == by_enum;
      if (count_json) {
        out << dump_json(json{{"trace", by_trace}, {"enumeration", by_enum}, {"methods_agree", agree}});
      } else {
        out << "1D " << by_enum.w1 << ", 2D " << by_enum.w2 << ", 3D " << by_enum.w3 << ", "
            << (agree ? "methods agree" : "METHODS DISAGREE") << '\n';
      }
      if (!agree) {
        err << "mser: trace count (" << by_trace.w1 << ", " << by_trace.w2 << ", " << by_trace.w3
            << ") differs from enumeration\n";
        return kExitInternal;
      }
      return kExitOk;
    }

    if (fit->parsed()) {
      const auto input = read_input(file, in);
      out << dump_json(json{{"pooled", pooled}, {"params", fit_mle(input.net.network, pooled)}});
      return kExitOk;
    }

    if (simulate->parsed()) {
      MserParams params;
      if (sim_p.size() == 1) {
        params.p.assign(sim_layers, sim_p.front());
      } else if (sim_p.size() == sim_layers) {
        params.p = sim_p;
      } else {
        err << "mser: --p needs 1 or " << sim_layers << " values\n";
        return kExitUsage;
      }
      params.q = q;
      const LabeledNetwork net{sample(params, sim_n, RngSeed{seed}), {}, {}};
      if (sim_out.empty())
        write_network(out, net);
      else
        write_text(sim_out, serialize_network(net));
      return kExitOk;
    }

    if (gof->parsed()) {
      const auto input = read_input(file, in);
      GofConfig cfg;
      cfg.num_replicates = reps;
      cfg.master_seed = RngSeed{seed};
      cfg.alpha = alpha;
      cfg.statistics = parse_statistics(stats);
      cfg.null_params = fit_mle(input.net.network, pooled);
      cfg.null_params.q = q;
      cfg.num_nodes = input.net.network.num_nodes();
      cfg.num_threads = threads;
      const auto result = run_gof(input.net.network, cfg);
      out << dump_json(json{{"fit", {{"pooled", pooled}, {"params", cfg.null_params}}}, {"gof", result}});
      if (!histogram_path.empty()) write_text(histogram_path, histogram_csv(result));
      return kExitOk;
    }

    if (bound->parsed()) {
      MserParams params;
      std::size_t n = 0;
      if (!file.empty()) {
        if (!bound_p.empty() || bound_n != 0) {
          err << "mser: bound takes either a file or --n/--p, not both\n";
          return kExitUsage;
        }
        const auto input = read_input(file, in);
        params = fit_mle(input.net.network, pooled);
        n = input.net.network.num_nodes();
      } else {
        if (bound_p.empty() || bound_n == 0) {
          err << "mser: bound needs a file or both --n and --p\n\n" << bound->help();
          return kExitUsage;
        }
        params.p = bound_p;
        n = bound_n;
      }
      params.q = q;
      out << dump_json(json{{"num_nodes", n},
                            {"params", params},
                            {"moments", expected_counts(params, n)},
                            {"covariance_bounds", covariance_bounds(params, n)},
                            {"tv_bound", tv_bound_general(params, n)}});
      return kExitOk;
    }

    if (report->parsed()) {
      const auto input = read_input(file, in);
      ReportOptions opts;
      opts.pooled = pooled;
      opts.q = q;
      opts.run_gof = !no_gof;
      opts.num_replicates = reps;
      opts.seed = RngSeed{seed};
      opts.alpha = alpha;
      opts.statistics = parse_statistics(stats);
      opts.num_threads = threads;
      for (const auto& r : references) opts.references.push_back(parse_reference(r));
      const auto rep = build_report(input.net, input.source, digest_hex(input.bytes), opts);
      out << dump_json(json(rep));
      return kExitOk;
    }
  } catch (const ParseError& e) {
    err << "mser: " << e.what() << '\n';
    return kExitParse;
  } catch (const ConsistencyError& e) {
    err << "mser: internal consistency check failed: " << e.what() << '\n';
    return kExitInternal;
  } catch (const ValidationError& e) {
    err << "mser: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ConfigError& e) {
    err << "mser: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "mser: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitUsage;
}

}  // namespace mser
