#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <algorithm>
#include <sstream>

#include "mser/cli.hpp"
#include "mser/errors.hpp"
#include "mser/gof.hpp"
#include "mser/io.hpp"
#include "mser/model.hpp"
#include "mser/moments.hpp"
#include "mser/network.hpp"
#include "mser/report.hpp"
#include "mser/triangles.hpp"

namespace py = pybind11;
using namespace mser;

namespace {

MultisliceNetwork build(std::size_t n, std::size_t layers,
                        const std::vector<std::tuple<LayerIndex, NodeIndex, NodeIndex>>& edges,
                        const py::object& coupled) {
  std::vector<IntraEdge> intra;
  intra.reserve(edges.size());
  for (const auto& [l, u, v] : edges) intra.push_back({l, u, v});
  if (coupled.is_none() || (py::isinstance<py::str>(coupled) && coupled.cast<std::string>() == "FULL"))
    return MultisliceNetwork::build(n, layers, intra, FullCoupling{});
  std::vector<Coupling> cs;
  for (const auto& [i, j, u] : coupled.cast<std::vector<std::tuple<LayerIndex, LayerIndex, NodeIndex>>>())
    cs.push_back({i, j, u});
  return MultisliceNetwork::build(n, layers, intra, cs);
}

py::object to_py(const json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

py::tuple counts_tuple(const TriangleCounts& c) { return py::make_tuple(c.w1, c.w2, c.w3); }

py::dict params_dict(const MserParams& p) {
  py::dict d;
  d["p"] = p.p;
  d["q"] = p.q;
  return d;
}

MserParams make_params(const std::vector<double>& p, double q) {
  MserParams params{p, q};
  params.validate();
  return params;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Triangle census, MSER model fitting, moment bounds and Monte Carlo tests";

  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<ConsistencyError>(m, "ConsistencyError", PyExc_RuntimeError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<SizeError>(m, "SizeError", PyExc_ValueError);

  py::class_<MultisliceNetwork>(m, "MultisliceNetwork")
      .def_property_readonly("num_nodes", &MultisliceNetwork::num_nodes)
      .def_property_readonly("num_layers", &MultisliceNetwork::num_layers)
      .def("edge_count", &MultisliceNetwork::edge_count, py::arg("layer"))
      .def_property_readonly("coupling_count", &MultisliceNetwork::coupling_count)
      .def("has_edge", &MultisliceNetwork::has_edge, py::arg("layer"), py::arg("u"), py::arg("v"))
      .def("edges", [](const MultisliceNetwork& n, LayerIndex layer) {
        const auto e = n.edges(layer);
        return std::vector<NodePair>(e.begin(), e.end());
      })
      .def("__repr__", [](const MultisliceNetwork& n) {
        return "<MultisliceNetwork n=" + std::to_string(n.num_nodes()) +
               " L=" + std::to_string(n.num_layers()) +
               " edges=" + std::to_string(n.total_edge_count()) + ">";
      });

  m.def("build_network", &build, py::arg("n"), py::arg("layers"), py::arg("edges"),
        py::arg("coupled") = py::none(),
        "Edges are (layer, u, v); coupled is 'FULL', None (= FULL) or a list of (i, j, u).");
  m.def("load_network", [](const std::filesystem::path& path) { return load_network(path).network; },
        py::arg("path"));
  m.def("parse_network", [](const std::string& text) { return parse_network_text(text).network; },
        py::arg("text"));

  m.def("gamma_sizes", [](std::int64_t n, std::int64_t L) {
    const auto g = gamma_sizes(n, L);
    return py::make_tuple(g.gamma1, g.gamma2, g.gamma3);
  }, py::arg("n"), py::arg("layers"));
  m.def("count_by_trace", [](const MultisliceNetwork& net) {
    return counts_tuple(count_by_trace(supra_matrices(net)));
  }, py::arg("net"));
  m.def("count_by_enumeration", [](const MultisliceNetwork& net) {
    return counts_tuple(count_by_enumeration(net));
  }, py::arg("net"));
  m.def("count_fast", [](const MultisliceNetwork& net) { return counts_tuple(count_fast(net)); },
        py::arg("net"));
  m.def("enumerate_present", [](const MultisliceNetwork& net, std::optional<int> type) {
    std::optional<TriangleType> filter;
    if (type) filter = static_cast<TriangleType>(*type);
    std::vector<py::tuple> out;
    for (const auto& idx : enumerate_present(net, filter)) {
      const auto [a, b, c] = idx.nodes;
      const auto [i, j, k] = idx.layers;
      out.push_back(py::make_tuple(py::make_tuple(a, b, c), py::make_tuple(i, j, k)));
    }
    return out;
  }, py::arg("net"), py::arg("type") = py::none());

  m.def("sample", [](const std::vector<double>& p, double q, std::size_t n, std::uint64_t seed) {
    return sample(make_params(p, q), n, RngSeed{seed});
  }, py::arg("p"), py::arg("q"), py::arg("n"), py::arg("seed"));
  m.def("fit_mle", [](const MultisliceNetwork& net, bool pooled) {
    return params_dict(fit_mle(net, pooled));
  }, py::arg("net"), py::arg("pooled") = false);

  m.def("expected_counts", [](const std::vector<double>& p, double q, std::size_t n) {
    const auto s = expected_counts(make_params(p, q), n);
    return py::make_tuple(s.lambda1, s.lambda2, s.lambda3);
  }, py::arg("p"), py::arg("q"), py::arg("n"));
  m.def("covariance_bounds", [](const std::vector<double>& p, double q, std::size_t n) {
    return to_py(json(covariance_bounds(make_params(p, q), n)));
  }, py::arg("p"), py::arg("q"), py::arg("n"));
  m.def("exact_covariance_oracle", [](const std::vector<double>& p, double q, std::size_t n) {
    return to_py(json(exact_covariance_oracle(make_params(p, q), n)));
  }, py::arg("p"), py::arg("q"), py::arg("n"));
  m.def("tv_bound_general", [](const std::vector<double>& p, double q, std::size_t n) {
    return to_py(json(tv_bound_general(make_params(p, q), n)));
  }, py::arg("p"), py::arg("q"), py::arg("n"));
  m.def("tv_bound_uniform", &tv_bound_uniform, py::arg("p"), py::arg("n"), py::arg("layers"));

  m.def("run_gof", [](const MultisliceNetwork& net, std::size_t reps, std::uint64_t seed, bool pooled,
                      double alpha, std::size_t threads) {
    GofConfig cfg;
    cfg.num_replicates = reps;
    cfg.master_seed = RngSeed{seed};
    cfg.alpha = alpha;
    cfg.null_params = fit_mle(net, pooled);
    cfg.num_nodes = net.num_nodes();
    cfg.num_threads = threads;
    py::gil_scoped_release release;
    auto result = run_gof(net, cfg);
    py::gil_scoped_acquire acquire;
    return to_py(json(result));
  }, py::arg("net"), py::arg("reps") = 999, py::arg("seed") = 1, py::arg("pooled") = false,
     py::arg("alpha") = 0.05, py::arg("threads") = 0);
  m.def("mid_p_value", &mid_p_value, py::arg("greater"), py::arg("ties"), py::arg("num_replicates"));
  m.def("empirical_quantiles", [](std::vector<std::int64_t> values, double alpha) {
    std::sort(values.begin(), values.end());
    return empirical_quantiles(values, alpha);
  }, py::arg("values"), py::arg("alpha"));

  m.def("run_cli", [](const std::vector<std::string>& args, const std::string& stdin_text) {
    std::istringstream in(stdin_text);
    std::ostringstream out, err;
    const int code = run_cli(args, in, out, err);
    return py::make_tuple(code, out.str(), err.str());
  }, py::arg("args"), py::arg("stdin") = "", "Returns (exit_code, stdout, stderr).");
}
