#include "mser/network.hpp"

#include <algorithm>
#include <sstream>
#include <string>

#include "mser/errors.hpp"

namespace mser {

namespace {

std::string describe(const IntraEdge& e) {
  std::ostringstream os;
  os << "intra edge (layer " << e.layer << ", " << e.u << ", " << e.v << ")";
  return os.str();
}

std::string describe(const Coupling& c) {
  std::ostringstream os;
  os << "coupling (" << c.i << ", " << c.j << ", node " << c.node << ")";
  return os.str();
}

}  // namespace

MultisliceNetwork MultisliceNetwork::build(std::size_t num_nodes, std::size_t num_layers,
                                           std::span<const IntraEdge> intra_edges,
                                           const CouplingSpec& coupling) {
  if (num_nodes < 1) throw ValidationError("network needs at least one node");
  if (num_layers < 1) throw ValidationError("network needs at least one layer");

  MultisliceNetwork net;
  net.num_nodes_ = num_nodes;
  net.num_layers_ = num_layers;
  net.edges_.resize(num_layers);

  for (const auto& e : intra_edges) {
    if (e.layer >= num_layers) throw ValidationError(describe(e) + ": layer out of range");
    if (e.u >= num_nodes || e.v >= num_nodes)
      throw ValidationError(describe(e) + ": node out of range");
    if (e.u == e.v) throw ValidationError(describe(e) + ": self-loop");
    net.edges_[e.layer].emplace_back(std::min(e.u, e.v), std::max(e.u, e.v));
  }

  net.offsets_.resize(num_layers);
  net.adjacency_.resize(num_layers);
  for (std::size_t layer = 0; layer < num_layers; ++layer) {
    auto& edges = net.edges_[layer];
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    auto& offsets = net.offsets_[layer];
    offsets.assign(num_nodes + 1, 0);
    for (const auto& [u, v] : edges) {
      ++offsets[u + 1];
      ++offsets[v + 1];
    }
    for (std::size_t u = 0; u < num_nodes; ++u) offsets[u + 1] += offsets[u];
    auto& adj = net.adjacency_[layer];
    adj.resize(offsets[num_nodes]);
    std::vector<std::size_t> cursor(offsets.begin(), offsets.end() - 1);
    for (const auto& [u, v] : edges) {
      adj[cursor[u]++] = v;
      adj[cursor[v]++] = u;
    }
    for (std::size_t u = 0; u < num_nodes; ++u)
      std::sort(adj.begin() + static_cast<std::ptrdiff_t>(offsets[u]),
                adj.begin() + static_cast<std::ptrdiff_t>(offsets[u + 1]));
  }

  net.coupling_.assign(num_layers * num_layers * num_nodes, 0);
  auto set_coupled = [&net](LayerIndex i, LayerIndex j, NodeIndex u) {
    const std::size_t L = net.num_layers_, n = net.num_nodes_;
    auto& a = net.coupling_[(static_cast<std::size_t>(i) * L + j) * n + u];
    auto& b = net.coupling_[(static_cast<std::size_t>(j) * L + i) * n + u];
    if (a == 0) ++net.coupling_count_;
    a = b = 1;
  };

  if (std::holds_alternative<FullCoupling>(coupling)) {
    for (LayerIndex i = 0; i < num_layers; ++i)
      for (LayerIndex j = i + 1; j < num_layers; ++j)
        for (NodeIndex u = 0; u < num_nodes; ++u) set_coupled(i, j, u);
  } else {
    for (const auto& c : std::get<std::vector<Coupling>>(coupling)) {
      if (c.i >= num_layers || c.j >= num_layers)
        throw ValidationError(describe(c) + ": layer out of range");
      if (c.node >= num_nodes) throw ValidationError(describe(c) + ": node out of range");
      if (c.i == c.j) throw ValidationError(describe(c) + ": coupling within a single layer");
      set_coupled(c.i, c.j, c.node);
    }
  }
  return net;
}

bool MultisliceNetwork::has_edge(LayerIndex layer, NodeIndex u, NodeIndex v) const {
  const auto nb = neighbors(layer, u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::span<const NodeIndex> MultisliceNetwork::neighbors(LayerIndex layer, NodeIndex node) const {
  const auto& offsets = offsets_[layer];
  return std::span<const NodeIndex>(adjacency_[layer]).subspan(
      offsets[node], offsets[node + 1] - offsets[node]);
}

std::size_t MultisliceNetwork::total_edge_count() const {
  std::size_t total = 0;
  for (const auto& e : edges_) total += e.size();
  return total;
}

std::vector<Coupling> MultisliceNetwork::couplings() const {
  std::vector<Coupling> out;
  out.reserve(coupling_count_);
  for (LayerIndex i = 0; i < num_layers_; ++i)
    for (LayerIndex j = i + 1; j < num_layers_; ++j)
      for (NodeIndex u = 0; u < num_nodes_; ++u)
        if (coupled(i, j, u)) out.push_back({i, j, u});
  return out;
}

bool MultisliceNetwork::fully_coupled() const noexcept {
  return coupling_count_ == num_nodes_ * num_layers_ * (num_layers_ - 1) / 2;
}

std::vector<IntraEdge> MultisliceNetwork::intra_edges() const {
  std::vector<IntraEdge> out;
  out.reserve(total_edge_count());
  for (LayerIndex layer = 0; layer < num_layers_; ++layer)
    for (const auto& [u, v] : edges_[layer]) out.push_back({layer, u, v});
  return out;
}

SupraMatrices supra_matrices(const MultisliceNetwork& net) {
  using Triplet = Eigen::Triplet<std::int64_t, std::int64_t>;
  const auto n = static_cast<std::int64_t>(net.num_nodes());
  const auto L = static_cast<std::int64_t>(net.num_layers());
  const std::int64_t dim = n * L;

  std::vector<Triplet> intra;
  intra.reserve(2 * net.total_edge_count());
  for (std::int64_t layer = 0; layer < L; ++layer) {
    for (const auto& [u, v] : net.edges(static_cast<LayerIndex>(layer))) {
      intra.emplace_back(layer * n + u, layer * n + v, 1);
      intra.emplace_back(layer * n + v, layer * n + u, 1);
    }
  }

  std::vector<Triplet> inter;
  inter.reserve(2 * net.coupling_count());
  for (const auto& c : net.couplings()) {
    inter.emplace_back(c.i * n + c.node, c.j * n + c.node, 1);
    inter.emplace_back(c.j * n + c.node, c.i * n + c.node, 1);
  }

  SupraMatrices out;
  out.num_nodes = net.num_nodes();
  out.num_layers = net.num_layers();
  out.intra.resize(dim, dim);
  out.inter.resize(dim, dim);
  out.intra.setFromTriplets(intra.begin(), intra.end());
  out.inter.setFromTriplets(inter.begin(), inter.end());
  return out;
}

}  // namespace mser
