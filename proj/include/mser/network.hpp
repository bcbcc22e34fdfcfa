#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include <Eigen/SparseCore>

namespace mser {

/// Dense 0-based basis node id in [0, n).
using NodeIndex = std::uint32_t;
/// Dense 0-based layer id in [0, L).
using LayerIndex = std::uint32_t;

struct IntraEdge {
  LayerIndex layer = 0;
  NodeIndex u = 0;
  NodeIndex v = 0;

  friend auto operator<=>(const IntraEdge&, const IntraEdge&) = default;
};

/// Node-aligned interlink u^i ~ u^j.
struct Coupling {
  LayerIndex i = 0;
  LayerIndex j = 0;
  NodeIndex node = 0;

  friend auto operator<=>(const Coupling&, const Coupling&) = default;
};

/// Every node coupled across every pair of layers.
struct FullCoupling {};

using CouplingSpec = std::variant<FullCoupling, std::vector<Coupling>>;

using NodePair = std::pair<NodeIndex, NodeIndex>;

/// L simple undirected graphs on a shared set of n basis nodes, plus
/// node-aligned inter-layer links. Immutable once built.
class MultisliceNetwork {
 public:
  /// Validates and deduplicates. Throws ValidationError naming the first
  /// offending record (out-of-range index, self-loop, i == j coupling).
  static MultisliceNetwork build(std::size_t num_nodes, std::size_t num_layers,
                                 std::span<const IntraEdge> intra_edges,
                                 const CouplingSpec& coupling);

  std::size_t num_nodes() const noexcept { return num_nodes_; }
  std::size_t num_layers() const noexcept { return num_layers_; }

  bool has_edge(LayerIndex layer, NodeIndex u, NodeIndex v) const;
  /// Symmetric in (i, j); false when i == j.
  bool coupled(LayerIndex i, LayerIndex j, NodeIndex node) const {
    return coupling_[(static_cast<std::size_t>(i) * num_layers_ + j) * num_nodes_ + node] != 0;
  }

  /// Edges of one layer as (u, v) with u < v, sorted.
  std::span<const NodePair> edges(LayerIndex layer) const { return edges_[layer]; }
  /// Sorted neighbours of `node` in `layer`.
  std::span<const NodeIndex> neighbors(LayerIndex layer, NodeIndex node) const;

  std::size_t edge_count(LayerIndex layer) const { return edges_[layer].size(); }
  std::size_t total_edge_count() const;

  /// Couplings with i < j, sorted by (i, j, node).
  std::vector<Coupling> couplings() const;
  std::size_t coupling_count() const noexcept { return coupling_count_; }
  bool fully_coupled() const noexcept;

  /// Edge dump in (layer, u, v) order; feeding it back into build() reproduces the network.
  std::vector<IntraEdge> intra_edges() const;

  friend bool operator==(const MultisliceNetwork&, const MultisliceNetwork&) = default;

 private:
  MultisliceNetwork() = default;

  std::size_t num_nodes_ = 0;
  std::size_t num_layers_ = 0;
  std::vector<std::vector<NodePair>> edges_;
  // CSR adjacency per layer.
  std::vector<std::vector<std::size_t>> offsets_;
  std::vector<std::vector<NodeIndex>> adjacency_;
  // L x L x n flags, symmetric in the two layer indices.
  std::vector<std::uint8_t> coupling_;
  std::size_t coupling_count_ = 0;
};

using SupraMatrix = Eigen::SparseMatrix<std::int64_t, Eigen::ColMajor, std::int64_t>;

/// Intra-layer (A) and inter-layer (C) supra-matrices. Row/column index of
/// node u in layer i is i * n + u.
struct SupraMatrices {
  std::size_t num_nodes = 0;
  std::size_t num_layers = 0;
  SupraMatrix intra;
  SupraMatrix inter;

  /// A + C.
  SupraMatrix supra_adjacency() const { return intra + inter; }
};

SupraMatrices supra_matrices(const MultisliceNetwork& net);

}  // namespace mser
