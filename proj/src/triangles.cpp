#include "mser/triangles.hpp"

#include <algorithm>
#include <initializer_list>
#include <string>

#include "mser/errors.hpp"

namespace mser {

namespace {

std::int64_t choose(std::int64_t a, std::int64_t b) {
  if (b < 0 || a < b) return 0;
  std::int64_t r = 1;
  for (std::int64_t k = 1; k <= b; ++k) r = r * (a - b + k) / k;
  return r;
}

// Calls fn(TriangleIndex) for every canonical index on the node triple a < b < c.
template <typename Fn>
void for_each_index_on_triple(NodeIndex a, NodeIndex b, NodeIndex c, std::size_t num_layers,
                              Fn&& fn) {
  const auto L = static_cast<LayerIndex>(num_layers);
  for (LayerIndex i = 0; i < L; ++i) fn(TriangleIndex{{a, b, c}, {i, i, i}});

  // 2D: one edge in layer i, the two edges to the apex in layer j.
  const std::array<std::array<NodeIndex, 3>, 3> single_edge_first{{{a, b, c}, {a, c, b}, {b, c, a}}};
  for (LayerIndex i = 0; i < L; ++i)
    for (LayerIndex j = 0; j < L; ++j) {
      if (i == j) continue;
      for (const auto& nodes : single_edge_first) fn(TriangleIndex{nodes, {i, j, j}});
    }

  for (LayerIndex i = 0; i < L; ++i)
    for (LayerIndex j = 0; j < L; ++j) {
      if (j == i) continue;
      for (LayerIndex k = 0; k < L; ++k) {
        if (k == i || k == j) continue;
        fn(TriangleIndex{{a, b, c}, {i, j, k}});
      }
    }
}

// |{x in s1 ∩ s2 : x >= from, keep(x)}| for sorted spans.
template <typename Keep>
std::int64_t intersect_count(std::span<const NodeIndex> s1, std::span<const NodeIndex> s2,
                             NodeIndex from, Keep&& keep) {
  auto p = std::lower_bound(s1.begin(), s1.end(), from);
  auto q = std::lower_bound(s2.begin(), s2.end(), from);
  std::int64_t count = 0;
  while (p != s1.end() && q != s2.end()) {
    if (*p < *q) {
      ++p;
    } else if (*q < *p) {
      ++q;
    } else {
      if (keep(*p)) ++count;
      ++p;
      ++q;
    }
  }
  return count;
}

std::int64_t trace_of_product(std::initializer_list<const SupraMatrix*> factors) {
  auto it = factors.begin();
  SupraMatrix prefix = **it++;
  const SupraMatrix* last = *(factors.end() - 1);
  for (; it != factors.end() - 1; ++it) prefix = (prefix * **it).pruned();
  // Tr(P M) = sum_ij P_ij M_ji
  const SupraMatrix last_t = last->transpose();
  return prefix.cwiseProduct(last_t).sum();
}

std::int64_t exact_sixth(std::int64_t trace, const char* what) {
  if (trace % 6 != 0)
    throw ConsistencyError(std::string(what) + " trace " + std::to_string(trace) +
                           " is not divisible by 6; inter-layer links must be node-aligned");
  return trace / 6;
}

}  // namespace

std::string_view to_string(TriangleType t) {
  switch (t) {
    case TriangleType::OneD: return "1D";
    case TriangleType::TwoD: return "2D";
    case TriangleType::ThreeD: return "3D";
  }
  return "?";
}

TriangleType TriangleIndex::type() const {
  if (layers[0] == layers[1] && layers[1] == layers[2]) return TriangleType::OneD;
  if (layers[1] == layers[2]) return TriangleType::TwoD;
  return TriangleType::ThreeD;
}

std::int64_t TriangleCounts::get(TriangleType t) const {
  switch (t) {
    case TriangleType::OneD: return w1;
    case TriangleType::TwoD: return w2;
    case TriangleType::ThreeD: return w3;
  }
  return 0;
}

GammaSizes gamma_sizes(std::int64_t num_nodes, std::int64_t num_layers) {
  const std::int64_t triples = choose(num_nodes, 3);
  return {triples * num_layers, 6 * triples * choose(num_layers, 2),
          6 * triples * choose(num_layers, 3)};
}

TriangleCounts count_by_trace(const SupraMatrices& sup) {
  const SupraMatrix* A = &sup.intra;
  const SupraMatrix* C = &sup.inter;
  TriangleCounts out;
  out.w1 = exact_sixth(trace_of_product({A, A, A}), "1D");
  out.w2 = exact_sixth(trace_of_product({A, A, C, A, C}) + trace_of_product({A, C, A, A, C}) +
                           trace_of_product({A, C, A, C, A}),
                       "2D");
  out.w3 = exact_sixth(trace_of_product({A, C, A, C, A, C}), "3D");
  return out;
}

bool is_present(const MultisliceNetwork& net, const TriangleIndex& idx) {
  const auto [a1, a2, a3] = idx.nodes;
  const auto [i, j, k] = idx.layers;
  if (!net.has_edge(i, a1, a2) || !net.has_edge(j, a2, a3) || !net.has_edge(k, a3, a1))
    return false;
  if (i != j && !net.coupled(i, j, a2)) return false;
  if (j != k && !net.coupled(j, k, a3)) return false;
  if (k != i && !net.coupled(k, i, a1)) return false;
  return true;
}

TriangleCounts count_by_enumeration(const MultisliceNetwork& net) {
  TriangleCounts out;
  const auto n = static_cast<NodeIndex>(net.num_nodes());
  for (NodeIndex a = 0; a < n; ++a)
    for (NodeIndex b = a + 1; b < n; ++b)
      for (NodeIndex c = b + 1; c < n; ++c)
        for_each_index_on_triple(a, b, c, net.num_layers(), [&](const TriangleIndex& idx) {
          if (!is_present(net, idx)) return;
          switch (idx.type()) {
            case TriangleType::OneD: ++out.w1; break;
            case TriangleType::TwoD: ++out.w2; break;
            case TriangleType::ThreeD: ++out.w3; break;
          }
        });
  return out;
}

TriangleCounts count_fast(const MultisliceNetwork& net) {
  const auto L = static_cast<LayerIndex>(net.num_layers());
  const auto always = [](NodeIndex) { return true; };
  TriangleCounts out;

  for (LayerIndex i = 0; i < L; ++i)
    for (const auto& [a, b] : net.edges(i))
      out.w1 += intersect_count(net.neighbors(i, a), net.neighbors(i, b), b + 1, always);

  for (LayerIndex i = 0; i < L; ++i)
    for (LayerIndex j = 0; j < L; ++j) {
      if (i == j) continue;
      for (const auto& [a, b] : net.edges(i)) {
        if (!net.coupled(i, j, a) || !net.coupled(i, j, b)) continue;
        out.w2 += intersect_count(net.neighbors(j, a), net.neighbors(j, b), 0, always);
      }
    }

  for (LayerIndex i = 0; i < L; ++i)
    for (LayerIndex j = 0; j < L; ++j) {
      if (j == i) continue;
      for (LayerIndex k = 0; k < L; ++k) {
        if (k == i || k == j) continue;
        const auto down_jk = [&](NodeIndex c) { return net.coupled(j, k, c); };
        for (const auto& [a, b] : net.edges(i)) {
          if (!net.coupled(i, j, b) || !net.coupled(k, i, a)) continue;
          out.w3 += intersect_count(net.neighbors(j, b), net.neighbors(k, a), b + 1, down_jk);
        }
      }
    }
  return out;
}

std::vector<TriangleIndex> enumerate_present(const MultisliceNetwork& net,
                                             std::optional<TriangleType> type_filter) {
  std::vector<TriangleIndex> out;
  const auto n = static_cast<NodeIndex>(net.num_nodes());
  for (NodeIndex a = 0; a < n; ++a)
    for (NodeIndex b = a + 1; b < n; ++b)
      for (NodeIndex c = b + 1; c < n; ++c)
        for_each_index_on_triple(a, b, c, net.num_layers(), [&](const TriangleIndex& idx) {
          if (type_filter && idx.type() != *type_filter) return;
          if (is_present(net, idx)) out.push_back(idx);
        });
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<TriangleIndex> all_indices(std::size_t num_nodes, std::size_t num_layers) {
  std::vector<TriangleIndex> out;
  const auto n = static_cast<NodeIndex>(num_nodes);
  for (NodeIndex a = 0; a < n; ++a)
    for (NodeIndex b = a + 1; b < n; ++b)
      for (NodeIndex c = b + 1; c < n; ++c)
        for_each_index_on_triple(a, b, c, num_layers,
                                 [&](const TriangleIndex& idx) { out.push_back(idx); });
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace mser
