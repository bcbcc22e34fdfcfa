#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "mser/network.hpp"

namespace mser {

enum class TriangleType : std::uint8_t { OneD = 1, TwoD = 2, ThreeD = 3 };

std::string_view to_string(TriangleType t);

/// Canonical representative of a triadic-path class: the closed walk
///   a1^i - a2^i - a2^j - a3^j - a3^k - a1^k - a1^i.
/// 1D: i == j == k, a1 < a2 < a3.
/// 2D: j == k != i, a1 < a2 span the single layer-i edge, a3 is the apex.
/// 3D: i, j, k pairwise distinct, a1 < a2 < a3.
struct TriangleIndex {
  std::array<NodeIndex, 3> nodes{};
  std::array<LayerIndex, 3> layers{};

  TriangleType type() const;

  friend auto operator<=>(const TriangleIndex&, const TriangleIndex&) = default;
};

struct TriangleCounts {
  std::int64_t w1 = 0;
  std::int64_t w2 = 0;
  std::int64_t w3 = 0;

  std::int64_t total() const { return w1 + w2 + w3; }
  std::int64_t get(TriangleType t) const;

  friend bool operator==(const TriangleCounts&, const TriangleCounts&) = default;
};

struct GammaSizes {
  std::int64_t gamma1 = 0;
  std::int64_t gamma2 = 0;
  std::int64_t gamma3 = 0;

  friend bool operator==(const GammaSizes&, const GammaSizes&) = default;
};

/// |Gamma_1|, |Gamma_2|, |Gamma_3| for n basis nodes and L layers.
GammaSizes gamma_sizes(std::int64_t num_nodes, std::int64_t num_layers);

/// W1 = Tr(AAA)/6, W2 = (Tr(AACAC) + Tr(ACAAC) + Tr(ACACA))/6, W3 = Tr(ACACAC)/6.
/// Throws ConsistencyError if any trace sum is not divisible by 6.
TriangleCounts count_by_trace(const SupraMatrices& sup);

/// Sums the presence indicators over every canonical index, one node triple at a time.
TriangleCounts count_by_enumeration(const MultisliceNetwork& net);

/// Edge-driven count using sorted-neighbourhood intersections. Same result as
/// the two routes above; this is the one used inside Monte Carlo loops.
TriangleCounts count_fast(const MultisliceNetwork& net);

/// Present canonical indices, sorted.
std::vector<TriangleIndex> enumerate_present(const MultisliceNetwork& net,
                                             std::optional<TriangleType> type_filter = {});

/// Whether every edge and down edge required by `idx` is present.
bool is_present(const MultisliceNetwork& net, const TriangleIndex& idx);

/// All canonical indices for n nodes and L layers (|Gamma_1| + |Gamma_2| + |Gamma_3| entries).
std::vector<TriangleIndex> all_indices(std::size_t num_nodes, std::size_t num_layers);

}  // namespace mser
