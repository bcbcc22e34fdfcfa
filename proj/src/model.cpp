#include "mser/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mser/errors.hpp"

namespace mser {

namespace {

bool is_probability(double x) { return x >= 0.0 && x <= 1.0; }

}  // namespace

void MserParams::validate() const {
  if (p.empty()) throw ValidationError("MSER parameters need at least one layer");
  for (std::size_t i = 0; i < p.size(); ++i)
    if (!is_probability(p[i]))
      throw ValidationError("p[" + std::to_string(i) + "] = " + std::to_string(p[i]) +
                            " is not a probability");
  if (!is_probability(q)) throw ValidationError("q = " + std::to_string(q) + " is not a probability");
}

bool MserParams::uniform() const {
  return std::all_of(p.begin(), p.end(), [this](double x) { return x == p.front(); });
}

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

RngSeed derive_seed(RngSeed parent, std::uint64_t index) {
  return {mix64(mix64(parent.value) ^ mix64(index + 0x632be59bd9b4e019ULL))};
}

MultisliceNetwork sample(const MserParams& params, std::size_t num_nodes, RngSeed seed) {
  params.validate();
  const std::size_t L = params.num_layers();
  const auto n = static_cast<NodeIndex>(num_nodes);

  std::vector<IntraEdge> edges;
  for (LayerIndex layer = 0; layer < L; ++layer) {
    std::mt19937_64 engine(derive_seed(seed, layer).value);
    const double p = params.p[layer];
    for (NodeIndex u = 0; u < n; ++u)
      for (NodeIndex v = u + 1; v < n; ++v)
        if (uniform01(engine) < p) edges.push_back({layer, u, v});
  }

  if (params.q >= 1.0) return MultisliceNetwork::build(num_nodes, L, edges, FullCoupling{});

  std::vector<Coupling> couplings;
  std::mt19937_64 engine(derive_seed(seed, L).value);
  for (LayerIndex i = 0; i < L; ++i)
    for (LayerIndex j = i + 1; j < L; ++j)
      for (NodeIndex u = 0; u < n; ++u)
        if (uniform01(engine) < params.q) couplings.push_back({i, j, u});
  return MultisliceNetwork::build(num_nodes, L, edges, couplings);
}

MserParams fit_mle(const MultisliceNetwork& net, bool pooled) {
  const std::size_t n = net.num_nodes();
  if (n < 2) throw ValidationError("edge density is undefined for fewer than two nodes");
  const double pairs = static_cast<double>(n) * static_cast<double>(n - 1) / 2.0;
  const std::size_t L = net.num_layers();

  MserParams out;
  out.q = 1.0;
  out.p.resize(L);
  if (pooled) {
    const double p = static_cast<double>(net.total_edge_count()) / (static_cast<double>(L) * pairs);
    std::fill(out.p.begin(), out.p.end(), p);
  } else {
    for (LayerIndex i = 0; i < L; ++i) out.p[i] = static_cast<double>(net.edge_count(i)) / pairs;
  }
  return out;
}

double index_probability(const MserParams& params, const TriangleIndex& idx) {
  const auto [i, j, k] = idx.layers;
  const auto& p = params.p;
  const double q = params.q;
  switch (idx.type()) {
    case TriangleType::OneD: return p[i] * p[i] * p[i];
    case TriangleType::TwoD: return p[i] * p[j] * p[j] * q * q;
    case TriangleType::ThreeD: return p[i] * p[j] * p[k] * q * q * q;
  }
  return 0.0;
}

}  // namespace mser
