#include "mser/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <sstream>

#include "mser/errors.hpp"

namespace mser {

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

std::optional<std::uint64_t> parse_uint(std::string_view s) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

struct RawEdge {
  std::size_t line;
  LayerIndex layer;
  std::string u, v;
};

struct RawCoupling {
  std::size_t line;
  LayerIndex i, j;
  std::string node;
};

}  // namespace

std::string LabeledNetwork::node_name(NodeIndex u) const {
  return node_labels.empty() ? std::to_string(u) : node_labels.at(u);
}

std::string LabeledNetwork::layer_name(LayerIndex i) const {
  return layer_labels.empty() ? std::to_string(i) : layer_labels.at(i);
}

LabeledNetwork parse_network(std::istream& in, std::string_view source_view) {
  const std::string source(source_view);
  const auto fail = [&source](std::size_t line, const std::string& what) -> ParseError {
    return ParseError(source, line, what);
  };

  std::optional<std::size_t> n, L;
  std::vector<std::string> layer_labels;
  std::vector<std::pair<std::size_t, std::string>> declared_nodes;
  std::vector<RawEdge> raw_edges;
  std::vector<RawCoupling> raw_couplings;
  bool couple_none = false;

  const auto resolve_layer = [&](std::string_view tok, std::size_t line) -> LayerIndex {
    for (std::size_t i = 0; i < layer_labels.size(); ++i)
      if (layer_labels[i] == tok) return static_cast<LayerIndex>(i);
    if (auto v = parse_uint(tok); v && *v < *L) return static_cast<LayerIndex>(*v);
    throw fail(line, "unknown layer '" + std::string(tok) + "'");
  };

  std::string text;
  std::size_t lineno = 0;
  while (std::getline(in, text)) {
    ++lineno;
    if (!text.empty() && text.back() == '\r') text.pop_back();
    const auto tok = split_ws(text);
    if (tok.empty() || tok.front().front() == '#') continue;

    if (tok[0] == "nodes") {
      if (n) throw fail(lineno, "duplicate header");
      if (tok.size() != 4 || tok[2] != "layers")
        throw fail(lineno, "malformed header; expected 'nodes <n> layers <L>'");
      const auto nv = parse_uint(tok[1]);
      const auto lv = parse_uint(tok[3]);
      if (!nv || *nv < 1) throw fail(lineno, "node count must be a positive integer");
      if (!lv || *lv < 1) throw fail(lineno, "layer count must be a positive integer");
      n = static_cast<std::size_t>(*nv);
      L = static_cast<std::size_t>(*lv);
      continue;
    }
    if (!n) throw fail(lineno, "record before the 'nodes <n> layers <L>' header");

    if (tok[0] == "layer") {
      if (tok.size() != 2) throw fail(lineno, "malformed layer line; expected 'layer <name>'");
      if (std::find(layer_labels.begin(), layer_labels.end(), tok[1]) != layer_labels.end())
        throw fail(lineno, "duplicate layer name '" + std::string(tok[1]) + "'");
      if (!raw_edges.empty() || !raw_couplings.empty())
        throw fail(lineno, "layer names must precede edge and couple lines");
      if (layer_labels.size() == *L) throw fail(lineno, "more layer names than layers");
      layer_labels.emplace_back(tok[1]);
    } else if (tok[0] == "node") {
      if (tok.size() != 2) throw fail(lineno, "malformed node line; expected 'node <label>'");
      declared_nodes.emplace_back(lineno, std::string(tok[1]));
    } else if (tok[0] == "couple") {
      if (tok.size() == 2 && tok[1] == "none") {
        couple_none = true;
        continue;
      }
      if (tok.size() != 4) throw fail(lineno, "malformed couple line; expected 'couple <i> <j> <u>'");
      const LayerIndex i = resolve_layer(tok[1], lineno);
      const LayerIndex j = resolve_layer(tok[2], lineno);
      if (i == j) throw fail(lineno, "coupling within a single layer");
      raw_couplings.push_back({lineno, i, j, std::string(tok[3])});
    } else {
      if (tok.size() != 3) throw fail(lineno, "malformed line; expected '<layer> <u> <v>'");
      const LayerIndex layer = resolve_layer(tok[0], lineno);
      if (tok[1] == tok[2]) throw fail(lineno, "self-loop on '" + std::string(tok[1]) + "'");
      raw_edges.push_back({lineno, layer, std::string(tok[1]), std::string(tok[2])});
    }
  }
  if (!n) throw fail(lineno, "missing 'nodes <n> layers <L>' header");
  if (!layer_labels.empty() && layer_labels.size() != *L)
    throw fail(lineno, "declared " + std::to_string(layer_labels.size()) + " layer names for " +
                           std::to_string(*L) + " layers");
  if (couple_none && !raw_couplings.empty())
    throw fail(lineno, "'couple none' combined with couple lines");

  // Decide between numeric ids and labels.
  bool numeric = declared_nodes.empty();
  const auto is_id = [&](const std::string& s) {
    const auto v = parse_uint(s);
    return v && *v < *n;
  };
  for (const auto& e : raw_edges) numeric = numeric && is_id(e.u) && is_id(e.v);
  for (const auto& c : raw_couplings) numeric = numeric && is_id(c.node);

  std::vector<std::string> node_labels;
  std::map<std::string, NodeIndex, std::less<>> ids;
  if (!numeric) {
    for (const auto& [line, label] : declared_nodes) ids.emplace(label, 0);
    for (const auto& e : raw_edges) {
      ids.emplace(e.u, 0);
      ids.emplace(e.v, 0);
    }
    for (const auto& c : raw_couplings) ids.emplace(c.node, 0);
    if (ids.size() != *n)
      throw fail(lineno, "header declares " + std::to_string(*n) + " nodes but " +
                             std::to_string(ids.size()) +
                             " distinct labels were found; declare isolated nodes with 'node <label>'");
    NodeIndex next = 0;
    for (auto& [label, id] : ids) {
      id = next++;
      node_labels.push_back(label);
    }
  }
  const auto node_id = [&](const std::string& tok) -> NodeIndex {
    if (numeric) return static_cast<NodeIndex>(*parse_uint(tok));
    return ids.find(tok)->second;
  };

  std::vector<IntraEdge> edges;
  edges.reserve(raw_edges.size());
  for (const auto& e : raw_edges) edges.push_back({e.layer, node_id(e.u), node_id(e.v)});

  CouplingSpec coupling = FullCoupling{};
  if (couple_none || !raw_couplings.empty()) {
    std::vector<Coupling> cs;
    for (const auto& c : raw_couplings) cs.push_back({c.i, c.j, node_id(c.node)});
    coupling = std::move(cs);
  }

  try {
    return LabeledNetwork{MultisliceNetwork::build(*n, *L, edges, coupling), std::move(node_labels),
                          std::move(layer_labels)};
  } catch (const ValidationError& e) {
    throw fail(0, e.what());
  }
}

LabeledNetwork parse_network_text(std::string_view text, std::string_view source) {
  std::istringstream in{std::string(text)};
  return parse_network(in, source);
}

LabeledNetwork load_network(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path.string(), 0, "cannot open file");
  return parse_network(in, path.string());
}

void write_network(std::ostream& out, const LabeledNetwork& lnet) {
  const auto& net = lnet.network;
  out << "nodes " << net.num_nodes() << " layers " << net.num_layers() << '\n';
  for (const auto& name : lnet.layer_labels) out << "layer " << name << '\n';
  for (const auto& label : lnet.node_labels) out << "node " << label << '\n';
  for (LayerIndex i = 0; i < net.num_layers(); ++i)
    for (const auto& [u, v] : net.edges(i))
      out << lnet.layer_name(i) << ' ' << lnet.node_name(u) << ' ' << lnet.node_name(v) << '\n';
  if (net.num_layers() > 1 && !net.fully_coupled()) {
    if (net.coupling_count() == 0) out << "couple none\n";
    for (const auto& c : net.couplings())
      out << "couple " << lnet.layer_name(c.i) << ' ' << lnet.layer_name(c.j) << ' '
          << lnet.node_name(c.node) << '\n';
  }
}

std::string serialize_network(const LabeledNetwork& net) {
  std::ostringstream os;
  write_network(os, net);
  return os.str();
}

std::string digest_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path.string(), 0, "cannot open file");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace mser
