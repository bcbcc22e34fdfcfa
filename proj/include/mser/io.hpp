#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "mser/network.hpp"

namespace mser {

/// A network plus the external names of its nodes and layers. Either label
/// vector may be empty, meaning "use the numeric ids".
struct LabeledNetwork {
  MultisliceNetwork network;
  std::vector<std::string> node_labels;
  std::vector<std::string> layer_labels;

  std::string node_name(NodeIndex u) const;
  std::string layer_name(LayerIndex i) const;
};

/// Reads the multilayer edge-list format:
///
///   # comment
///   nodes <n> layers <L>          (exactly once, before any record)
///   layer <name>                  (optional; names layers 0..L-1 in order)
///   node <label>                  (optional; declares a node label)
///   <layer> <u> <v>               (intra-layer edge)
///   couple <i> <j> <u>            (node-aligned interlink)
///   couple none                   (no interlinks at all)
///
/// Without couple lines every node is coupled across every layer pair.
/// Node tokens are numeric ids in [0, n) unless `node` lines are present or
/// some token is not such an id; then all tokens are labels, assigned dense
/// ids in sorted order, and there must be exactly n of them.
/// Throws ParseError carrying the 1-based line number.
LabeledNetwork parse_network(std::istream& in, std::string_view source = "<input>");
LabeledNetwork parse_network_text(std::string_view text, std::string_view source = "<input>");
LabeledNetwork load_network(const std::filesystem::path& path);

void write_network(std::ostream& out, const LabeledNetwork& net);
std::string serialize_network(const LabeledNetwork& net);

/// FNV-1a 64-bit digest as 16 lowercase hex digits.
std::string digest_hex(std::string_view bytes);

std::string read_file(const std::filesystem::path& path);

}  // namespace mser
