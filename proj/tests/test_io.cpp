#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "mser/errors.hpp"
#include "mser/io.hpp"
#include "mser/triangles.hpp"
#include "support.hpp"

using namespace mser;

namespace {

std::size_t parse_error_line(std::string_view text) {
  try {
    parse_network_text(text, "t.mnet");
  } catch (const ParseError& e) {
    return e.line();
  }
  ADD_FAILURE() << "no ParseError for:\n" << text;
  return 0;
}

}  // namespace

TEST(Parse, HeaderOnlyIsEmpty) {
  const auto net = parse_network_text("nodes 4 layers 2\n").network;
  EXPECT_EQ(net.num_nodes(), 4u);
  EXPECT_EQ(net.total_edge_count(), 0u);
  EXPECT_TRUE(net.fully_coupled());
}

TEST(Parse, NumericIdsAndExplicitCouplings) {
  const auto ln = parse_network_text(
      "# two layers\n"
      "nodes 3 layers 2\n"
      "0 0 1\n"
      "1 1 2\n"
      "couple 0 1 2\n");
  EXPECT_TRUE(ln.node_labels.empty());
  EXPECT_TRUE(ln.network.has_edge(0, 0, 1));
  EXPECT_TRUE(ln.network.has_edge(1, 2, 1));
  EXPECT_EQ(ln.network.coupling_count(), 1u);
  EXPECT_TRUE(ln.network.coupled(1, 0, 2));
}

TEST(Parse, CoupleNone) {
  const auto net = parse_network_text("nodes 3 layers 2\n0 0 1\ncouple none\n").network;
  EXPECT_EQ(net.coupling_count(), 0u);
}

TEST(Parse, LabelsMapToSortedIds) {
  const auto ln = parse_network_text(
      "nodes 3 layers 1\n"
      "layer friends\n"
      "friends carol alice\n"
      "friends bob alice\n");
  EXPECT_EQ(ln.node_labels, (std::vector<std::string>{"alice", "bob", "carol"}));
  EXPECT_EQ(ln.layer_labels, (std::vector<std::string>{"friends"}));
  EXPECT_TRUE(ln.network.has_edge(0, 0, 2));
  EXPECT_TRUE(ln.network.has_edge(0, 0, 1));
  EXPECT_EQ(ln.node_name(1), "bob");
  EXPECT_EQ(ln.layer_name(0), "friends");
}

TEST(Parse, ErrorsCarryLineNumbers) {
  EXPECT_EQ(parse_error_line("nodes 3 layers 1\n0 0 1\nnodes 3 layers 1\n"), 3u);
  EXPECT_EQ(parse_error_line("0 0 1\n"), 1u);
  EXPECT_EQ(parse_error_line("nodes 3 layers 1\n\n5 0 1\n"), 3u);
  EXPECT_EQ(parse_error_line("nodes 3 layers 2\n0 1 1\n"), 2u);
  EXPECT_EQ(parse_error_line("nodes 3 layers 2\n0 1\n"), 2u);
  EXPECT_EQ(parse_error_line("nodes x layers 2\n"), 1u);
  EXPECT_EQ(parse_error_line("nodes 3 layers 2\ncouple 1 1 0\n"), 2u);
  EXPECT_EQ(parse_error_line("nodes 3 layers 2\n0 0 1\nlayer late\n"), 3u);
  EXPECT_THROW(parse_network_text(""), ParseError);
  EXPECT_THROW(parse_network_text("nodes 2 layers 1\n0 a b\n0 b c\n"), ParseError);
  EXPECT_THROW(load_network(fixtures::data_path("does-not-exist.mnet")), ParseError);
}

TEST(Parse, MessageNamesSourceAndLine) {
  try {
    parse_network_text("nodes 3 layers 1\nbogus\n", "x.mnet");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.source(), "x.mnet");
    EXPECT_NE(std::string(e.what()).find("x.mnet:2"), std::string::npos) << e.what();
  }
}

TEST(Parse, FlorentineFixture) {
  const auto ln = fixtures::florentine();
  EXPECT_EQ(ln.network.num_nodes(), 16u);
  EXPECT_EQ(ln.network.edge_count(0), 20u);
  EXPECT_EQ(ln.network.edge_count(1), 15u);
  EXPECT_EQ(ln.layer_labels, (std::vector<std::string>{"marriage", "business"}));
  EXPECT_EQ(ln.node_labels.size(), 16u);
}

TEST(RoundTrip, SerializeThenParseIsIdentity) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + rng() % 9, L = 1 + rng() % 4;
    const double q = trial % 3 == 0 ? 1.0 : (trial % 3 == 1 ? 0.0 : 0.5);
    LabeledNetwork ln{fixtures::random_network(rng, n, L, q), {}, {}};
    const auto text = serialize_network(ln);
    const auto back = parse_network_text(text);
    EXPECT_EQ(back.network, ln.network) << text;
    EXPECT_EQ(serialize_network(back), text);
  }
  const auto flor = fixtures::florentine();
  const auto back = parse_network_text(serialize_network(flor));
  EXPECT_EQ(back.network, flor.network);
  EXPECT_EQ(back.node_labels, flor.node_labels);
  EXPECT_EQ(back.layer_labels, flor.layer_labels);
  EXPECT_EQ(count_fast(back.network), (TriangleCounts{8, 15, 0}));
}

TEST(Digest, StableAndSensitive) {
  EXPECT_EQ(digest_hex(""), "cbf29ce484222325");
  EXPECT_EQ(digest_hex("a"), "af63dc4c8601ec8c");
  EXPECT_NE(digest_hex("nodes 3 layers 1\n"), digest_hex("nodes 3 layers 2\n"));
  EXPECT_EQ(digest_hex("abc").size(), 16u);
}
