#include <gtest/gtest.h>

#include <filesystem>

#include "spechtlab/json_io.hpp"

using namespace spechtlab;

namespace {

std::filesystem::path scratch_dir(const std::string& name) {
  auto d = std::filesystem::temp_directory_path() / ("spechtlab-test-" + name);
  std::filesystem::remove_all(d);
  return d;
}

}  // namespace

TEST(Json, LatticeRoundTripKeepsGraph) {
  for (auto p : {Partition{9, 5}, Partition::hook(8, 2), Partition{14}}) {
    LatticeGraph L = specht_lattice(p);
    LatticeGraph back = lattice_from_json(json::parse(lattice_json(L).dump()));
    EXPECT_TRUE(same_graph(L, back)) << p.str();
  }
}

TEST(Dot, RoundTripKeepsGraph) {
  for (auto p : {Partition{9, 5}, Partition::hook(10, 4), Partition{14}}) {
    LatticeGraph L = specht_lattice(p);
    LatticeGraph back = lattice_from_dot(to_dot(L));
    EXPECT_TRUE(same_graph(L, back)) << p.str();
    EXPECT_EQ(back.label, L.label);
  }
  EXPECT_THROW(lattice_from_dot("digraph lattice {\n}\n"), std::invalid_argument);
}

TEST(Json, BasisRoundTripRestoresSpaces) {
  LatticeGraph L = specht_lattice(Partition{7, 3});
  LatticeGraph back = lattice_from_json(json::parse(lattice_json(L, true).dump()));
  ASSERT_EQ(back.nodes.size(), L.nodes.size());
  for (std::size_t i = 0; i < L.nodes.size(); ++i) EXPECT_EQ(back.nodes[i].space, L.nodes[i].space);
}

TEST(Json, RejectsMalformedInput) {
  json j = lattice_json(specht_lattice(Partition{5, 3}), true);
  json bad = j;
  bad["edges"][0]["to"] = 99;
  EXPECT_THROW(lattice_from_json(bad), std::invalid_argument);
  bad = j;
  bad["nodes"][1]["basis"][0] = "zz";
  EXPECT_THROW(lattice_from_json(bad), std::invalid_argument);
}

TEST(Json, ProfileListsFactorsAndOrder) {
  json j = profile_json(profile(Partition{9, 5}));
  EXPECT_EQ(j["factors"].size(), 5u);
  EXPECT_EQ(j["socle"], "12,2");
  EXPECT_FALSE(j["uniserial"].get<bool>());
  EXPECT_EQ(j["predicted_dims"].size(), 7u);
}

TEST(ModuleCache, ReloadGivesTheSameModule) {
  auto dir = scratch_dir("cache");
  Partition p{6, 3};
  RepModule fresh = rep_matrices(p);
  fresh.densify();
  RepModule first = ModuleCache(dir).specht(p);
  ASSERT_TRUE(std::filesystem::exists(dir / (ModuleCache::key(p) + ".bin")));
  RepModule second = ModuleCache(dir).specht(p);
  EXPECT_EQ(first.gens, fresh.gens);
  EXPECT_EQ(second.gens, fresh.gens);
  EXPECT_EQ(second.dim, fresh.dim);
  std::filesystem::remove_all(dir);
}

TEST(ModuleCache, CorruptFileIsRebuilt) {
  auto dir = scratch_dir("corrupt");
  Partition p{5, 2};
  ModuleCache(dir).specht(p);
  std::ofstream(dir / (ModuleCache::key(p) + ".bin"), std::ios::binary | std::ios::app) << "junk";
  RepModule M = ModuleCache(dir).specht(p);
  RepModule fresh = rep_matrices(p);
  fresh.densify();
  EXPECT_EQ(M.gens, fresh.gens);
  std::filesystem::remove_all(dir);
}

TEST(ModuleCache, KeyDependsOnShape) {
  EXPECT_NE(ModuleCache::key(Partition{6, 3}), ModuleCache::key(Partition{6, 2, 1}));
  EXPECT_EQ(ModuleCache::key(Partition{6, 3}), ModuleCache::key(Partition::two_part(6, 3)));
}
