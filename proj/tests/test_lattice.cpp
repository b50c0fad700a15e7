#include <gtest/gtest.h>

#include <chrono>
#include <set>
#include <tuple>

#include "spechtlab/lattice.hpp"

using namespace spechtlab;

namespace {

std::multiset<std::size_t> dim_multiset(const LatticeGraph& L) {
  auto d = L.dims();
  return {d.begin(), d.end()};
}

RepModule dense_specht(const Partition& p) {
  RepModule M = rep_matrices(p);
  M.densify();
  return M;
}

long long factor_dim(const Partition& p) { return dim_simple(p); }

std::multiset<std::tuple<std::size_t, std::size_t, std::string>> labelled_edges(const LatticeGraph& L) {
  std::multiset<std::tuple<std::size_t, std::size_t, std::string>> out;
  for (const auto& e : L.edges) out.insert({L.nodes[e.from].dim, L.nodes[e.to].dim, e.label.str()});
  return out;
}

}  // namespace

TEST(SpinProgram, SimpleModulesSpinFromOneVector) {
  for (auto p : {Partition{5, 3}, Partition{6, 2}, Partition{4, 3}, Partition{7}, Partition{9, 5}}) {
    RepModule D = simple_module(p);
    SpinProgram P = spin_program(D);
    EXPECT_EQ(P.basis.rows(), D.dim);
    EXPECT_EQ(f2::rank(P.basis), D.dim);
    EXPECT_EQ(P.relations.size(), D.num_gens());
  }
}

TEST(SpinProgram, ReplayOfSeedRebuildsBasis) {
  RepModule D = simple_module(Partition{6, 3});
  SpinProgram P = spin_program(D);
  EXPECT_EQ(replay(P, D, P.seed), P.basis);
}

TEST(HomSpace, EndomorphismsOfSimpleAreScalars) {
  for (auto p : {Partition{5, 3}, Partition{6, 2}, Partition{7, 4}}) {
    RepModule D = simple_module(p);
    auto H = hom_space(spin_program(D), D);
    ASSERT_EQ(H.size(), 1u) << p.str();
  }
}

TEST(HomSpace, VanishesBetweenDifferentSimples) {
  RepModule A = simple_module(Partition{6, 2});
  RepModule B = simple_module(Partition{5, 3});
  EXPECT_TRUE(hom_space(spin_program(A), B).empty());
  EXPECT_TRUE(hom_space(spin_program(B), A).empty());
}

TEST(HomSpace, DirectSumDoublesHom) {
  RepModule D = simple_module(Partition{5, 2});
  RepModule S;
  S.dim = 2 * D.dim;
  for (std::size_t g = 0; g < D.num_gens(); ++g) {
    f2::Matrix G(S.dim, S.dim);
    const f2::Matrix& A = D.gens[g];
    for (std::size_t i = 0; i < D.dim; ++i)
      for (std::size_t j = 0; j < D.dim; ++j)
        if (A.get(i, j)) {
          G.set(i, j, true);
          G.set(D.dim + i, D.dim + j, true);
        }
    S.gens.push_back(G);
  }
  EXPECT_EQ(hom_space(spin_program(D), S).size(), 2u);
  auto subs = simple_submodules(S, {std::make_shared<SimpleInfo>(SimpleInfo{Partition{5, 2}, D, spin_program(D)})});
  EXPECT_EQ(subs.size(), 3u);
}

TEST(Socle, SpechtSocleIsTheOraclePrediction) {
  for (auto p : {Partition{5, 3}, Partition{6, 2}, Partition{7, 3}, Partition{9, 5}, Partition{6, 4}}) {
    RepModule M = dense_specht(p);
    auto simples = socle_simples(M, specht_factors(p));
    ASSERT_EQ(simples.size(), 1u) << p.str();
    EXPECT_EQ(static_cast<long long>(simples[0].dim()), dim_simple(socle_2part(p).nu)) << p.str();
  }
}

TEST(Lattice, NineFiveHasSevenSubmodules) {
  LatticeGraph L = specht_lattice(Partition{9, 5});
  EXPECT_EQ(dim_multiset(L), (std::multiset<std::size_t>{0, 64, 65, 77, 429, 441, 1001}));
  EXPECT_FALSE(L.truncated);
  EXPECT_FALSE(L.incomplete);
  EXPECT_FALSE(is_uniserial(L));
  EXPECT_TRUE(dimension_accounting_holds(L, factor_dim));
  auto rep = compare_with_prediction(L, profile(Partition{9, 5}));
  EXPECT_TRUE(rep.agree()) << (rep.mismatches.empty() ? "" : rep.mismatches[0]);
}

TEST(Lattice, RadicalShortcutMatchesPlainSearch) {
  for (auto p : {Partition{4, 2}, Partition{5, 3}, Partition{6, 2}, Partition{7, 3}, Partition{6, 4}, Partition{8, 2},
                 Partition{7, 5}, Partition{9, 3}}) {
    LatticeGraph fast = specht_lattice(p);
    LatticeGraph plain = submodule_lattice(dense_specht(p), specht_factors(p));
    ASSERT_EQ(fast.nodes.size(), plain.nodes.size()) << p.str();
    for (std::size_t i = 0; i < fast.nodes.size(); ++i) EXPECT_EQ(fast.nodes[i].space, plain.nodes[i].space) << p.str();
    EXPECT_EQ(fast.edges, plain.edges) << p.str();
  }
}

TEST(Lattice, EveryNodeIsASubmodule) {
  RepModule M = dense_specht(Partition{7, 3});
  LatticeGraph L = submodule_lattice(M, specht_factors(Partition{7, 3}));
  for (const auto& n : L.nodes) EXPECT_TRUE(is_invariant(M, n.space));
}

TEST(Lattice, AgreesWithPredictionForSmallTwoPartShapes) {
  for (int n = 2; n <= 14; ++n)
    for (int l2 = 1; 2 * l2 < n; ++l2) {
      Partition p = Partition::two_part(n - l2, l2);
      LatticeGraph L = specht_lattice(p);
      auto rep = compare_with_prediction(L, profile(p));
      EXPECT_TRUE(rep.agree()) << p.str() << ": " << (rep.mismatches.empty() ? "" : rep.mismatches[0]);
      EXPECT_TRUE(dimension_accounting_holds(L, factor_dim)) << p.str();
    }
}

TEST(Lattice, HookSixOneOneHasUniqueMinimalSubmodule) {
  Partition p = Partition::hook(8, 2);
  LatticeGraph L = specht_lattice(p);
  EXPECT_FALSE(L.incomplete);
  EXPECT_TRUE(dimension_accounting_holds(L, factor_dim));
  std::size_t atoms = 0;
  for (const auto& e : L.edges)
    if (e.from == L.bottom) ++atoms;
  EXPECT_EQ(atoms, 1u);
}

TEST(Lattice, HookSixOneFourHasTwentyTwoNodes) {
  LatticeGraph L = specht_lattice(Partition::hook(10, 4));
  EXPECT_EQ(L.nodes.size(), 22u);
  EXPECT_FALSE(L.incomplete);
  EXPECT_TRUE(dimension_accounting_holds(L, factor_dim));
}

TEST(Lattice, GuardTruncates) {
  LatticeOptions opt;
  opt.guard = 3;
  LatticeGraph L = submodule_lattice(dense_specht(Partition::hook(10, 4)), hook_factors(10, 4), opt);
  EXPECT_TRUE(L.truncated);
  EXPECT_THROW(is_uniserial(L), std::invalid_argument);
}

TEST(Lattice, ThreadsGiveTheSameLattice) {
  Partition p = Partition::hook(10, 4);
  LatticeOptions opt;
  opt.threads = 3;
  LatticeGraph a = specht_lattice(p), b = specht_lattice(p, opt);
  ASSERT_EQ(a.nodes.size(), b.nodes.size());
  for (std::size_t i = 0; i < a.nodes.size(); ++i) EXPECT_EQ(a.nodes[i].space, b.nodes[i].space);
  EXPECT_EQ(a.edges, b.edges);
}

TEST(Lattice, DualLatticeIsReversed) {
  for (auto p : {Partition{5, 3}, Partition{9, 5}, Partition::hook(8, 2), Partition::hook(7, 3)}) {
    RepModule M = dense_specht(p);
    auto factors = specht_factors(p);
    LatticeGraph L = submodule_lattice(M, factors);
    LatticeGraph Ld = submodule_lattice(dual_module(M), factors);
    EXPECT_TRUE(lattice_isomorphism(reversed(L), Ld).has_value()) << p.str();
    for (const auto& n : L.nodes) EXPECT_TRUE(is_invariant(dual_module(M), annihilator(n.space)));
  }
}

TEST(Lattice, Distributivity) {
  EXPECT_TRUE(is_distributive(specht_lattice(Partition{9, 5})));
  RepModule D = simple_module(Partition{5, 2});
  RepModule S;
  S.dim = 2 * D.dim;
  for (std::size_t g = 0; g < D.num_gens(); ++g) {
    f2::Matrix G(S.dim, S.dim);
    for (std::size_t i = 0; i < D.dim; ++i)
      for (std::size_t j = 0; j < D.dim; ++j)
        if (D.gens[g].get(i, j)) {
          G.set(i, j, true);
          G.set(D.dim + i, D.dim + j, true);
        }
    S.gens.push_back(G);
  }
  LatticeGraph L = submodule_lattice(S, {{Partition{5, 2}, 2}});
  EXPECT_EQ(L.nodes.size(), 5u);
  EXPECT_FALSE(is_distributive(L));
}

TEST(Lattice, IsomorphismRespectsLabels) {
  LatticeGraph L = specht_lattice(Partition{9, 5});
  EXPECT_TRUE(lattice_isomorphism(L, L).has_value());
  auto swap = [](const Partition& p) { return p == Partition{9, 5} ? Partition{14} : p; };
  EXPECT_FALSE(lattice_isomorphism(L, L, swap).has_value());
}

TEST(Lattice, ReversedTwiceIsIdentityOnDims) {
  LatticeGraph L = specht_lattice(Partition{9, 5});
  LatticeGraph R = reversed(reversed(L));
  EXPECT_EQ(R.dims(), L.dims());
  EXPECT_EQ(R.edges, L.edges);
}

TEST(Lattice, EmittersMentionEveryNode) {
  LatticeGraph L = specht_lattice(Partition{9, 5});
  std::string dot = to_dot(L), tikz = to_tikz(L);
  EXPECT_NE(dot.find("digraph"), std::string::npos);
  EXPECT_NE(dot.find("D(9,5)"), std::string::npos);
  EXPECT_NE(tikz.find("tikzpicture"), std::string::npos);
  EXPECT_NE(tikz.find("{$441$}"), std::string::npos);
}

TEST(Gallery, FourteenTwoPartLatticesAndStarSubmodules) {
  const std::vector<std::pair<int, std::multiset<std::size_t>>> expected = {
      {0, {0, 1}},
      {1, {0, 1, 13}},
      {2, {0, 12, 13, 77}},
      {3, {0, 1, 65, 273}},
      {4, {0, 208, 272, 273, 637}},
      {5, {0, 64, 65, 77, 429, 441, 1001}},
      {6, {0, 12, 13, 572, 573, 937, 1001}},
      {7, {0, 1, 365, 429}},
  };
  const std::vector<std::size_t> star_dims = {0, 1, 12, 65, 208, 429, 572, 429};
  for (const auto& [i, dims] : expected) {
    Partition p = Partition::two_part(14 - i, i);
    LatticeGraph L = specht_lattice(p);
    EXPECT_EQ(dim_multiset(L), dims) << p.str();
    if (i == 0) continue;
    f2::Subspace star = star_submodule(i, 14);
    EXPECT_EQ(star.dim(), star_dims[static_cast<std::size_t>(i)]) << p.str();
    bool is_node = false;
    for (const auto& n : L.nodes) is_node = is_node || n.space == star;
    EXPECT_TRUE(is_node) << p.str();
  }
}

TEST(Lattice, HookSixOneOneMatchesPrintedLabels) {
  LatticeGraph L = specht_lattice(Partition::hook(8, 2));
  EXPECT_EQ(dim_multiset(L), (std::multiset<std::size_t>{0, 6, 7, 20, 21}));
  const std::multiset<std::tuple<std::size_t, std::size_t, std::string>> printed = {
      {0, 6, "7,1"}, {6, 7, "8"}, {6, 20, "6,2"}, {7, 21, "6,2"}, {20, 21, "8"}};
  EXPECT_EQ(labelled_edges(L), printed);
}

TEST(Lattice, OddHooksAreSelfDualAndMatchTheirConjugates) {
  for (int n : {7, 9})
    for (int r = 0; r < n; ++r) {
      LatticeGraph L = specht_lattice(Partition::hook(n, r));
      LatticeGraph C = specht_lattice(Partition::hook(n, n - r - 1));
      EXPECT_TRUE(lattice_isomorphism(L, reversed(L)).has_value()) << n << "," << r;
      EXPECT_TRUE(lattice_isomorphism(L, C).has_value()) << n << "," << r;
    }
}

TEST(Lattice, EdgesAreCovers) {
  for (auto p : {Partition{9, 5}, Partition::hook(10, 4), Partition{8, 4}}) {
    LatticeGraph L = specht_lattice(p);
    auto inside = [](const f2::Subspace& a, const f2::Subspace& b) { return f2::sum(a, b).dim() == b.dim(); };
    for (const auto& e : L.edges) {
      const auto &X = L.nodes[e.from].space, &Y = L.nodes[e.to].space;
      ASSERT_TRUE(inside(X, Y) && X.dim() < Y.dim()) << p.str();
      for (const auto& z : L.nodes)
        EXPECT_FALSE(z.dim > X.dim() && z.dim < Y.dim() && inside(X, z.space) && inside(z.space, Y)) << p.str();
    }
  }
}

TEST(HomSpace, EverySolutionSpinsToACopyOfTheSimple) {
  RepModule M = dense_specht(Partition::hook(10, 4));
  for (auto f : hook_factors(10, 4)) {
    RepModule D = simple_module(f.label);
    SpinProgram P = spin_program(D);
    for (const auto& w : hom_space(P, M)) {
      f2::Matrix img = replay(P, M, w);
      f2::Subspace W = f2::Subspace::span(img);
      EXPECT_EQ(W.dim(), D.dim) << f.label.str();
      EXPECT_TRUE(is_invariant(M, W)) << f.label.str();
    }
  }
}

TEST(Socle, SecondSocleTwoWays) {
  for (auto p : {Partition{9, 5}, Partition::hook(10, 4), Partition{7, 3}, Partition::hook(8, 2)}) {
    RepModule M = dense_specht(p);
    auto factors = specht_factors(p);
    LatticeGraph L = specht_lattice(p);
    f2::Subspace atoms(M.dim);
    for (const auto& e : L.edges)
      if (e.from == L.bottom) atoms = f2::sum(atoms, L.nodes[e.to].space);
    f2::Subspace S1 = socle(M, factors);
    ASSERT_EQ(atoms, S1) << p.str();
    std::size_t s1 = L.nodes.size();
    for (const auto& n : L.nodes)
      if (n.space == S1) s1 = n.id;
    ASSERT_LT(s1, L.nodes.size()) << p.str();
    f2::Subspace via_bfs = S1;
    for (const auto& e : L.edges)
      if (e.from == s1) via_bfs = f2::sum(via_bfs, L.nodes[e.to].space);
    RepModule Q = quotient_module(M, S1);
    f2::QuotientMap qm(S1);
    f2::Subspace direct = f2::Subspace::span(f2::stack(S1.basis(), qm.lift_rows(socle(Q, factors).basis())));
    EXPECT_EQ(direct, via_bfs) << p.str();
  }
}

TEST(Lattice, ShapesOfSizeOne) {
  for (auto p : {Partition{1}, Partition{2}}) {
    LatticeGraph L = specht_lattice(p);
    EXPECT_EQ(L.dims(), (std::vector<std::size_t>{0, 1})) << p.str();
    EXPECT_TRUE(compare_with_prediction(L, profile(p)).agree()) << p.str();
  }
}
