#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <numeric>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "spechtlab/f2.hpp"
#include "spechtlab/module.hpp"
#include "spechtlab/partition.hpp"
#include "spechtlab/tableau.hpp"

namespace spechtlab {

constexpr std::size_t kDefaultDenseLimit = 6000;

// Generator matrices on the standard polytabloid basis.
inline RepModule rep_matrices(SpechtBasis& B, std::size_t dense_limit = kDefaultDenseLimit) {
  const int n = B.shape().n();
  RepModule M;
  M.dim = B.dim();
  M.label = B.shape().str();
  for (std::size_t j = 0; j < B.dim(); ++j) M.basis_desc.push_back(B.tableau(j).str());
  std::vector<int> col_of;
  for (std::size_t c = 0; c < static_cast<std::size_t>(B.shape()[0]); ++c)
    for (int k = 0; k < B.shape().conjugate()[c]; ++k) col_of.push_back(static_cast<int>(c));
  std::string w;
  for (int i = 1; i < n; ++i) {
    std::vector<std::vector<std::uint32_t>> rows(B.dim());
    for (std::size_t j = 0; j < B.dim(); ++j) {
      w = B.word(j);
      auto pi = w.find(static_cast<char>(i)), pj = w.find(static_cast<char>(i + 1));
      // A swap inside one column fixes e_t; otherwise swapping consecutive values keeps columns sorted.
      if (col_of[pi] == col_of[pj]) {
        rows[j].assign(1, static_cast<std::uint32_t>(j));
        continue;
      }
      std::swap(w[pi], w[pj]);
      rows[j] = B.straighten_word(w);
    }
    M.sparse.push_back(f2::SparseRows::from_lists(B.dim(), rows));
  }
  if (M.dim <= dense_limit) M.densify();
  return M;
}

inline RepModule rep_matrices(const Partition& shape, std::size_t dense_limit = kDefaultDenseLimit) {
  SpechtBasis B(shape);
  return rep_matrices(B, dense_limit);
}

// <e_s, e_t> mod 2 over the standard basis, via shared tabloids.
inline f2::Matrix gram_matrix(const SpechtBasis& B) {
  std::unordered_map<std::string, std::vector<std::uint32_t>> owners;
  for (std::size_t j = 0; j < B.dim(); ++j)
    for (auto& code : polytabloid_codes(B.tableau(j))) owners[std::move(code)].push_back(static_cast<std::uint32_t>(j));
  f2::Matrix G(B.dim(), B.dim());
  for (const auto& [code, list] : owners)
    for (std::uint32_t a : list)
      for (std::uint32_t b : list) G.flip(a, b);
  return G;
}

inline f2::Matrix gram_matrix(const Partition& shape) { return gram_matrix(SpechtBasis(shape)); }

// S ∩ S-perp, the unique maximal submodule when the shape is 2-regular.
inline f2::Subspace gram_radical(const SpechtBasis& B) { return f2::kernel(gram_matrix(B)); }

inline RepModule simple_module(const Partition& shape) {
  if (!is_p_regular(shape, 2)) throw std::invalid_argument("simple module requires a 2-regular partition");
  SpechtBasis B(shape);
  RepModule S = rep_matrices(B);
  return quotient_module(S, gram_radical(B), "D(" + shape.str() + ")");
}

// A linear map between modules; row j is the image of domain basis vector j.
struct SpechtHom {
  std::shared_ptr<const RepModule> domain, codomain;
  f2::Matrix matrix;

  SpechtHom(std::shared_ptr<const RepModule> dom, std::shared_ptr<const RepModule> cod, f2::Matrix m)
      : domain(std::move(dom)), codomain(std::move(cod)), matrix(std::move(m)) {
    if (matrix.rows() != domain->dim || matrix.cols() != codomain->dim)
      throw std::invalid_argument("hom matrix shape mismatch");
    if (!is_equivariant()) throw std::logic_error("hom matrix is not equivariant");
  }

  bool is_equivariant() const {
    if (domain->num_gens() != codomain->num_gens()) return false;
    for (std::size_t g = 0; g < domain->num_gens(); ++g)
      if (!(f2::multiply(domain->dense_gen(g), matrix) == act_rows(*codomain, g, matrix))) return false;
    return true;
  }
  std::size_t rank() const { return f2::rank(matrix); }
  f2::Subspace image() const { return f2::Subspace::span(matrix); }
  f2::Subspace kernel() const { return f2::left_kernel(matrix); }
};

namespace detail {

inline Tableau two_row_tableau(const std::vector<int>& top, const std::vector<int>& bottom) {
  if (bottom.empty()) return Tableau::from_rows({top});
  return Tableau::from_rows({top, bottom});
}

inline void require_even(int n) {
  if (n <= 0 || n % 2 != 0) throw std::invalid_argument("n must be a positive even integer");
}

}  // namespace detail

// The map S^(n-i,i) -> S^(n-i-1,i+1), e_s -> sum over j of e_{t_j}.
inline SpechtHom theta_hat(int i, int n) {
  detail::require_even(n);
  if (i < 0 || 2 * i >= n) throw std::invalid_argument("theta_hat requires 0 <= i < n/2");
  SpechtBasis dom_b(Partition::two_part(n - i, i)), cod_b(Partition::two_part(n - i - 1, i + 1));
  auto dom = std::make_shared<RepModule>(rep_matrices(dom_b));
  auto cod = std::make_shared<RepModule>(rep_matrices(cod_b));
  f2::Matrix T(dom_b.dim(), cod_b.dim());
  const int l = (n - 2 * i) / 2;
  for (std::size_t u = 0; u < dom_b.dim(); ++u) {
    const auto rows = dom_b.tableau(u).rows();
    std::vector<int> a(rows[0].begin(), rows[0].begin() + i), c(rows[0].begin() + i, rows[0].end());
    std::vector<int> b = i > 0 ? rows[1] : std::vector<int>{};
    for (int j = 0; j < l; ++j) {
      std::vector<int> top = a, bottom = b;
      top.push_back(c[static_cast<std::size_t>(2 * j)]);
      bottom.push_back(c[static_cast<std::size_t>(2 * j + 1)]);
      for (int k = 0; k < 2 * l; ++k)
        if (k != 2 * j && k != 2 * j + 1) top.push_back(c[static_cast<std::size_t>(k)]);
      T.set_row(u, T.row_vector(u) ^ cod_b.straighten(detail::two_row_tableau(top, bottom)));
    }
  }
  return SpechtHom(dom, cod, std::move(T));
}

// Second-row subsets of a two-row composition, in lexicographic order.
inline std::vector<std::vector<int>> tabloid_subsets(int n, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int next) -> void {
    if (static_cast<int>(cur.size()) == k) {
      out.push_back(cur);
      return;
    }
    for (int x = next; x <= n - (k - static_cast<int>(cur.size())) + 1; ++x) {
      cur.push_back(x);
      self(self, x + 1);
      cur.pop_back();
    }
  };
  rec(rec, 1);
  return out;
}

namespace detail {

inline std::size_t subset_index(const std::vector<std::vector<int>>& all, const std::vector<int>& s) {
  auto it = std::lower_bound(all.begin(), all.end(), s);
  if (it == all.end() || *it != s) throw std::logic_error("subset not found");
  return static_cast<std::size_t>(it - all.begin());
}

}  // namespace detail

// psi_{1,u}: M^(m1,m2) -> M^(m1+u,m2-u); row k is the image of the tabloid with second row subset k.
inline f2::Matrix psi_row_map(int u, int m1, int m2) {
  if (m1 < 0 || m2 < 0 || u < 1 || u > m2) throw std::invalid_argument("psi requires 1 <= u <= mu_2");
  const int n = m1 + m2;
  auto from = tabloid_subsets(n, m2), to = tabloid_subsets(n, m2 - u);
  f2::Matrix P(from.size(), to.size());
  for (std::size_t a = 0; a < from.size(); ++a)
    for (const auto& pick : tabloid_subsets(m2, m2 - u)) {
      std::vector<int> s;
      for (int x : pick) s.push_back(from[a][static_cast<std::size_t>(x - 1)]);
      P.flip(a, detail::subset_index(to, s));
    }
  return P;
}

// Standard polytabloids of a two-row shape written in the tabloid basis of M^shape.
inline f2::Matrix polytabloids_in_tabloids(const SpechtBasis& B) {
  const Partition& sh = B.shape();
  if (!sh.is_two_part()) throw std::invalid_argument("tabloid expansion implemented for two-row shapes");
  const int n = sh.n();
  auto subs = tabloid_subsets(n, sh[1]);
  f2::Matrix P(B.dim(), subs.size());
  for (std::size_t j = 0; j < B.dim(); ++j)
    for (const auto& code : polytabloid_codes(B.tableau(j))) {
      std::vector<int> s;
      for (int x = 1; x <= n; ++x)
        if (code[static_cast<std::size_t>(x - 1)] == 1) s.push_back(x);
      P.flip(j, detail::subset_index(subs, s));
    }
  return P;
}

// Theta_S on tabloids: move one first-row entry into the second row.
inline f2::Matrix theta_tabloid_map(int i, int n) {
  if (i < 0 || 2 * i >= n) throw std::invalid_argument("theta requires 0 <= i < n/2");
  auto from = tabloid_subsets(n, i), to = tabloid_subsets(n, i + 1);
  f2::Matrix T(from.size(), to.size());
  for (std::size_t a = 0; a < from.size(); ++a)
    for (int x = 1; x <= n; ++x) {
      if (std::binary_search(from[a].begin(), from[a].end(), x)) continue;
      auto s = from[a];
      s.insert(std::upper_bound(s.begin(), s.end(), x), x);
      T.flip(a, detail::subset_index(to, s));
    }
  return T;
}

// Image of theta_hat(i-1) inside S^(n-i,i).
inline f2::Subspace star_submodule(int i, int n) {
  detail::require_even(n);
  if (i < 1 || 2 * i > n) throw std::invalid_argument("star submodule requires 1 <= i <= n/2");
  return theta_hat(i - 1, n).image();
}

// A block of numerals from which a fixed number must lie in the first column.
struct ChoiceGroup {
  std::vector<int> elems;
  int take = 0;
};

// Sum of hook polytabloids over all first columns allowed by the groups.
inline f2::Vector hook_group_sum(SpechtBasis& B, const std::vector<ChoiceGroup>& groups) {
  const Partition& sh = B.shape();
  if (!sh.is_hook()) throw std::invalid_argument("group sums are defined for hook shapes");
  const int n = sh.n(), r = sh.hook_leg();
  int total = 0;
  for (const auto& g : groups) total += g.take;
  if (total != r + 1) throw std::invalid_argument("groups do not fill the first column");
  std::vector<std::uint32_t> acc;
  std::vector<int> col;
  auto rec = [&](auto&& self, std::size_t gi) -> void {
    if (gi == groups.size()) {
      std::vector<int> c = col;
      std::sort(c.begin(), c.end());
      std::string w;
      for (int x : c) w.push_back(static_cast<char>(x));
      for (int x = 1; x <= n; ++x)
        if (!std::binary_search(c.begin(), c.end(), x)) w.push_back(static_cast<char>(x));
      B.straighten_into(w, acc);
      return;
    }
    const auto& g = groups[gi];
    std::vector<bool> mask(g.elems.size(), false);
    std::fill(mask.begin(), mask.begin() + g.take, true);
    do {
      std::size_t before = col.size();
      for (std::size_t k = 0; k < mask.size(); ++k)
        if (mask[k]) col.push_back(g.elems[k]);
      self(self, gi + 1);
      col.resize(before);
    } while (std::prev_permutation(mask.begin(), mask.end()));
  };
  rec(rec, 0);
  f2::Vector v(B.dim());
  for (std::uint32_t x : acc) v.set(x);
  return v;
}

struct Filtration {
  RepModule module;
  std::vector<f2::Subspace> steps;          // increasing chain, last step is the whole module
  std::vector<f2::Vector> generators;       // one per step, empty when the step is taken as the whole module
  std::vector<Partition> labels;            // label of each step's quotient
  std::vector<std::vector<ChoiceGroup>> groups;
};

namespace detail {

class Numerals {
 public:
  std::vector<int> take(int k) {
    std::vector<int> v(static_cast<std::size_t>(k));
    std::iota(v.begin(), v.end(), next_);
    next_ += k;
    return v;
  }
  int used() const { return next_ - 1; }

 private:
  int next_ = 1;
};

inline std::vector<ChoiceGroup> hook_filtration_groups(int r, int k) {
  Numerals N;
  std::vector<ChoiceGroup> g;
  if (r > 2 * k) {
    g.push_back({N.take(1), 1});
    g.push_back({N.take(1), 1});
    for (int i = 2; i <= r - 2 * k; ++i) g.push_back({N.take(2), 1});
  } else {
    g.push_back({N.take(1), 1});
  }
  for (int j = 0; j < k; ++j) g.push_back({N.take(3), 2});
  return g;
}

// Empty when the canonical tuple does not fit inside 1..n.
inline std::vector<ChoiceGroup> second_filtration_groups(int n, int r, int l) {
  const int m = n - r;
  Numerals N;
  std::vector<ChoiceGroup> g;
  if (2 * l == m) {
    g.push_back({N.take(1), 1});
    g.push_back({N.take(3), 2});
    g.push_back({N.take(r - 1), r - 2});
  } else {
    const int pairs = l == 0 ? m - 1 : m - 2 * l;
    const int cs = l == 0 ? 2 * r - n + 2 : 2 * r + 2 * l + 1 - n;
    if (pairs < 1) return {};
    g.push_back({N.take(1), 1});
    g.push_back({N.take(1), 1});
    for (int i = 2; i <= pairs; ++i) g.push_back({N.take(2), 1});
    g.push_back({N.take(cs), cs - 1});
  }
  if (N.used() > n) return {};
  return g;
}

}  // namespace detail

// Chain M_0 <= ... <= M_{r/2} of S^(n-r,1^r) with M_k / M_{k-1} ~ S^(n-r+2k, r-2k).
inline Filtration hook_filtration(int n, int r) {
  if (r < 0 || n - r < r) throw std::invalid_argument("hook filtration requires 0 <= r <= n-r");
  SpechtBasis B(Partition::hook(n, r));
  Filtration F;
  F.module = rep_matrices(B);
  for (int k = 0; k <= r / 2; ++k) {
    auto groups = detail::hook_filtration_groups(r, k);
    f2::Vector x = hook_group_sum(B, groups);
    F.steps.push_back(spin(F.module, x));
    F.generators.push_back(std::move(x));
    F.labels.push_back(Partition::two_part(n - r + 2 * k, r - 2 * k));
    F.groups.push_back(std::move(groups));
  }
  return F;
}

// Chain N_0 <= ... of S^(n-r,1^r), n even and n-r <= r, with N_0 ~ S*(r,n-r) and N_l / N_{l-1} ~ S^(r+2l, n-r-2l).
inline Filtration second_filtration(int n, int r) {
  detail::require_even(n);
  if (r >= n || n - r > r) throw std::invalid_argument("second filtration requires n-r <= r < n");
  SpechtBasis B(Partition::hook(n, r));
  Filtration F;
  F.module = rep_matrices(B);
  const int m = n - r;
  for (int l = 0; 2 * l <= m; ++l) {
    auto groups = detail::second_filtration_groups(n, r, l);
    F.labels.push_back(Partition::two_part(r + std::max(2 * l, 1), m - std::max(2 * l, 1)));
    if (groups.empty()) {
      F.steps.push_back(f2::Subspace::full(F.module.dim));
      F.generators.emplace_back();
    } else {
      f2::Vector x = hook_group_sum(B, groups);
      F.steps.push_back(spin(F.module, x));
      F.generators.push_back(std::move(x));
    }
    F.groups.push_back(std::move(groups));
  }
  return F;
}

namespace detail {

// Permutation of 1..n as an image table, perm[x] = image of x.
inline std::vector<int> identity_perm(int n) {
  std::vector<int> p(static_cast<std::size_t>(n) + 1);
  std::iota(p.begin(), p.end(), 0);
  return p;
}

inline std::vector<int> cycle_perm(int n, const std::vector<int>& cyc) {
  auto p = identity_perm(n);
  for (std::size_t k = 0; k < cyc.size(); ++k)
    p[static_cast<std::size_t>(cyc[k])] = cyc[(k + 1) % cyc.size()];
  return p;
}

}  // namespace detail

// Isomorphism S^(n-r,1^r) -> S^(r+1,1^(n-r-1)) for odd n, e_s -> h e_t extended equivariantly.
inline SpechtHom duality_map(int n, int r) {
  if (n <= 0 || n % 2 == 0) throw std::invalid_argument("duality map requires odd n");
  if (r < 1 || r >= n) throw std::invalid_argument("duality map requires 1 <= r < n");
  SpechtBasis dom_b(Partition::hook(n, r)), cod_b(Partition::hook(n, n - r - 1));
  auto dom = std::make_shared<RepModule>(rep_matrices(dom_b));
  auto cod = std::make_shared<RepModule>(rep_matrices(cod_b));
  std::vector<std::vector<int>> scols(static_cast<std::size_t>(n - r));
  for (int x = 1; x <= r + 1; ++x) scols[0].push_back(x);
  for (int c = 1; c < n - r; ++c) scols[static_cast<std::size_t>(c)].push_back(r + 1 + c);
  const Tableau s = Tableau::from_columns(dom_b.shape(), scols);
  const Tableau t = s.conjugate();
  std::vector<std::vector<int>> h;
  h.push_back(detail::identity_perm(n));
  h.push_back(detail::cycle_perm(n, {1, 2}));
  for (int l = 3; l <= r + 1; ++l) h.push_back(detail::cycle_perm(n, {1, l, 2}));
  f2::Matrix F(dom_b.dim(), cod_b.dim());
  for (std::size_t u = 0; u < dom_b.dim(); ++u) {
    const Tableau& tu = dom_b.tableau(u);
    auto pi = detail::identity_perm(n);
    for (std::size_t k = 0; k < s.entries().size(); ++k)
      pi[static_cast<std::size_t>(s.entries()[k])] = tu.entries()[k];
    f2::Vector img(cod_b.dim());
    for (const auto& hl : h) {
      auto p = detail::identity_perm(n);
      for (int x = 1; x <= n; ++x) p[static_cast<std::size_t>(x)] = pi[static_cast<std::size_t>(hl[static_cast<std::size_t>(x)])];
      img ^= cod_b.straighten(t.permuted(p));
    }
    F.set_row(u, img);
  }
  return SpechtHom(dom, cod, std::move(F));
}

// The fixed tableaux s and t used by the duality map, and the h-terms of f(e_s).
inline std::vector<Tableau> duality_terms(int n, int r) {
  if (n <= 0 || n % 2 == 0 || r < 1 || r >= n) throw std::invalid_argument("duality terms require odd n and 1 <= r < n");
  std::vector<std::vector<int>> trows(static_cast<std::size_t>(n - r));
  for (int x = 1; x <= r + 1; ++x) trows[0].push_back(x);
  for (int c = 1; c < n - r; ++c) trows[static_cast<std::size_t>(c)].push_back(r + 1 + c);
  const Tableau t = Tableau::from_rows(trows);
  std::vector<Tableau> out{t, t.permuted(detail::cycle_perm(n, {1, 2}))};
  for (int l = 3; l <= r + 1; ++l) out.push_back(t.permuted(detail::cycle_perm(n, {1, l, 2})));
  return out;
}

}  // namespace spechtlab
