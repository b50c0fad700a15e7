#pragma once

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstring>
#include <numeric>
#include <cmath>
#include <tuple>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <unordered_map>
#include <vector>

#include "spechtlab/f2.hpp"
#include "spechtlab/module.hpp"
#include "spechtlab/oracle.hpp"
#include "spechtlab/partition.hpp"
#include "spechtlab/specht.hpp"

namespace spechtlab {

// A sum of generator words; a word acts on row vectors as v -> v s_{w[0]} s_{w[1]} ...
struct AlgebraElement {
  std::vector<std::vector<std::size_t>> words;

  std::string str() const {
    std::string s;
    for (const auto& w : words) {
      if (!s.empty()) s += " + ";
      if (w.empty()) s += "1";
      for (std::size_t k = 0; k < w.size(); ++k) s += (k ? "*s" : "s") + std::to_string(w[k] + 1);
    }
    return s.empty() ? "0" : s;
  }
};

inline f2::Matrix element_matrix(const RepModule& M, const AlgebraElement& e) {
  std::map<std::vector<std::size_t>, f2::Matrix> prefix;
  f2::Matrix sum(M.dim, M.dim);
  for (const auto& w : e.words) {
    if (w.empty()) {
      sum ^= f2::Matrix::identity(M.dim);
      continue;
    }
    std::vector<std::size_t> p;
    f2::Matrix P;
    for (std::size_t k = 0; k < w.size(); ++k) {
      p.push_back(w[k]);
      if (auto it = prefix.find(p); it != prefix.end()) {
        P = it->second;
        continue;
      }
      P = k == 0 ? M.dense_gen(w[0]) : act_rows(M, w[k], P);
      prefix.emplace(p, P);
    }
    sum ^= P;
  }
  return sum;
}

// Standard-basis recipe for a simple module: spinning steps from a seed and the action in the spun basis.
struct SpinProgram {
  std::string label;
  std::size_t dim = 0;
  AlgebraElement element;  // the seed spans, or lies in, the null space of this element
  f2::Vector seed;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> steps;  // (parent, generator) for basis vectors 1..dim-1
  std::vector<std::size_t> level_start;
  f2::Matrix basis;                  // spun basis in the module's coordinates
  std::vector<f2::Matrix> relations;  // row j of relations[g]: image of basis vector j under s_g, in the spun basis
};

namespace detail {

inline bool any_bit_from(const f2::word* row, std::size_t from, std::size_t cols) {
  if (from >= cols) return false;
  std::size_t w = from / f2::kWordBits;
  if (row[w] >> (from % f2::kWordBits)) return true;
  for (++w; w < f2::words_for(cols); ++w)
    if (row[w]) return true;
  return false;
}

// Prefixes of one long irregular word (golden-ratio sequence of generators); sums of them act on a
// simple module much like generic matrices.
inline std::vector<std::vector<std::size_t>> base_words(std::size_t gens, std::size_t count) {
  std::vector<std::vector<std::size_t>> out{{}};
  if (gens == 0) return out;
  const double phi = 0.6180339887498949;
  std::vector<std::size_t> w;
  for (std::size_t i = 1; out.size() < count; ++i) {
    const double frac = static_cast<double>(i) * phi - std::floor(static_cast<double>(i) * phi);
    w.push_back(std::min(gens - 1, static_cast<std::size_t>(frac * static_cast<double>(gens))));
    out.push_back(w);
  }
  return out;
}

// Element with null space of dimension one on D when such an element turns up, else the smallest seen.
inline AlgebraElement choose_element(const RepModule& D) {
  const std::size_t K = D.num_gens() == 0 ? 1 : 16;
  auto base = base_words(D.num_gens(), K);
  std::vector<f2::Matrix> mats{f2::Matrix::identity(D.dim)};
  for (std::size_t i = 1; i < base.size(); ++i) mats.push_back(act_rows(D, base[i].back(), mats.back()));
  const std::uint32_t full = (1U << base.size()) - 1;
  std::optional<std::pair<std::size_t, std::uint32_t>> best;
  for (std::uint32_t t = 1, tries = 0; tries < 64 && t <= full; ++t) {
    const std::uint32_t m = (t * 40503U) & full;  // odd multiplier: a bijection that scatters the subsets
    if (m == 0) continue;
    ++tries;
    f2::Matrix A(D.dim, D.dim);
    for (std::size_t i = 0; i < base.size(); ++i)
      if (m >> i & 1U) A ^= mats[i];
    const std::size_t nullity = D.dim - f2::rank(A);
    if (nullity > 0 && (!best || nullity < best->first)) best = {nullity, m};
    if (nullity == 1) break;
  }
  if (!best) return {};  // the zero element kills everything
  AlgebraElement e;
  for (std::size_t i = 0; i < base.size(); ++i)
    if (best->second >> i & 1U) e.words.push_back(base[i]);
  return e;
}

}  // namespace detail

inline SpinProgram spin_program(const RepModule& D, std::string label = {}) {
  if (D.dim == 0) throw std::invalid_argument("spin program needs a nonzero module");
  SpinProgram P;
  P.label = label.empty() ? D.label : std::move(label);
  P.dim = D.dim;
  P.element = detail::choose_element(D);
  P.seed = f2::left_kernel(element_matrix(D, P.element)).basis().row_vector(0);
  P.basis = f2::Matrix(0, D.dim);
  P.basis.append_row(P.seed);
  f2::Subspace S = f2::Subspace::span(P.basis);
  std::vector<std::size_t> frontier{0};
  P.level_start = {0, 1};
  while (!frontier.empty()) {
    std::vector<std::size_t> next;
    for (std::size_t g = 0; g < D.num_gens(); ++g) {
      f2::Matrix img = act_rows(D, g, P.basis.select_rows(frontier));
      f2::Matrix red = img;
      S.reduce_rows(red);
      auto keep = f2::independent_rows(red);
      if (keep.empty()) continue;
      for (std::size_t i : keep) {
        next.push_back(P.basis.rows());
        P.basis.append_row(img.row(i));
        P.steps.emplace_back(static_cast<std::uint32_t>(frontier[i]), static_cast<std::uint32_t>(g));
      }
      S.absorb(f2::Subspace::span(red.select_rows(keep)));
    }
    frontier = std::move(next);
    if (!frontier.empty()) P.level_start.push_back(P.basis.rows());
  }
  if (P.basis.rows() != D.dim) throw std::invalid_argument("module is not generated by the seed, so it is not simple");
  f2::Matrix Binv = f2::inverse(P.basis);
  for (std::size_t g = 0; g < D.num_gens(); ++g) P.relations.push_back(f2::multiply(act_rows(D, g, P.basis), Binv));
  for (std::size_t lv = 0; lv < P.level_start.size(); ++lv) {
    const std::size_t lo = P.level_start[lv], hi = lv + 1 < P.level_start.size() ? P.level_start[lv + 1] : P.dim;
    const std::size_t reach = lv + 2 < P.level_start.size() ? P.level_start[lv + 2] : P.dim;
    for (const auto& R : P.relations)
      for (std::size_t j = lo; j < std::min(hi, P.dim); ++j)
        if (detail::any_bit_from(R.row(j), reach, P.dim)) throw std::logic_error("relation reaches beyond the next level");
  }
  return P;
}

namespace detail {

inline std::pair<std::size_t, std::size_t> level_range(const SpinProgram& P, std::size_t lv) {
  if (lv >= P.level_start.size()) return {P.dim, P.dim};
  const std::size_t hi = lv + 1 < P.level_start.size() ? P.level_start[lv + 1] : P.dim;
  return {std::min(P.level_start[lv], P.dim), std::min(hi, P.dim)};
}

// Basis of the combinations of the given vectors that sum to zero, by elimination along the rows.
inline f2::Matrix null_combinations(const std::vector<f2::Vector>& vs) {
  const std::size_t k = vs.size();
  f2::Matrix out(0, k);
  if (k == 0) return out;
  const std::size_t words = f2::words_for(vs[0].size());
  std::vector<std::vector<f2::word>> rows;
  std::vector<f2::Vector> combos;
  std::vector<std::size_t> pivots;
  for (std::size_t c = 0; c < k; ++c) {
    std::vector<f2::word> r(vs[c].data(), vs[c].data() + words);
    f2::Vector combo(k);
    combo.set(c);
    for (std::size_t t = 0; t < rows.size(); ++t)
      if (r[pivots[t] / f2::kWordBits] >> (pivots[t] % f2::kWordBits) & 1U) {
        f2::xor_into(r.data(), rows[t].data(), words);
        combo ^= combos[t];
      }
    std::size_t w = 0;
    while (w < words && r[w] == 0) ++w;
    if (w == words) {
      out.append_row(combo);
      continue;
    }
    const std::size_t piv = w * f2::kWordBits + static_cast<std::size_t>(std::countr_zero(r[w]));
    // Keep earlier rows free of the new pivot so later reductions need one pass.
    for (std::size_t t = 0; t < rows.size(); ++t)
      if (rows[t][w] >> (piv % f2::kWordBits) & 1U) {
        f2::xor_into(rows[t].data(), r.data(), words);
        combos[t] ^= combo;
      }
    rows.push_back(std::move(r));
    combos.push_back(std::move(combo));
    pivots.push_back(piv);
  }
  return out;
}

// Rows lo..hi of every candidate, stacked.
inline f2::Matrix stack_blocks(const std::vector<f2::Matrix>& V, std::size_t lo, std::size_t hi) {
  const std::size_t rows = hi - lo;
  f2::Matrix S(V.size() * rows, V[0].cols());
  for (std::size_t c = 0; c < V.size() && rows > 0; ++c)
    std::memcpy(S.row(c * rows), V[c].row(lo), rows * S.stride() * sizeof(f2::word));
  return S;
}

// Extends each candidate, whose rows cover the levels before lv, by the images recorded for level lv.
inline void replay_level(const SpinProgram& P, const RepModule& Q, std::size_t lv, std::vector<f2::Matrix>& V) {
  const auto [lo, hi] = level_range(P, lv);
  for (auto& Vc : V) Vc.resize_rows(hi);
  std::map<std::uint32_t, std::vector<std::size_t>> by_gen;
  for (std::size_t m = lo; m < hi; ++m) by_gen[P.steps[m - 1].second].push_back(m);
  for (const auto& [g, ms] : by_gen) {
    f2::Matrix parents(V.size() * ms.size(), Q.dim);
    for (std::size_t c = 0; c < V.size(); ++c)
      for (std::size_t k = 0; k < ms.size(); ++k)
        std::memcpy(parents.row(c * ms.size() + k), V[c].row(P.steps[ms[k] - 1].first), parents.stride() * sizeof(f2::word));
    f2::Matrix img = act_rows(Q, g, parents);
    for (std::size_t c = 0; c < V.size(); ++c)
      for (std::size_t k = 0; k < ms.size(); ++k)
        std::memcpy(V[c].row(ms[k]), img.row(c * ms.size() + k), parents.stride() * sizeof(f2::word));
  }
}

inline f2::Matrix row_block(const f2::Matrix& A, std::size_t lo, std::size_t hi) {
  f2::Matrix B(hi - lo, A.cols());
  if (hi > lo) std::memcpy(B.row(0), A.row(lo), (hi - lo) * A.stride() * sizeof(f2::word));
  return B;
}

// Rows lo..hi of A restricted to the first `cols` columns.
inline f2::Matrix block_prefix(const f2::Matrix& A, std::size_t lo, std::size_t hi, std::size_t cols) {
  f2::Matrix B(hi - lo, cols);
  const std::size_t w = B.stride();
  for (std::size_t i = lo; i < hi; ++i) std::memcpy(B.row(i - lo), A.row(i), w * sizeof(f2::word));
  if (cols % f2::kWordBits && w > 0) {
    const f2::word mask = (f2::word{1} << (cols % f2::kWordBits)) - 1;
    for (std::size_t i = 0; i < B.rows(); ++i) B.row(i)[w - 1] &= mask;
  }
  return B;
}

}  // namespace detail

// Images of the spun basis when the seed is sent to w; row m of the result is the image of basis vector m.
inline f2::Matrix replay(const SpinProgram& P, const RepModule& Q, const f2::Vector& w) {
  if (w.size() != Q.dim) throw std::invalid_argument("seed image length mismatch");
  std::vector<f2::Matrix> V{f2::Matrix(1, Q.dim)};
  V[0].set_row(0, w);
  for (std::size_t lv = 1; lv < P.level_start.size(); ++lv) detail::replay_level(P, Q, lv, V);
  V[0].resize_rows(P.dim);
  return V[0];
}

// Basis of {phi(seed) : phi in Hom(D, Q)}, found among vectors killed by the program's element.
// Candidates are replayed level by level; the relations of a level only involve the next one,
// so most candidates are discarded after a few levels.
inline std::vector<f2::Vector> hom_space(const SpinProgram& P, const RepModule& Q) {
  if (Q.dim == 0 || Q.dim < P.dim) return {};
  if (Q.num_gens() != P.relations.size()) throw std::invalid_argument("modules for different symmetric groups");
  f2::Subspace cand = f2::left_kernel(element_matrix(Q, P.element));
  if (cand.dim() == 0) return {};
  std::vector<f2::Vector> seeds;
  std::vector<f2::Matrix> V;
  for (std::size_t j = 0; j < cand.dim(); ++j) {
    seeds.push_back(cand.basis().row_vector(j));
    V.emplace_back(1, Q.dim);
    V.back().set_row(0, seeds.back());
  }
  const std::size_t gens = P.relations.size();
  auto prune = [&](const std::vector<f2::Vector>& defects) {
    f2::Matrix dep = detail::null_combinations(defects);
    if (dep.rows() == V.size()) return;
    std::vector<f2::Vector> seeds2;
    std::vector<f2::Matrix> V2;
    for (std::size_t r = 0; r < dep.rows(); ++r) {
      f2::Vector w(Q.dim);
      f2::Matrix Vr(V[0].rows(), Q.dim);
      for (std::size_t c = 0; c < V.size(); ++c)
        if (dep.get(r, c)) {
          w ^= seeds[c];
          Vr ^= V[c];
        }
      seeds2.push_back(std::move(w));
      V2.push_back(std::move(Vr));
    }
    seeds = std::move(seeds2);
    V = std::move(V2);
  };
  const std::size_t levels = P.level_start.size();
  for (std::size_t lv = 0; lv < levels && !V.empty(); ++lv) {
    detail::replay_level(P, Q, lv + 1, V);
    const auto [lo, hi] = detail::level_range(P, lv);
    const std::size_t chunk = std::max<std::size_t>(1, 4096 / V.size());
    for (std::size_t a = lo; a < hi && !V.empty(); a += chunk) {
      const std::size_t b = std::min(hi, a + chunk), rows = b - a, stride = V[0].stride(), defined = V[0].rows();
      // Relation rows of every generator for this block, stacked generator by generator.
      f2::Matrix R(gens * rows, defined);
      for (std::size_t g = 0; g < gens; ++g) {
        f2::Matrix Rg = detail::block_prefix(P.relations[g], a, b, defined);
        std::memcpy(R.row(g * rows), Rg.data(), rows * R.stride() * sizeof(f2::word));
      }
      std::vector<f2::Vector> defects(V.size(), f2::Vector(gens * rows * stride * f2::kWordBits));
      const f2::Matrix block = detail::stack_blocks(V, a, b);
      for (std::size_t g = 0; g < gens; ++g) {
        f2::Matrix img = act_rows(Q, g, block);
        for (std::size_t c = 0; c < V.size(); ++c)
          std::memcpy(defects[c].data() + g * rows * stride, img.row(c * rows), rows * stride * sizeof(f2::word));
      }
      std::size_t nnz = 0;
      for (std::size_t i = 0; i < R.rows(); ++i)
        for (std::size_t w = 0; w < R.stride(); ++w) nnz += static_cast<std::size_t>(std::popcount(R.row(i)[w]));
      const bool sparse = nnz < (defined / 8 + 1) * (256 + R.rows());
      for (std::size_t c = 0; c < V.size(); ++c) {
        f2::word* dst = defects[c].data();
        if (sparse) {
          for (std::size_t i = 0; i < R.rows(); ++i)
            for (std::size_t w = 0; w < R.stride(); ++w)
              for (f2::word bits = R.row(i)[w]; bits; bits &= bits - 1)
                f2::xor_into(dst + i * stride, V[c].row(w * f2::kWordBits + std::countr_zero(bits)), stride);
        } else {
          f2::Matrix rhs = f2::multiply(R, V[c]);
          f2::xor_into(dst, rhs.data(), R.rows() * stride);
        }
      }
      prune(defects);
    }
  }
  if (V.empty()) return {};
  return seeds;
}

struct SimpleInfo {
  Partition label;
  RepModule module;
  SpinProgram program;
};

// Simple modules D^label built on demand and shared.
class SimpleRegistry {
 public:
  std::shared_ptr<const SimpleInfo> get(const Partition& label) {
    std::shared_ptr<std::once_flag> flag;
    {
      std::lock_guard<std::mutex> lock(mu_);
      auto& slot = slots_[label];
      if (!slot.flag) slot.flag = std::make_shared<std::once_flag>();
      flag = slot.flag;
    }
    std::call_once(*flag, [&] {
      auto info = std::make_shared<SimpleInfo>();
      info->label = label;
      info->module = simple_module(label);
      info->program = spin_program(info->module, "D(" + label.str() + ")");
      std::lock_guard<std::mutex> lock(mu_);
      slots_[label].info = std::move(info);
    });
    std::lock_guard<std::mutex> lock(mu_);
    return slots_[label].info;
  }

 private:
  struct Slot {
    std::shared_ptr<std::once_flag> flag;
    std::shared_ptr<const SimpleInfo> info;
  };
  std::mutex mu_;
  std::map<Partition, Slot> slots_;
};

inline SimpleRegistry& simple_registry() {
  static SimpleRegistry reg;
  return reg;
}

struct FactorSpec {
  Partition label;
  int multiplicity = 1;
};

inline std::vector<FactorSpec> two_part_factors(const Partition& lambda) {
  std::vector<FactorSpec> out;
  for (const auto& f : profile(lambda, 2).factors()) out.push_back({f.nu, 1});
  return out;
}

inline std::vector<FactorSpec> hook_factors(int n, int r) {
  std::vector<FactorSpec> out;
  for (int j = 0; n - j > j; ++j)
    if (int m = hook_decomp(n, r, j); m > 0) out.push_back({Partition::two_part(n - j, j), m});
  return out;
}

// Composition factors of S^lambda for two-part and hook shapes.
inline std::vector<FactorSpec> specht_factors(const Partition& lambda) {
  if (lambda.is_two_part()) return two_part_factors(lambda);
  if (lambda.is_hook()) return hook_factors(lambda.n(), lambda.hook_leg());
  throw std::invalid_argument("composition factors are available for two-part and hook shapes only");
}

struct LatticeGraph {
  struct Node {
    std::size_t id = 0;
    f2::Subspace space;
    std::size_t dim = 0;
  };
  struct Edge {
    std::size_t from = 0, to = 0;
    Partition label;
    friend bool operator==(const Edge&, const Edge&) = default;
  };
  std::vector<Node> nodes;
  std::vector<Edge> edges;
  std::size_t top = 0, bottom = 0;
  std::size_t module_dim = 0;
  bool truncated = false;
  bool incomplete = false;  // some proper quotient had no simple submodule among the candidates
  std::string label;

  std::vector<std::size_t> dims() const {
    std::vector<std::size_t> d;
    for (const auto& n : nodes) d.push_back(n.dim);
    return d;
  }
  std::vector<std::vector<std::size_t>> up() const {
    std::vector<std::vector<std::size_t>> a(nodes.size());
    for (const auto& e : edges) a[e.from].push_back(e.to);
    return a;
  }
};

struct LatticeOptions {
  std::size_t guard = 10000;
  unsigned threads = 1;
};

namespace detail {

inline void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& fn) {
  if (threads <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr err;
  std::mutex err_mu;
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < std::min<std::size_t>(threads, count); ++t)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(err_mu);
          if (!err) err = std::current_exception();
        }
      }
    });
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

struct Cover {
  f2::Subspace space;
  std::size_t factor;
};

}  // namespace detail

// All simple submodules of M among the candidates, with the index of the matching candidate.
inline std::vector<std::pair<f2::Subspace, std::size_t>> simple_submodules(
    const RepModule& M, const std::vector<std::shared_ptr<const SimpleInfo>>& simples,
    const std::vector<bool>& allowed = {}) {
  std::vector<std::pair<f2::Subspace, std::size_t>> out;
  for (std::size_t f = 0; f < simples.size(); ++f) {
    if (!allowed.empty() && !allowed[f]) continue;
    auto H = hom_space(simples[f]->program, M);
    if (H.size() > 20) throw std::runtime_error("hom space too large to enumerate");
    for (std::uint32_t c = 1; c < (1U << H.size()); ++c) {
      f2::Vector w(M.dim);
      for (std::size_t j = 0; j < H.size(); ++j)
        if (c >> j & 1U) w ^= H[j];
      f2::Subspace W = spin(M, w);
      if (W.dim() != simples[f]->module.dim) throw std::logic_error("hom image has the wrong dimension");
      out.emplace_back(std::move(W), f);
    }
  }
  return out;
}

inline std::vector<std::shared_ptr<const SimpleInfo>> load_simples(const std::vector<FactorSpec>& factors,
                                                                   SimpleRegistry& reg = simple_registry()) {
  std::vector<std::shared_ptr<const SimpleInfo>> s;
  for (const auto& f : factors) s.push_back(reg.get(f.label));
  return s;
}

inline std::vector<f2::Subspace> socle_simples(const RepModule& M, const std::vector<FactorSpec>& factors,
                                               SimpleRegistry& reg = simple_registry()) {
  std::vector<f2::Subspace> out;
  for (auto& [W, f] : simple_submodules(M, load_simples(factors, reg))) out.push_back(std::move(W));
  return out;
}

inline f2::Subspace socle(const RepModule& M, const std::vector<FactorSpec>& factors,
                          SimpleRegistry& reg = simple_registry()) {
  f2::Subspace S(M.dim);
  for (const auto& W : socle_simples(M, factors, reg)) S = f2::sum(S, W);
  return S;
}

// Breadth-first closure from 0: every cover of a known node X is X plus a simple submodule of M/X.
inline LatticeGraph submodule_lattice(const RepModule& M, const std::vector<FactorSpec>& factors,
                                      const LatticeOptions& opt = {}, SimpleRegistry& reg = simple_registry()) {
  auto simples = load_simples(factors, reg);
  LatticeGraph L;
  L.module_dim = M.dim;
  L.label = M.label;
  struct State {
    f2::Subspace space;
    std::vector<int> used;
  };
  std::vector<State> st;
  std::unordered_map<std::size_t, std::vector<std::size_t>> by_hash;
  auto find_or_add = [&](f2::Subspace X, const std::vector<int>& used, bool& added) -> std::size_t {
    auto& bucket = by_hash[X.hash()];
    for (std::size_t id : bucket)
      if (st[id].space == X) {
        added = false;
        return id;
      }
    added = true;
    st.push_back({std::move(X), used});
    bucket.push_back(st.size() - 1);
    return st.size() - 1;
  };
  bool added = false;
  find_or_add(f2::Subspace(M.dim), std::vector<int>(factors.size(), 0), added);
  std::vector<std::size_t> frontier{0};
  std::vector<std::tuple<std::size_t, std::size_t, std::size_t>> raw_edges;
  while (!frontier.empty() && !L.truncated) {
    std::vector<std::vector<detail::Cover>> found(frontier.size());
    std::vector<bool> dead(frontier.size(), false);
    detail::parallel_for(frontier.size(), opt.threads, [&](std::size_t idx) {
      const State& s = st[frontier[idx]];
      if (s.space.dim() == M.dim) return;
      RepModule Q = quotient_module(M, s.space);
      std::vector<bool> allowed(factors.size());
      for (std::size_t f = 0; f < factors.size(); ++f)
        allowed[f] = s.used[f] < factors[f].multiplicity && simples[f]->module.dim <= Q.dim;
      f2::QuotientMap qm(s.space);
      for (auto& [W, f] : simple_submodules(Q, simples, allowed))
        found[idx].push_back({f2::Subspace::span(f2::stack(s.space.basis(), qm.lift_rows(W.basis()))), f});
      if (found[idx].empty()) dead[idx] = true;
    });
    std::vector<std::size_t> next;
    for (std::size_t idx = 0; idx < frontier.size(); ++idx) {
      if (dead[idx]) L.incomplete = true;
      for (auto& c : found[idx]) {
        auto used = st[frontier[idx]].used;
        ++used[c.factor];
        std::size_t id = find_or_add(std::move(c.space), used, added);
        if (added) {
          next.push_back(id);
          if (st.size() > opt.guard) L.truncated = true;
        }
        raw_edges.emplace_back(frontier[idx], id, c.factor);
      }
    }
    frontier = std::move(next);
  }
  std::vector<std::size_t> order(st.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return st[a].space.dim() < st[b].space.dim(); });
  std::vector<std::size_t> rank(st.size());
  for (std::size_t i = 0; i < order.size(); ++i) rank[order[i]] = i;
  for (std::size_t i = 0; i < order.size(); ++i)
    L.nodes.push_back({i, std::move(st[order[i]].space), 0});
  for (auto& n : L.nodes) n.dim = n.space.dim();
  for (auto& [a, b, f] : raw_edges) L.edges.push_back({rank[a], rank[b], factors[f].label});
  std::sort(L.edges.begin(), L.edges.end(), [](const auto& x, const auto& y) {
    return std::tie(x.from, x.to) < std::tie(y.from, y.to);
  });
  L.bottom = 0;
  L.top = L.nodes.size() - 1;
  if (!L.truncated && L.nodes.back().dim != M.dim) L.incomplete = true;
  return L;
}

// Lattice of a module with a known unique maximal submodule R: the lattice of R plus the top.
inline LatticeGraph lattice_with_unique_maximal(const RepModule& M, const f2::Subspace& R, const Partition& head,
                                                std::vector<FactorSpec> factors, const LatticeOptions& opt = {},
                                                SimpleRegistry& reg = simple_registry()) {
  auto it = std::find_if(factors.begin(), factors.end(), [&](const FactorSpec& f) { return f.label == head; });
  if (it == factors.end()) throw std::invalid_argument("head label is not a composition factor");
  if (--it->multiplicity == 0) factors.erase(it);
  RepModule Rm = submodule_action(M, R, M.label + "/rad");
  LatticeGraph L = submodule_lattice(Rm, factors, opt, reg);
  for (auto& n : L.nodes) n.space = f2::Subspace::span(f2::multiply(n.space.basis(), R.basis()));
  L.nodes.push_back({L.nodes.size(), f2::Subspace::full(M.dim), M.dim});
  L.edges.push_back({L.top, L.nodes.size() - 1, head});
  L.top = L.nodes.size() - 1;
  L.module_dim = M.dim;
  L.label = M.label;
  return L;
}

// Specht lattice from given generators; for 2-regular shapes the Gram radical is the unique maximal submodule.
inline LatticeGraph specht_lattice(const Partition& lambda, RepModule M, const LatticeOptions& opt = {},
                                   SimpleRegistry& reg = simple_registry()) {
  auto factors = specht_factors(lambda);
  if (is_p_regular(lambda, 2) && M.dim > 1) {
    SpechtBasis B(lambda);
    if (B.dim() != M.dim) throw std::invalid_argument("generators do not match the shape");
    return lattice_with_unique_maximal(M, gram_radical(B), lambda, factors, opt, reg);
  }
  if (!M.has_dense()) M.densify();
  return submodule_lattice(M, factors, opt, reg);
}

inline LatticeGraph specht_lattice(const Partition& lambda, const LatticeOptions& opt = {},
                                   SimpleRegistry& reg = simple_registry()) {
  return specht_lattice(lambda, rep_matrices(lambda), opt, reg);
}

inline bool is_uniserial(const LatticeGraph& L) {
  if (L.truncated) throw std::invalid_argument("lattice is truncated");
  std::vector<int> out(L.nodes.size(), 0);
  for (const auto& e : L.edges)
    if (++out[e.from] > 1) return false;
  return true;
}

namespace detail {

inline std::vector<std::vector<bool>> reachability(const LatticeGraph& L) {
  const std::size_t n = L.nodes.size();
  std::vector<std::vector<bool>> le(n, std::vector<bool>(n, false));
  auto up = L.up();
  for (std::size_t i = n; i-- > 0;) {
    le[i][i] = true;
    for (std::size_t j : up[i])
      for (std::size_t k = 0; k < n; ++k)
        if (le[j][k]) le[i][k] = true;
  }
  return le;
}

}  // namespace detail

// Checks a ^ (b v c) = (a ^ b) v (a ^ c) with meets and joins read off the order.
inline bool is_distributive(const LatticeGraph& L) {
  if (L.truncated) throw std::invalid_argument("lattice is truncated");
  const std::size_t n = L.nodes.size();
  auto le = detail::reachability(L);  // node ids are sorted by dimension, so edges go forward
  auto join = [&](std::size_t a, std::size_t b) {
    for (std::size_t k = 0; k < n; ++k)
      if (le[a][k] && le[b][k]) return k;
    throw std::logic_error("no upper bound");
  };
  auto meet = [&](std::size_t a, std::size_t b) {
    for (std::size_t k = n; k-- > 0;)
      if (le[k][a] && le[k][b]) return k;
    throw std::logic_error("no lower bound");
  };
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = b + 1; c < n; ++c)
        if (meet(a, join(b, c)) != join(meet(a, b), meet(a, c))) return false;
  return true;
}

// Order-reversed lattice: node d becomes dim M - d, edges flip.
inline LatticeGraph reversed(const LatticeGraph& L) {
  LatticeGraph R;
  R.module_dim = L.module_dim;
  R.label = L.label.empty() ? std::string() : L.label + "*";
  const std::size_t n = L.nodes.size();
  for (std::size_t i = 0; i < n; ++i) R.nodes.push_back({i, f2::Subspace(0), L.module_dim - L.nodes[n - 1 - i].dim});
  for (const auto& e : L.edges) R.edges.push_back({n - 1 - e.to, n - 1 - e.from, e.label});
  std::sort(R.edges.begin(), R.edges.end(),
            [](const auto& x, const auto& y) { return std::tie(x.from, x.to) < std::tie(y.from, y.to); });
  R.bottom = n - 1 - L.top;
  R.top = n - 1 - L.bottom;
  R.truncated = L.truncated;
  R.incomplete = L.incomplete;
  return R;
}

using LabelMap = std::function<Partition(const Partition&)>;

// Node bijection preserving covers and (mapped) edge labels, or nothing.
inline std::optional<std::vector<std::size_t>> lattice_isomorphism(const LatticeGraph& A, const LatticeGraph& B,
                                                                   const LabelMap& map = {}) {
  const std::size_t n = A.nodes.size();
  if (n != B.nodes.size() || A.edges.size() != B.edges.size()) return std::nullopt;
  auto lab = [&](const Partition& p) { return map ? map(p) : p; };
  using Key = std::pair<std::size_t, std::size_t>;
  std::map<Key, Partition> ea, eb;
  for (const auto& e : A.edges) ea[{e.from, e.to}] = lab(e.label);
  for (const auto& e : B.edges) eb[{e.from, e.to}] = e.label;
  auto signature = [](const LatticeGraph& G, const std::map<Key, Partition>& E, std::size_t v) {
    std::vector<std::string> in, out;
    for (const auto& [k, p] : E) {
      if (k.second == v) in.push_back(p.str());
      if (k.first == v) out.push_back(p.str());
    }
    std::sort(in.begin(), in.end());
    std::sort(out.begin(), out.end());
    std::string s;
    for (auto& x : in) s += x + ";";
    s += "|";
    for (auto& x : out) s += x + ";";
    (void)G;
    return s;
  };
  // Height from the bottom along covers is an invariant of the poset.
  auto heights = [](const LatticeGraph& G) {
    std::vector<int> h(G.nodes.size(), -1);
    auto up = G.up();
    h[G.bottom] = 0;
    for (std::size_t i = 0; i < G.nodes.size(); ++i)
      for (std::size_t j : up[i])
        if (h[i] >= 0) h[j] = std::max(h[j], h[i] + 1);
    return h;
  };
  auto ha = heights(A), hb = heights(B);
  std::vector<std::string> sa(n), sb(n);
  for (std::size_t v = 0; v < n; ++v) {
    sa[v] = std::to_string(ha[v]) + "#" + signature(A, ea, v);
    sb[v] = std::to_string(hb[v]) + "#" + signature(B, eb, v);
  }
  {
    auto x = sa, y = sb;
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    if (x != y) return std::nullopt;
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return ha[a] < ha[b]; });
  std::vector<std::size_t> f(n, n), inv(n, n);
  std::vector<std::vector<std::pair<std::size_t, Partition>>> down_a(n);
  for (const auto& [k, p] : ea) down_a[k.second].push_back({k.first, p});
  std::size_t budget = 5'000'000;
  std::function<bool(std::size_t)> rec = [&](std::size_t pos) -> bool {
    if (pos == n) return true;
    if (budget-- == 0) throw std::runtime_error("isomorphism search budget exhausted");
    const std::size_t v = order[pos];
    for (std::size_t w = 0; w < n; ++w) {
      if (inv[w] != n || sb[w] != sa[v]) continue;
      bool ok = true;
      for (const auto& [u, p] : down_a[v]) {
        auto it = eb.find({f[u], w});
        if (it == eb.end() || !(it->second == p)) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      f[v] = w;
      inv[w] = v;
      if (rec(pos + 1)) return true;
      f[v] = n;
      inv[w] = n;
    }
    return false;
  };
  if (!rec(0)) return std::nullopt;
  return f;
}

// Every edge spans a composition factor of the right size and every maximal chain sums to the module.
inline bool dimension_accounting_holds(const LatticeGraph& L, const std::function<long long(const Partition&)>& dimD) {
  for (const auto& e : L.edges)
    if (static_cast<long long>(L.nodes[e.to].dim) - static_cast<long long>(L.nodes[e.from].dim) != dimD(e.label))
      return false;
  return L.nodes[L.bottom].dim == 0 && L.nodes[L.top].dim == L.module_dim;
}

struct ComparisonReport {
  bool factors_ok = false, socle_ok = false, uniserial_ok = false, order_ok = false, lattice_ok = false;
  std::vector<std::string> mismatches;
  std::vector<std::size_t> factor_nodes;  // node M_nu for each profile factor, in profile order
  bool agree() const { return mismatches.empty(); }
};

// Factor multiset, socle, uniseriality, containment order, and the whole lattice against the oracle.
inline ComparisonReport compare_with_prediction(const LatticeGraph& L, const TwoPartProfile& pr) {
  ComparisonReport rep;
  if (L.truncated || L.incomplete) {
    rep.mismatches.push_back("lattice is truncated or incomplete");
    return rep;
  }
  const std::size_t k = pr.size(), n = L.nodes.size();
  std::map<Partition, std::size_t> idx;
  for (std::size_t i = 0; i < k; ++i) idx[pr.factor(i).nu] = i;
  // Factor set of every node, read along any chain from the bottom.
  std::vector<std::optional<std::uint64_t>> mask(n);
  mask[L.bottom] = 0;
  bool multiplicity_free = true;
  for (const auto& e : L.edges) {
    auto it = idx.find(e.label);
    if (it == idx.end()) {
      rep.mismatches.push_back("edge label " + e.label.str() + " is not a predicted factor");
      return rep;
    }
  }
  for (std::size_t v = 0; v < n; ++v)
    for (const auto& e : L.edges)
      if (e.from == v && mask[v]) {
        std::uint64_t bit = std::uint64_t{1} << idx.at(e.label);
        if (*mask[v] & bit) multiplicity_free = false;
        std::uint64_t m = *mask[v] | bit;
        if (mask[e.to] && *mask[e.to] != m) multiplicity_free = false;
        mask[e.to] = m;
      }
  const std::uint64_t all = k == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << k) - 1;
  rep.factors_ok = multiplicity_free && mask[L.top] && *mask[L.top] == all;
  if (!rep.factors_ok) rep.mismatches.push_back("composition factors differ from the prediction");
  std::vector<Partition> bottom_labels;
  for (const auto& e : L.edges)
    if (e.from == L.bottom) bottom_labels.push_back(e.label);
  rep.socle_ok = bottom_labels.size() == 1 && bottom_labels[0] == socle_2part(pr.lambda).nu;
  if (!rep.socle_ok) rep.mismatches.push_back("socle differs from the prediction");
  rep.uniserial_ok = is_uniserial(L) == uniserial_2part(pr.lambda).uniserial;
  if (!rep.uniserial_ok) rep.mismatches.push_back("uniseriality verdict differs");
  if (!rep.factors_ok) return rep;
  auto le = detail::reachability(L);
  rep.factor_nodes.assign(k, n);
  rep.order_ok = true;
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<std::size_t> minimal;
    for (std::size_t v = 0; v < n; ++v) {
      if (!(*mask[v] >> i & 1U)) continue;
      bool is_min = true;
      for (std::size_t u = 0; u < n && is_min; ++u)
        if (u != v && le[u][v] && (*mask[u] >> i & 1U)) is_min = false;
      if (is_min) minimal.push_back(v);
    }
    if (minimal.size() != 1) {
      rep.order_ok = false;
      rep.mismatches.push_back("no unique smallest submodule with factor " + pr.factor(i).nu.str());
      continue;
    }
    rep.factor_nodes[i] = minimal[0];
  }
  if (rep.order_ok)
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) {
        bool matrix_side = le[rep.factor_nodes[i]][rep.factor_nodes[j]];  // M_i inside M_j
        bool oracle_side = factor_order(pr, pr.A[i], pr.A[j]);
        if (matrix_side != oracle_side) {
          rep.order_ok = false;
          rep.mismatches.push_back("containment of M_" + pr.factor(i).nu.str() + " in M_" + pr.factor(j).nu.str() +
                                   " differs");
        }
      }
  auto pl = predicted_lattice(pr);
  std::set<std::uint64_t> seen;
  for (std::size_t v = 0; v < n; ++v) seen.insert(*mask[v]);
  std::set<std::uint64_t> want(pl.nodes.begin(), pl.nodes.end());
  rep.lattice_ok = seen == want && seen.size() == n && pl.edges.size() == L.edges.size();
  if (!rep.lattice_ok) rep.mismatches.push_back("lattice differs from the predicted down-set lattice");
  return rep;
}

inline std::string to_dot(const LatticeGraph& L) {
  std::ostringstream os;
  os << "digraph lattice {\n  rankdir=BT;\n";
  if (!L.label.empty()) os << "  label=\"S^(" << L.label << ")\";\n";
  os << "  // module_dim=" << L.module_dim << " top=" << L.top << " bottom=" << L.bottom << " truncated=" << L.truncated
     << " incomplete=" << L.incomplete << "\n";
  std::map<std::size_t, int> count;
  for (const auto& n : L.nodes) ++count[n.dim];
  std::map<std::size_t, int> seen;
  for (const auto& n : L.nodes) {
    std::string name = std::to_string(n.dim);
    if (count[n.dim] > 1) name += "_" + std::to_string(++seen[n.dim]);
    os << "  n" << n.id << " [shape=circle,label=\"" << name << "\"];\n";
  }
  for (const auto& e : L.edges) os << "  n" << e.from << " -> n" << e.to << " [label=\"D(" << e.label.str() << ")\"];\n";
  os << "}\n";
  return os.str();
}

inline std::string to_tikz(const LatticeGraph& L) {
  std::ostringstream os;
  auto up = L.up();
  std::vector<int> h(L.nodes.size(), 0);
  for (std::size_t i = 0; i < L.nodes.size(); ++i)
    for (std::size_t j : up[i]) h[j] = std::max(h[j], h[i] + 1);
  std::map<int, int> width, placed;
  for (int x : h) ++width[x];
  os << "\\begin{tikzpicture}[main/.style = {draw, circle}, scale = 3]\n";
  for (const auto& n : L.nodes) {
    int row = h[n.id];
    double x = placed[row]++ - (width[row] - 1) / 2.0;
    os << "\\node[main] (" << n.id << ") at (" << x << "," << row << ") {$" << n.dim << "$};\n";
  }
  for (const auto& e : L.edges) {
    std::string lab = e.label.str();
    std::replace(lab.begin(), lab.end(), '^', '@');
    std::string tex;
    for (char c : lab) tex += c == '@' ? std::string("^") : std::string(1, c);
    os << "\\draw[->] (" << e.from << ") edge [\"$D_2^{(" << tex << ")}$\", pos = 0.5] (" << e.to << ");\n";
  }
  os << "\\end{tikzpicture}\n";
  return os.str();
}

}  // namespace spechtlab
