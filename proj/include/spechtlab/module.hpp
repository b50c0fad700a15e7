#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "spechtlab/f2.hpp"

namespace spechtlab {

// Action of the adjacent transpositions s_1..s_{n-1}; row j of a generator is the image of basis vector j.
// A module carries dense generators, sparse generators, or both.
struct RepModule {
  std::size_t dim = 0;
  std::vector<f2::Matrix> gens;
  std::vector<f2::SparseRows> sparse;
  std::string label;
  std::vector<std::string> basis_desc;

  std::size_t num_gens() const { return gens.empty() ? sparse.size() : gens.size(); }
  bool has_dense() const { return !gens.empty() || sparse.empty(); }

  f2::Matrix dense_gen(std::size_t g) const { return gens.empty() ? sparse.at(g).to_dense() : gens.at(g); }

  // Selected rows of a generator as a dense block.
  f2::Matrix gen_rows(std::size_t g, const std::vector<std::size_t>& sel) const {
    return gens.empty() ? sparse.at(g).dense_rows(sel) : gens.at(g).select_rows(sel);
  }

  void densify() {
    if (!gens.empty()) return;
    for (const auto& s : sparse) gens.push_back(s.to_dense());
  }
};

// Images of a block of row vectors under one generator.
inline f2::Matrix act_rows(const RepModule& M, std::size_t g, const f2::Matrix& rows) {
  if (!M.sparse.empty()) return M.sparse.at(g).left_multiply(rows);
  const f2::Matrix& G = M.gens.at(g);
  if (rows.rows() >= 8) return f2::multiply(rows, G);
  f2::Matrix out(rows.rows(), G.cols());
  for (std::size_t i = 0; i < rows.rows(); ++i) G.left_apply_raw(rows.row(i), out.row(i));
  return out;
}

inline f2::Vector act(const RepModule& M, std::size_t g, const f2::Vector& v) {
  if (v.size() != M.dim) throw std::invalid_argument("vector length mismatch");
  return act_rows(M, g, f2::Matrix::from_rows({v}, M.dim)).row_vector(0);
}

// Applies s_{w[0]}, then s_{w[1]}, and so on.
inline f2::Vector act_word(const RepModule& M, const std::vector<std::size_t>& w, f2::Vector v) {
  for (std::size_t g : w) v = act(M, g, v);
  return v;
}

inline bool is_involution_braid(const RepModule& M) {
  const std::size_t k = M.num_gens();
  std::vector<f2::Matrix> G;
  for (std::size_t i = 0; i < k; ++i) G.push_back(M.dense_gen(i));
  auto I = f2::Matrix::identity(M.dim);
  for (std::size_t i = 0; i < k; ++i) {
    const auto& A = G[i];
    if (A.rows() != M.dim || A.cols() != M.dim) return false;
    if (!(f2::multiply(A, A) == I)) return false;
    if (i + 1 < k) {
      const auto& B = G[i + 1];
      auto AB = f2::multiply(A, B);
      if (!(f2::multiply(AB, A) == f2::multiply(f2::multiply(B, A), B))) return false;
    }
    for (std::size_t j = i + 2; j < k; ++j)
      if (!(f2::multiply(A, G[j]) == f2::multiply(G[j], A))) return false;
  }
  return true;
}

inline bool is_invariant(const RepModule& M, const f2::Subspace& W) {
  if (W.ambient() != M.dim) throw std::invalid_argument("ambient dimension mismatch");
  for (std::size_t g = 0; g < M.num_gens(); ++g) {
    f2::Matrix img = act_rows(M, g, W.basis());
    W.reduce_rows(img);
    if (!img.is_zero()) return false;
  }
  return true;
}

// Smallest generator-invariant subspace containing the seeds.
inline f2::Subspace spin(const RepModule& M, const f2::Matrix& seeds) {
  if (seeds.cols() != M.dim) throw std::invalid_argument("seed length mismatch");
  f2::Subspace S = f2::Subspace::span(seeds);
  f2::Matrix frontier = S.basis();
  while (frontier.rows() > 0) {
    f2::Matrix prod(0, M.dim);
    for (std::size_t g = 0; g < M.num_gens(); ++g) prod = f2::stack(prod, act_rows(M, g, frontier));
    S.reduce_rows(prod);
    f2::Subspace fresh = f2::Subspace::span(std::move(prod));
    if (fresh.dim() == 0) break;
    frontier = fresh.basis();
    S.absorb(fresh);
  }
  return S;
}

inline f2::Subspace spin(const RepModule& M, const std::vector<f2::Vector>& seeds) {
  return spin(M, f2::Matrix::from_rows(seeds, M.dim));
}

inline f2::Subspace spin(const RepModule& M, const f2::Vector& seed) {
  return spin(M, std::vector<f2::Vector>{seed});
}

// Action on M/X in the coordinates complementary to the pivots of X.
inline RepModule quotient_module(const RepModule& M, const f2::Subspace& X, std::string label = {}) {
  if (X.ambient() != M.dim) throw std::invalid_argument("ambient dimension mismatch");
  const auto comp = X.complement();
  RepModule Q;
  Q.dim = comp.size();
  Q.label = std::move(label);
  for (std::size_t g = 0; g < M.num_gens(); ++g) {
    f2::Matrix rows = M.gen_rows(g, comp);
    X.reduce_rows(rows);
    Q.gens.push_back(rows.select_cols(comp));
  }
  return Q;
}

// Action on an invariant subspace W, in the coordinates given by its echelon basis.
inline RepModule submodule_action(const RepModule& M, const f2::Subspace& W, std::string label = {}) {
  RepModule S;
  S.dim = W.dim();
  S.label = std::move(label);
  for (std::size_t g = 0; g < M.num_gens(); ++g) S.gens.push_back(act_rows(M, g, W.basis()).select_cols(W.pivots()));
  return S;
}

inline RepModule dual_module(const RepModule& M) {
  RepModule D;
  D.dim = M.dim;
  D.label = M.label.empty() ? std::string() : M.label + "*";
  for (const auto& G : M.gens) D.gens.push_back(G.transpose());
  for (const auto& G : M.sparse) D.sparse.push_back(G.transpose());
  return D;
}

// Annihilator of W in the dual module: {x : x . w = 0 for all w in W}.
inline f2::Subspace annihilator(const f2::Subspace& W) { return f2::kernel(W.basis()); }

}  // namespace spechtlab
