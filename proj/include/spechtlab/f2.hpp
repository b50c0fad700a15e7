#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <functional>
#include <istream>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace spechtlab::f2 {

using word = std::uint64_t;
constexpr std::size_t kWordBits = 64;

inline std::size_t words_for(std::size_t bits) { return (bits + kWordBits - 1) / kWordBits; }

inline void xor_into(word* dst, const word* src, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] ^= src[i];
}

inline bool get_bit(const word* w, std::size_t i) { return (w[i >> 6] >> (i & 63)) & 1U; }
inline void set_bit(word* w, std::size_t i) { w[i >> 6] |= word{1} << (i & 63); }
inline void clear_bit(word* w, std::size_t i) { w[i >> 6] &= ~(word{1} << (i & 63)); }
inline void flip_bit(word* w, std::size_t i) { w[i >> 6] ^= word{1} << (i & 63); }

inline bool is_zero(const word* w, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    if (w[i]) return false;
  return true;
}

// Parity of the AND of two packed rows.
inline bool dot(const word* a, const word* b, std::size_t n) {
  word acc = 0;
  for (std::size_t i = 0; i < n; ++i) acc ^= a[i] & b[i];
  return std::popcount(acc) & 1;
}

class Vector {
 public:
  Vector() = default;
  explicit Vector(std::size_t len) : len_(len), w_(words_for(len), 0) {}
  Vector(std::size_t len, std::span<const word> src) : len_(len), w_(src.begin(), src.begin() + words_for(len)) {}

  static Vector unit(std::size_t len, std::size_t i) {
    Vector v(len);
    v.set(i);
    return v;
  }

  std::size_t size() const { return len_; }
  std::size_t words() const { return w_.size(); }
  word* data() { return w_.data(); }
  const word* data() const { return w_.data(); }

  bool get(std::size_t i) const { return get_bit(w_.data(), check(i)); }
  void set(std::size_t i, bool v = true) {
    if (v)
      set_bit(w_.data(), check(i));
    else
      clear_bit(w_.data(), check(i));
  }
  void flip(std::size_t i) { flip_bit(w_.data(), check(i)); }

  Vector& operator^=(const Vector& o) {
    if (o.len_ != len_) throw std::invalid_argument("vector length mismatch");
    xor_into(w_.data(), o.w_.data(), w_.size());
    return *this;
  }
  friend Vector operator^(Vector a, const Vector& b) { return a ^= b; }

  bool is_zero() const { return f2::is_zero(w_.data(), w_.size()); }
  std::size_t popcount() const {
    std::size_t c = 0;
    for (word x : w_) c += static_cast<std::size_t>(std::popcount(x));
    return c;
  }
  std::vector<std::size_t> support() const {
    std::vector<std::size_t> s;
    for (std::size_t k = 0; k < w_.size(); ++k) {
      word x = w_[k];
      while (x) {
        s.push_back(k * 64 + static_cast<std::size_t>(std::countr_zero(x)));
        x &= x - 1;
      }
    }
    return s;
  }
  std::string str() const {
    std::string s(len_, '0');
    for (std::size_t i = 0; i < len_; ++i)
      if (get(i)) s[i] = '1';
    return s;
  }

  friend bool operator==(const Vector& a, const Vector& b) { return a.len_ == b.len_ && a.w_ == b.w_; }

 private:
  std::size_t check(std::size_t i) const {
    if (i >= len_) throw std::out_of_range("vector index out of range");
    return i;
  }
  std::size_t len_ = 0;
  std::vector<word> w_;
};

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), stride_(words_for(cols)), d_(rows * words_for(cols), 0) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i);
    return m;
  }

  static Matrix from_rows(const std::vector<Vector>& rows, std::size_t cols) {
    Matrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw std::invalid_argument("row length mismatch");
      std::memcpy(m.row(i), rows[i].data(), m.stride_ * sizeof(word));
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t stride() const { return stride_; }
  word* row(std::size_t i) { return d_.data() + i * stride_; }
  const word* row(std::size_t i) const { return d_.data() + i * stride_; }
  word* data() { return d_.data(); }
  const word* data() const { return d_.data(); }

  bool get(std::size_t i, std::size_t j) const { return get_bit(row(i), j); }
  void set(std::size_t i, std::size_t j, bool v = true) {
    if (v)
      set_bit(row(i), j);
    else
      clear_bit(row(i), j);
  }
  void flip(std::size_t i, std::size_t j) { flip_bit(row(i), j); }

  Vector row_vector(std::size_t i) const { return Vector(cols_, std::span<const word>(row(i), stride_)); }
  void set_row(std::size_t i, const Vector& v) {
    if (v.size() != cols_) throw std::invalid_argument("row length mismatch");
    std::memcpy(row(i), v.data(), stride_ * sizeof(word));
  }
  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    std::swap_ranges(row(a), row(a) + stride_, row(b));
  }
  void append_row(const word* src) {
    d_.insert(d_.end(), src, src + stride_);
    ++rows_;
  }
  void append_row(const Vector& v) {
    if (v.size() != cols_) throw std::invalid_argument("row length mismatch");
    append_row(v.data());
  }
  void resize_rows(std::size_t r) {
    d_.resize(r * stride_, 0);
    rows_ = r;
  }
  bool row_is_zero(std::size_t i) const { return f2::is_zero(row(i), stride_); }

  Matrix& operator^=(const Matrix& o) {
    if (o.rows_ != rows_ || o.cols_ != cols_) throw std::invalid_argument("matrix shape mismatch");
    xor_into(d_.data(), o.d_.data(), d_.size());
    return *this;
  }
  friend Matrix operator^(Matrix a, const Matrix& b) { return a ^= b; }
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.d_ == b.d_;
  }

  bool is_zero() const { return f2::is_zero(d_.data(), d_.size()); }

  std::size_t nnz() const {
    std::size_t c = 0;
    for (word x : d_) c += static_cast<std::size_t>(std::popcount(x));
    return c;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      const word* r = row(i);
      for (std::size_t k = 0; k < stride_; ++k) {
        word x = r[k];
        while (x) {
          std::size_t j = k * 64 + static_cast<std::size_t>(std::countr_zero(x));
          set_bit(t.row(j), i);
          x &= x - 1;
        }
      }
    }
    return t;
  }

  Matrix select_rows(const std::vector<std::size_t>& idx) const {
    Matrix m(idx.size(), cols_);
    for (std::size_t i = 0; i < idx.size(); ++i) std::memcpy(m.row(i), row(idx[i]), stride_ * sizeof(word));
    return m;
  }

  Matrix select_cols(const std::vector<std::size_t>& idx) const {
    Matrix m(rows_, idx.size());
    for (std::size_t i = 0; i < rows_; ++i) {
      const word* r = row(i);
      word* o = m.row(i);
      for (std::size_t j = 0; j < idx.size(); ++j)
        if (get_bit(r, idx[j])) set_bit(o, j);
    }
    return m;
  }

  // v * this, with v a row vector of length rows().
  Vector left_apply(const Vector& v) const {
    if (v.size() != rows_) throw std::invalid_argument("vector length mismatch");
    Vector out(cols_);
    left_apply_raw(v.data(), out.data());
    return out;
  }
  void left_apply_raw(const word* v, word* out) const {
    for (std::size_t k = 0; k < words_for(rows_); ++k) {
      word x = v[k];
      while (x) {
        std::size_t j = k * 64 + static_cast<std::size_t>(std::countr_zero(x));
        xor_into(out, row(j), stride_);
        x &= x - 1;
      }
    }
  }

  std::string str() const {
    std::string s;
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) s += get(i, j) ? '1' : '0';
      s += '\n';
    }
    return s;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0, stride_ = 0;
  std::vector<word> d_;
};

namespace detail {

inline unsigned gather_bits(const word* r, const std::size_t* cols, std::size_t k) {
  unsigned idx = 0;
  for (std::size_t t = 0; t < k; ++t) idx |= static_cast<unsigned>(get_bit(r, cols[t])) << t;
  return idx;
}

// Table of all XOR combinations of up to eight rows, restricted to words [w0, stride).
struct CombTable {
  std::size_t k = 0, w0 = 0, width = 0;
  std::vector<word> t;
  void build(const word* const* rows, std::size_t k_, std::size_t stride, std::size_t w0_) {
    k = k_;
    w0 = w0_;
    width = stride - w0;
    if (t.size() < (std::size_t{1} << k) * width) t.resize((std::size_t{1} << k) * width);
    std::fill(t.begin(), t.begin() + static_cast<std::ptrdiff_t>(width), word{0});
    for (std::size_t idx = 1; idx < (std::size_t{1} << k); ++idx) {
      std::size_t low = static_cast<std::size_t>(std::countr_zero(idx));
      word* dst = t.data() + idx * width;
      const word* prev = t.data() + (idx & (idx - 1)) * width;
      const word* src = rows[low] + w0;
      for (std::size_t i = 0; i < width; ++i) dst[i] = prev[i] ^ src[i];
    }
  }
  void apply(word* r, unsigned idx) const {
    if (idx) xor_into(r + w0, t.data() + idx * width, width);
  }
};

}  // namespace detail

// C = A * B using lookup tables of row combinations of B; the table width balances building against applying.
inline Matrix multiply(const Matrix& A, const Matrix& B) {
  if (A.cols() != B.rows()) throw std::invalid_argument("matrix product shape mismatch");
  Matrix C(A.rows(), B.cols());
  if (B.cols() == 0) return C;
  std::size_t bits = 1;
  for (std::size_t k = 2; k <= 8; ++k)
    if (((std::size_t{1} << k) + A.rows()) * bits < ((std::size_t{1} << bits) + A.rows()) * k) bits = k;
  detail::CombTable table;
  std::array<const word*, 8> rows{};
  std::array<std::size_t, 8> cols{};
  for (std::size_t b0 = 0; b0 < B.rows(); b0 += bits) {
    std::size_t k = std::min<std::size_t>(bits, B.rows() - b0);
    for (std::size_t t = 0; t < k; ++t) {
      rows[t] = B.row(b0 + t);
      cols[t] = b0 + t;
    }
    table.build(rows.data(), k, B.stride(), 0);
    for (std::size_t i = 0; i < A.rows(); ++i) {
      const word* a = A.row(i);
      unsigned idx;
      if ((b0 & 63) + k <= 64)
        idx = static_cast<unsigned>((a[b0 >> 6] >> (b0 & 63)) & ((word{1} << k) - 1));
      else
        idx = detail::gather_bits(a, cols.data(), k);
      table.apply(C.row(i), idx);
    }
  }
  return C;
}

struct Echelon {
  std::size_t rank = 0;
  std::vector<std::size_t> pivots;
};

// In-place reduced row echelon form; zero rows are moved to the bottom.
inline Echelon rref_inplace(Matrix& M) {
  Echelon e;
  const std::size_t rows = M.rows(), cols = M.cols(), stride = M.stride();
  std::size_t r = 0, col = 0;
  detail::CombTable table;
  std::array<const word*, 8> prow{};
  std::array<std::size_t, 8> pcol{};
  while (r < rows && col < cols) {
    std::size_t k = 0;
    // Gather up to eight pivots; found pivot rows stay mutually reduced.
    while (k < 8 && r + k < rows && col < cols) {
      std::size_t found = rows;
      for (std::size_t i = r + k; i < rows; ++i) {
        const word* ri = M.row(i);
        bool b = get_bit(ri, col);
        for (std::size_t m = 0; m < k; ++m)
          if (get_bit(ri, pcol[m])) b ^= get_bit(M.row(r + m), col);
        if (b) {
          found = i;
          break;
        }
      }
      if (found == rows) {
        ++col;
        continue;
      }
      M.swap_rows(r + k, found);
      word* pr = M.row(r + k);
      for (std::size_t m = 0; m < k; ++m)
        if (get_bit(pr, pcol[m])) xor_into(pr, M.row(r + m), stride);
      for (std::size_t m = 0; m < k; ++m) {
        word* other = M.row(r + m);
        if (get_bit(other, col)) xor_into(other, pr, stride);
      }
      pcol[k] = col;
      ++k;
      ++col;
    }
    if (k == 0) break;
    for (std::size_t m = 0; m < k; ++m) prow[m] = M.row(r + m);
    std::size_t w0 = pcol[0] >> 6;
    table.build(prow.data(), k, stride, w0);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i >= r && i < r + k) continue;
      word* ri = M.row(i);
      table.apply(ri, detail::gather_bits(ri, pcol.data(), k));
    }
    for (std::size_t m = 0; m < k; ++m) e.pivots.push_back(pcol[m]);
    r += k;
  }
  e.rank = r;
  return e;
}

struct RrefResult {
  Matrix R;
  std::size_t rank = 0;
  std::vector<std::size_t> pivots;
};

inline RrefResult rref(Matrix M) {
  Echelon e = rref_inplace(M);
  return RrefResult{std::move(M), e.rank, std::move(e.pivots)};
}

inline std::size_t rank(Matrix M) { return rref_inplace(M).rank; }

// Inverse of a square matrix via elimination on [M | I]; throws if singular.
inline Matrix inverse(const Matrix& M) {
  if (M.rows() != M.cols()) throw std::invalid_argument("inverse of a non-square matrix");
  const std::size_t n = M.rows();
  Matrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j)
      if (M.get(i, j)) aug.set(i, j);
    aug.set(i, n + i);
  }
  Echelon e = rref_inplace(aug);
  if (e.rank < n || e.pivots[n - 1] != n - 1) throw std::invalid_argument("matrix is singular");
  std::vector<std::size_t> right(n);
  for (std::size_t j = 0; j < n; ++j) right[j] = n + j;
  return aug.select_cols(right);
}

class Subspace {
 public:
  Subspace() = default;
  explicit Subspace(std::size_t ambient) : n_(ambient), basis_(0, ambient) {}

  static Subspace span(Matrix rows) {
    Subspace s(rows.cols());
    Echelon e = rref_inplace(rows);
    rows.resize_rows(e.rank);
    s.basis_ = std::move(rows);
    s.pivots_ = std::move(e.pivots);
    return s;
  }
  static Subspace span(const std::vector<Vector>& rows, std::size_t ambient) {
    return span(Matrix::from_rows(rows, ambient));
  }
  static Subspace full(std::size_t n) { return span(Matrix::identity(n)); }

  std::size_t ambient() const { return n_; }
  std::size_t dim() const { return basis_.rows(); }
  const Matrix& basis() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  // Reduce a packed vector to its canonical coset representative.
  void reduce(word* v) const {
    const std::size_t stride = basis_.stride();
    for (std::size_t i = 0; i < pivots_.size(); ++i)
      if (get_bit(v, pivots_[i])) xor_into(v, basis_.row(i), stride);
  }
  Vector reduced(Vector v) const {
    check(v.size());
    reduce(v.data());
    return v;
  }

  // Reduce every row of A in place, eight pivots per lookup table.
  void reduce_rows(Matrix& A) const {
    if (A.cols() != n_) throw std::invalid_argument("ambient dimension mismatch");
    if (dim() == 0 || A.rows() == 0) return;
    if (A.rows() < 16) {
      for (std::size_t i = 0; i < A.rows(); ++i) reduce(A.row(i));
      return;
    }
    detail::CombTable table;
    std::array<const word*, 8> rows{};
    std::array<std::size_t, 8> cols{};
    for (std::size_t p0 = 0; p0 < pivots_.size(); p0 += 8) {
      std::size_t k = std::min<std::size_t>(8, pivots_.size() - p0);
      for (std::size_t t = 0; t < k; ++t) {
        rows[t] = basis_.row(p0 + t);
        cols[t] = pivots_[p0 + t];
      }
      table.build(rows.data(), k, basis_.stride(), cols[0] >> 6);
      for (std::size_t i = 0; i < A.rows(); ++i) {
        word* r = A.row(i);
        table.apply(r, detail::gather_bits(r, cols.data(), k));
      }
    }
  }

  // Adds R, whose rows must already be reduced modulo this subspace; keeps the echelon form canonical.
  void absorb(const Subspace& R) {
    check(R.n_);
    if (R.dim() == 0) return;
    R.reduce_rows(basis_);
    Matrix merged(dim() + R.dim(), n_);
    std::vector<std::size_t> piv;
    piv.reserve(merged.rows());
    std::size_t a = 0, b = 0;
    while (a < dim() || b < R.dim()) {
      bool take_a = b == R.dim() || (a < dim() && pivots_[a] < R.pivots_[b]);
      const word* src = take_a ? basis_.row(a) : R.basis_.row(b);
      std::memcpy(merged.row(piv.size()), src, basis_.stride() * sizeof(word));
      piv.push_back(take_a ? pivots_[a++] : R.pivots_[b++]);
    }
    basis_ = std::move(merged);
    pivots_ = std::move(piv);
  }

  bool contains(const Vector& v) const {
    Vector w = reduced(v);
    return w.is_zero();
  }
  bool contains(const Subspace& o) const {
    check(o.n_);
    for (std::size_t i = 0; i < o.dim(); ++i)
      if (!contains(o.basis_.row_vector(i))) return false;
    return true;
  }

  std::vector<std::size_t> complement() const {
    std::vector<std::size_t> c;
    std::size_t p = 0;
    for (std::size_t j = 0; j < n_; ++j) {
      if (p < pivots_.size() && pivots_[p] == j)
        ++p;
      else
        c.push_back(j);
    }
    return c;
  }

  std::size_t hash() const {
    std::string_view bytes(reinterpret_cast<const char*>(basis_.data()),
                           basis_.rows() * basis_.stride() * sizeof(word));
    return std::hash<std::string_view>{}(bytes) ^ (n_ * 0x9E3779B97F4A7C15ULL);
  }

  friend bool operator==(const Subspace& a, const Subspace& b) { return a.n_ == b.n_ && a.basis_ == b.basis_; }

 private:
  void check(std::size_t n) const {
    if (n != n_) throw std::invalid_argument("ambient dimension mismatch");
  }
  std::size_t n_ = 0;
  Matrix basis_;
  std::vector<std::size_t> pivots_;
};

inline Matrix stack(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.cols()) throw std::invalid_argument("ambient dimension mismatch");
  Matrix m(a.rows() + b.rows(), a.cols());
  if (a.rows()) std::memcpy(m.row(0), a.row(0), a.rows() * a.stride() * sizeof(word));
  if (b.rows()) std::memcpy(m.row(a.rows()), b.row(0), b.rows() * b.stride() * sizeof(word));
  return m;
}

inline Subspace sum(const Subspace& U, const Subspace& V) {
  if (U.ambient() != V.ambient()) throw std::invalid_argument("ambient dimension mismatch");
  return Subspace::span(stack(U.basis(), V.basis()));
}

// Zassenhaus: rows (u|u) and (v|0); rows with zero left half span the intersection.
inline Subspace intersect(const Subspace& U, const Subspace& V) {
  if (U.ambient() != V.ambient()) throw std::invalid_argument("ambient dimension mismatch");
  const std::size_t n = U.ambient();
  Matrix z(U.dim() + V.dim(), 2 * n);
  for (std::size_t i = 0; i < U.dim(); ++i)
    for (std::size_t j : U.basis().row_vector(i).support()) {
      z.set(i, j);
      z.set(i, n + j);
    }
  for (std::size_t i = 0; i < V.dim(); ++i)
    for (std::size_t j : V.basis().row_vector(i).support()) z.set(U.dim() + i, j);
  Echelon e = rref_inplace(z);
  std::vector<std::size_t> right(n);
  for (std::size_t j = 0; j < n; ++j) right[j] = n + j;
  std::vector<std::size_t> rows;
  for (std::size_t i = 0; i < e.rank; ++i)
    if (e.pivots[i] >= n) rows.push_back(i);
  return Subspace::span(z.select_rows(rows).select_cols(right));
}

// {v : M v = 0} with v a column vector of length M.cols().
inline Subspace kernel(const Matrix& M) {
  RrefResult r = rref(M);
  const std::size_t n = M.cols();
  std::vector<bool> is_pivot(n, false);
  for (std::size_t p : r.pivots) is_pivot[p] = true;
  Matrix K(0, n);
  Vector v(n);
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    Vector b(n);
    b.set(f);
    for (std::size_t i = 0; i < r.rank; ++i)
      if (r.R.get(i, f)) b.set(r.pivots[i]);
    K.append_row(b);
  }
  return Subspace::span(std::move(K));
}

// {v : v M = 0} with v a row vector of length M.rows().
inline Subspace left_kernel(const Matrix& M) { return kernel(M.transpose()); }

// Row space of M.
inline Subspace image(const Matrix& M) { return Subspace::span(M); }

// Indices of the rows kept by a greedy left-to-right independence scan.
inline std::vector<std::size_t> independent_rows(const Matrix& A) {
  Matrix T = A.transpose();
  return rref_inplace(T).pivots;
}

// Projection onto the complement of the pivot coordinates of X, with a matching lift.
class QuotientMap {
 public:
  QuotientMap() = default;
  explicit QuotientMap(const Subspace& X) : X_(&X), comp_(X.complement()) {}

  std::size_t dim() const { return comp_.size(); }
  const std::vector<std::size_t>& coords() const { return comp_; }

  Vector project(const Vector& v) const {
    Vector r = X_->reduced(v);
    Vector out(comp_.size());
    for (std::size_t q = 0; q < comp_.size(); ++q)
      if (r.get(comp_[q])) out.set(q);
    return out;
  }
  Vector lift(const Vector& q) const {
    if (q.size() != comp_.size()) throw std::invalid_argument("quotient vector length mismatch");
    Vector out(X_->ambient());
    for (std::size_t i : q.support()) out.set(comp_[i]);
    return out;
  }
  // Rows already reduced modulo X, mapped to quotient coordinates.
  Matrix project_reduced_rows(const Matrix& A) const { return A.select_cols(comp_); }
  Matrix lift_rows(const Matrix& Q) const {
    Matrix out(Q.rows(), X_->ambient());
    for (std::size_t i = 0; i < Q.rows(); ++i)
      for (std::size_t j : Q.row_vector(i).support()) out.set(i, comp_[j]);
    return out;
  }

 private:
  const Subspace* X_ = nullptr;
  std::vector<std::size_t> comp_;
};

inline Subspace quotient_preimage(const QuotientMap& q, const Subspace& X, const Subspace& W) {
  return Subspace::span(stack(X.basis(), q.lift_rows(W.basis())));
}

// Row-compressed matrix; row i lists the columns holding a one.
class SparseRows {
 public:
  SparseRows() = default;
  SparseRows(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), ptr_(rows + 1, 0) {}

  static SparseRows from_lists(std::size_t cols, const std::vector<std::vector<std::uint32_t>>& lists) {
    SparseRows s(lists.size(), cols);
    for (std::size_t i = 0; i < lists.size(); ++i) {
      for (std::uint32_t j : lists[i]) {
        if (j >= cols) throw std::invalid_argument("sparse column out of range");
        s.idx_.push_back(j);
      }
      s.ptr_[i + 1] = s.idx_.size();
    }
    return s;
  }
  static SparseRows from_dense(const Matrix& M) {
    SparseRows s(M.rows(), M.cols());
    for (std::size_t i = 0; i < M.rows(); ++i) {
      for (std::size_t j : M.row_vector(i).support()) s.idx_.push_back(static_cast<std::uint32_t>(j));
      s.ptr_[i + 1] = s.idx_.size();
    }
    return s;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t nnz() const { return idx_.size(); }
  std::span<const std::uint32_t> row(std::size_t i) const {
    return {idx_.data() + ptr_[i], static_cast<std::size_t>(ptr_[i + 1] - ptr_[i])};
  }

  Matrix to_dense() const {
    Matrix M(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::uint32_t j : row(i)) M.flip(i, j);
    return M;
  }
  Matrix dense_rows(const std::vector<std::size_t>& sel) const {
    Matrix M(sel.size(), cols_);
    for (std::size_t i = 0; i < sel.size(); ++i)
      for (std::uint32_t j : row(sel[i])) M.flip(i, j);
    return M;
  }
  SparseRows transpose() const {
    std::vector<std::vector<std::uint32_t>> t(cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::uint32_t j : row(i)) t[j].push_back(static_cast<std::uint32_t>(i));
    return from_lists(rows_, t);
  }

  // out ^= v * this.
  void left_apply_raw(const word* v, word* out) const {
    for (std::size_t k = 0; k < words_for(rows_); ++k) {
      word x = v[k];
      while (x) {
        std::size_t i = k * 64 + static_cast<std::size_t>(std::countr_zero(x));
        for (std::uint32_t j : row(i)) flip_bit(out, j);
        x &= x - 1;
      }
    }
  }
  Matrix left_multiply(const Matrix& A) const {
    if (A.cols() != rows_) throw std::invalid_argument("matrix shape mismatch");
    Matrix out(A.rows(), cols_);
    for (std::size_t i = 0; i < A.rows(); ++i) left_apply_raw(A.row(i), out.row(i));
    return out;
  }

  friend bool operator==(const SparseRows& a, const SparseRows& b) = default;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<std::size_t> ptr_{0};
  std::vector<std::uint32_t> idx_;
};

inline void write_binary(std::ostream& os, const Matrix& M) {
  const char magic[4] = {'F', '2', 'M', '1'};
  os.write(magic, 4);
  std::uint64_t dims[2] = {M.rows(), M.cols()};
  os.write(reinterpret_cast<const char*>(dims), sizeof(dims));
  os.write(reinterpret_cast<const char*>(M.data()),
           static_cast<std::streamsize>(M.rows() * M.stride() * sizeof(word)));
  if (!os) throw std::runtime_error("failed to write matrix");
}

inline Matrix read_binary(std::istream& is) {
  char magic[4];
  is.read(magic, 4);
  if (!is || std::string_view(magic, 4) != "F2M1") throw std::invalid_argument("bad matrix header");
  std::uint64_t dims[2];
  is.read(reinterpret_cast<char*>(dims), sizeof(dims));
  if (!is) throw std::invalid_argument("truncated matrix header");
  Matrix M(dims[0], dims[1]);
  is.read(reinterpret_cast<char*>(M.data()), static_cast<std::streamsize>(M.rows() * M.stride() * sizeof(word)));
  if (!is) throw std::invalid_argument("truncated matrix data");
  return M;
}

inline void write_text(std::ostream& os, const Matrix& M) {
  os << M.rows() << ' ' << M.cols() << '\n' << M.str();
}

inline Matrix read_text(std::istream& is) {
  std::size_t r = 0, c = 0;
  if (!(is >> r >> c)) throw std::invalid_argument("bad text matrix header");
  Matrix M(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    std::string line;
    if (!(is >> line) || line.size() != c) throw std::invalid_argument("bad text matrix row");
    for (std::size_t j = 0; j < c; ++j) {
      if (line[j] == '1')
        M.set(i, j);
      else if (line[j] != '0')
        throw std::invalid_argument("text matrix entries must be 0 or 1");
    }
  }
  return M;
}

}  // namespace spechtlab::f2
