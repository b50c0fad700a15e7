#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "spechtlab/f2.hpp"
#include "spechtlab/partition.hpp"

namespace spechtlab {

// Entries are stored row-wise; values are 1..n.
class Tableau {
 public:
  Tableau() = default;
  Tableau(Partition shape, std::vector<int> entries) : shape_(std::move(shape)), e_(std::move(entries)) {
    if (static_cast<int>(e_.size()) != shape_.n()) throw std::invalid_argument("tableau size does not match its shape");
    std::vector<bool> seen(e_.size() + 1, false);
    for (int x : e_) {
      if (x < 1 || x > static_cast<int>(e_.size()) || seen[static_cast<std::size_t>(x)])
        throw std::invalid_argument("tableau entries must be a bijection onto 1..n");
      seen[static_cast<std::size_t>(x)] = true;
    }
  }

  // Rows given explicitly, e.g. {{1,2,3},{4}}.
  static Tableau from_rows(const std::vector<std::vector<int>>& rows) {
    std::vector<int> parts, e;
    for (const auto& r : rows) {
      parts.push_back(static_cast<int>(r.size()));
      e.insert(e.end(), r.begin(), r.end());
    }
    return Tableau(Partition(parts), e);
  }

  // Columns given explicitly, left to right.
  static Tableau from_columns(const Partition& shape, const std::vector<std::vector<int>>& cols) {
    std::vector<int> e(static_cast<std::size_t>(shape.n()));
    for (std::size_t c = 0; c < cols.size(); ++c)
      for (std::size_t r = 0; r < cols[c].size(); ++r) {
        if (static_cast<int>(c) >= shape[r]) throw std::invalid_argument("column does not fit the shape");
        e[static_cast<std::size_t>(row_offset(shape, r)) + c] = cols[c][r];
      }
    return Tableau(shape, e);
  }

  const Partition& shape() const { return shape_; }
  const std::vector<int>& entries() const { return e_; }
  int at(std::size_t row, std::size_t col) const { return e_[static_cast<std::size_t>(row_offset(shape_, row)) + col]; }

  std::vector<std::vector<int>> rows() const {
    std::vector<std::vector<int>> r;
    std::size_t k = 0;
    for (int len : shape_.parts()) {
      r.emplace_back(e_.begin() + static_cast<long>(k), e_.begin() + static_cast<long>(k + static_cast<std::size_t>(len)));
      k += static_cast<std::size_t>(len);
    }
    return r;
  }

  std::vector<std::vector<int>> columns() const {
    std::vector<std::vector<int>> c(static_cast<std::size_t>(shape_[0]));
    for (std::size_t r = 0; r < shape_.length(); ++r)
      for (int j = 0; j < shape_[r]; ++j) c[static_cast<std::size_t>(j)].push_back(at(r, static_cast<std::size_t>(j)));
    return c;
  }

  bool is_row_standard() const {
    for (std::size_t r = 0; r < shape_.length(); ++r)
      for (int j = 1; j < shape_[r]; ++j)
        if (at(r, static_cast<std::size_t>(j - 1)) > at(r, static_cast<std::size_t>(j))) return false;
    return true;
  }
  bool is_column_standard() const {
    for (std::size_t r = 1; r < shape_.length(); ++r)
      for (int j = 0; j < shape_[r]; ++j)
        if (at(r - 1, static_cast<std::size_t>(j)) > at(r, static_cast<std::size_t>(j))) return false;
    return true;
  }
  bool is_standard() const { return is_row_standard() && is_column_standard(); }

  Tableau column_sorted() const {
    auto c = columns();
    for (auto& col : c) std::sort(col.begin(), col.end());
    return from_columns(shape_, c);
  }

  // Entry-wise action: x -> perm[x], with perm indexed 1..n (perm[0] unused).
  Tableau permuted(const std::vector<int>& perm) const {
    std::vector<int> e(e_.size());
    for (std::size_t i = 0; i < e_.size(); ++i) e[i] = perm[static_cast<std::size_t>(e_[i])];
    return Tableau(shape_, e);
  }

  Tableau conjugate() const {
    Partition cs = shape_.conjugate();
    return from_columns(cs, rows());
  }

  // Column-reading word: columns left to right, each top to bottom.
  std::string column_word() const {
    std::string w;
    for (const auto& col : columns())
      for (int x : col) w.push_back(static_cast<char>(x));
    return w;
  }

  std::string str() const {
    std::string s;
    for (const auto& r : rows()) {
      if (!s.empty()) s += "/";
      for (std::size_t i = 0; i < r.size(); ++i) s += (i ? " " : "") + std::to_string(r[i]);
    }
    return s;
  }

  friend bool operator==(const Tableau&, const Tableau&) = default;

  static int row_offset(const Partition& shape, std::size_t row) {
    int off = 0;
    for (std::size_t r = 0; r < row; ++r) off += shape[r];
    return off;
  }

 private:
  Partition shape_;
  std::vector<int> e_;
};

inline std::vector<Tableau> standard_tableaux(const Partition& shape) {
  const int n = shape.n();
  std::vector<std::vector<int>> rows(shape.length());
  std::vector<Tableau> out;
  auto rec = [&](auto&& self, int next) -> void {
    if (next > n) {
      std::vector<int> e;
      for (const auto& r : rows) e.insert(e.end(), r.begin(), r.end());
      out.emplace_back(shape, e);
      return;
    }
    for (std::size_t r = 0; r < rows.size(); ++r) {
      int len = static_cast<int>(rows[r].size());
      if (len >= shape[r]) continue;
      if (r > 0 && static_cast<int>(rows[r - 1].size()) <= len) continue;
      rows[r].push_back(next);
      self(self, next + 1);
      rows[r].pop_back();
    }
  };
  rec(rec, 1);
  std::sort(out.begin(), out.end(),
            [](const Tableau& a, const Tableau& b) { return a.column_word() < b.column_word(); });
  return out;
}

// A tabloid is recorded by the row index of each entry 1..n.
struct TabloidKey {
  std::vector<std::vector<int>> row_sets;

  static TabloidKey of(const Tableau& t) {
    TabloidKey k;
    for (auto r : t.rows()) {
      std::sort(r.begin(), r.end());
      k.row_sets.push_back(std::move(r));
    }
    return k;
  }
  std::string code(int n) const {
    std::string s(static_cast<std::size_t>(n), '\0');
    for (std::size_t r = 0; r < row_sets.size(); ++r)
      for (int x : row_sets[r]) s[static_cast<std::size_t>(x - 1)] = static_cast<char>(r);
    return s;
  }
  friend bool operator==(const TabloidKey&, const TabloidKey&) = default;
  friend auto operator<=>(const TabloidKey& a, const TabloidKey& b) { return a.row_sets <=> b.row_sets; }
};

// Tabloids {s t} over the column group of t (signs are irrelevant in characteristic 2).
inline std::vector<std::string> polytabloid_codes(const Tableau& t, std::size_t limit = 50'000'000) {
  const auto cols = t.columns();
  const Partition& sh = t.shape();
  const int n = sh.n();
  std::size_t total = 1;
  for (const auto& c : cols) {
    for (std::size_t k = 2; k <= c.size(); ++k) {
      total *= k;
      if (total > limit) throw std::invalid_argument("column group too large to expand");
    }
  }
  std::vector<std::vector<int>> perms(cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    perms[c] = cols[c];
    std::sort(perms[c].begin(), perms[c].end());
  }
  std::vector<std::string> out;
  out.reserve(total);
  std::string code(static_cast<std::size_t>(n), '\0');
  auto rec = [&](auto&& self, std::size_t c) -> void {
    if (c == cols.size()) {
      out.push_back(code);
      return;
    }
    std::vector<int> p = perms[c];
    do {
      for (std::size_t r = 0; r < p.size(); ++r) code[static_cast<std::size_t>(p[r] - 1)] = static_cast<char>(r);
      self(self, c + 1);
    } while (std::next_permutation(p.begin(), p.end()));
  };
  rec(rec, 0);
  (void)sh;
  return out;
}

// Standard polytabloid basis with memoized Garnir straightening.
class SpechtBasis {
 public:
  explicit SpechtBasis(Partition shape) : shape_(std::move(shape)) {
    auto conj = shape_.conjugate();
    col_len_ = conj.parts();
    int off = 0;
    for (int l : col_len_) {
      col_off_.push_back(off);
      off += l;
    }
    tableaux_ = standard_tableaux(shape_);
    words_.reserve(tableaux_.size());
    for (std::size_t i = 0; i < tableaux_.size(); ++i) {
      words_.push_back(tableaux_[i].column_word());
      index_.emplace(words_.back(), static_cast<std::uint32_t>(i));
    }
  }

  const Partition& shape() const { return shape_; }
  std::size_t dim() const { return tableaux_.size(); }
  const std::vector<Tableau>& tableaux() const { return tableaux_; }
  const Tableau& tableau(std::size_t i) const { return tableaux_[i]; }
  const std::string& word(std::size_t i) const { return words_[i]; }
  std::size_t memo_size() const { return memo_.size(); }
  void clear_memo() { memo_.clear(); }

  std::optional<std::size_t> index_of(const Tableau& t) const {
    auto it = index_.find(t.column_word());
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  // Expansion of e_t in the standard basis; t need not be column-standard.
  f2::Vector straighten(const Tableau& t) {
    if (t.shape() != shape_) throw std::invalid_argument("tableau shape mismatch");
    f2::Vector v(dim());
    for (std::uint32_t i : straighten_word(t.column_sorted().column_word())) v.set(i);
    return v;
  }

  // Column-sorted column word to sorted list of standard indices.
  const std::vector<std::uint32_t>& straighten_word(const std::string& w) {
    if (auto it = index_.find(w); it != index_.end()) {
      unit_.assign(1, it->second);
      return unit_;
    }
    if (auto it = memo_.find(w); it != memo_.end()) return it->second;
    std::vector<std::uint32_t> acc = garnir(w);
    auto [it, ok] = memo_.emplace(w, std::move(acc));
    return it->second;
  }

  void straighten_into(const std::string& w, std::vector<std::uint32_t>& acc) {
    const auto& r = straighten_word(w);
    std::vector<std::uint32_t> out;
    out.reserve(acc.size() + r.size());
    std::set_symmetric_difference(acc.begin(), acc.end(), r.begin(), r.end(), std::back_inserter(out));
    acc.swap(out);
  }

 private:
  std::vector<std::uint32_t> garnir(const std::string& w) {
    // Leftmost column pair with a row violation, topmost such row.
    std::size_t c = 0, r = 0;
    bool found = false;
    for (c = 0; c + 1 < col_len_.size() && !found; ++c)
      for (r = 0; r < static_cast<std::size_t>(col_len_[c + 1]); ++r)
        if (w[static_cast<std::size_t>(col_off_[c]) + r] > w[static_cast<std::size_t>(col_off_[c + 1]) + r]) {
          found = true;
          break;
        }
    if (!found) throw std::logic_error("column-standard word without violation is missing from the basis");
    --c;
    const std::size_t lc = static_cast<std::size_t>(col_len_[c]);
    const std::size_t oc = static_cast<std::size_t>(col_off_[c]), od = static_cast<std::size_t>(col_off_[c + 1]);
    std::string X = w.substr(oc + r, lc - r);
    std::string U = X + w.substr(od, r + 1);
    std::sort(U.begin(), U.end());
    const std::size_t k = X.size(), m = U.size();
    std::vector<std::uint32_t> acc;
    std::vector<std::size_t> pick(k);
    for (std::size_t i = 0; i < k; ++i) pick[i] = i;
    std::string nw = w;
    std::string S, rest;
    while (true) {
      S.clear();
      rest.clear();
      std::size_t pi = 0;
      for (std::size_t i = 0; i < m; ++i) {
        if (pi < k && pick[pi] == i) {
          S.push_back(U[i]);
          ++pi;
        } else {
          rest.push_back(U[i]);
        }
      }
      if (S != X) {
        std::string colc = w.substr(oc, r) + S;
        std::string cold = rest + w.substr(od + r + 1, static_cast<std::size_t>(col_len_[c + 1]) - r - 1);
        std::sort(colc.begin(), colc.end());
        std::sort(cold.begin(), cold.end());
        nw.replace(oc, lc, colc);
        nw.replace(od, cold.size(), cold);
        straighten_into(nw, acc);
        nw = w;
      }
      // Next k-combination of m.
      std::size_t i = k;
      while (i > 0 && pick[i - 1] == m - k + i - 1) --i;
      if (i == 0) break;
      ++pick[i - 1];
      for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
    }
    return acc;
  }

  Partition shape_;
  std::vector<int> col_len_, col_off_;
  std::vector<Tableau> tableaux_;
  std::vector<std::string> words_;
  std::unordered_map<std::string, std::uint32_t> index_;
  std::unordered_map<std::string, std::vector<std::uint32_t>> memo_;
  std::vector<std::uint32_t> unit_;
};

}  // namespace spechtlab
