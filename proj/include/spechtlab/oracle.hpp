#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "spechtlab/partition.hpp"

namespace spechtlab {

// Disjoint union of half-open intervals [i1,i2) u [i3,i4) u ... with strictly increasing endpoints.
struct IntervalSet {
  std::vector<std::pair<int, int>> intervals;

  bool empty() const { return intervals.empty(); }

  bool well_formed() const {
    int last = -1;
    for (auto [a, b] : intervals) {
      if (a <= last || b <= a) return false;
      last = b;
    }
    return true;
  }

  bool contains(int x) const {
    for (auto [a, b] : intervals)
      if (x >= a && x < b) return true;
    return false;
  }

  std::set<int> members() const {
    std::set<int> s;
    for (auto [a, b] : intervals)
      for (int x = a; x < b; ++x) s.insert(x);
    return s;
  }

  bool subset_of(const IntervalSet& o) const {
    for (auto [a, b] : intervals)
      for (int x = a; x < b; ++x)
        if (!o.contains(x)) return false;
    return true;
  }

  std::string str() const {
    if (intervals.empty()) return "{}";
    std::string s;
    for (auto [a, b] : intervals) {
      if (!s.empty()) s += "u";
      s += "[" + std::to_string(a) + "," + std::to_string(b) + ")";
    }
    return s;
  }

  friend bool operator==(const IntervalSet&, const IntervalSet&) = default;
  friend auto operator<=>(const IntervalSet& a, const IntervalSet& b) { return a.intervals <=> b.intervals; }
};

inline long long delta(const IntervalSet& I, long long alpha, int p) {
  if (!I.well_formed()) throw std::invalid_argument("interval endpoints must strictly increase");
  long long d = 0;
  for (auto [a, b] : I.intervals) {
    if (digit(alpha, a, p) == 0) throw std::invalid_argument("left endpoint must carry a nonzero digit of alpha");
    if (digit(alpha, b, p) == p - 1) throw std::invalid_argument("right endpoint must avoid the digit p-1 of alpha");
    d += ipow(p, a);
    for (int i = a; i < b; ++i) d += (p - 1 - digit(alpha, i, p)) * ipow(p, i);
  }
  return d;
}

struct FactorLabel {
  Partition nu;
  long long d = 0;
  IntervalSet source;
  friend bool operator==(const FactorLabel&, const FactorLabel&) = default;
};

struct TwoPartProfile {
  Partition lambda;
  int p = 2;
  long long alpha = 1;
  bool singular = false;
  std::vector<int> b_minus, b_plus;  // listed up to the digit bound used by the enumeration
  std::vector<IntervalSet> A;
  std::vector<long long> deltas;

  std::size_t size() const { return A.size(); }

  std::size_t index_of(const IntervalSet& I) const {
    auto it = std::find(A.begin(), A.end(), I);
    if (it == A.end()) throw std::invalid_argument("interval set is not in the admissible family");
    return static_cast<std::size_t>(it - A.begin());
  }

  std::size_t index_of_d(long long d) const {
    auto it = std::find(deltas.begin(), deltas.end(), d);
    if (it == deltas.end()) throw std::invalid_argument("no composition factor with this d");
    return static_cast<std::size_t>(it - deltas.begin());
  }

  FactorLabel factor(std::size_t i) const {
    return FactorLabel{Partition::two_part(lambda[0] + static_cast<int>(deltas[i]), lambda[1] - static_cast<int>(deltas[i])),
                       deltas[i], A[i]};
  }

  std::vector<FactorLabel> factors() const {
    std::vector<FactorLabel> f;
    for (std::size_t i = 0; i < A.size(); ++i) f.push_back(factor(i));
    return f;
  }
};

inline void require_two_part(const Partition& l) {
  if (!l.is_two_part()) throw std::invalid_argument("partition must have at most two parts: " + l.str());
}

inline TwoPartProfile profile(const Partition& lambda, int p = 2) {
  require_two_part(lambda);
  require_prime(p);
  TwoPartProfile pr;
  pr.lambda = lambda;
  pr.p = p;
  const long long l1 = lambda[0], l2 = lambda[1];
  pr.alpha = l1 - l2 + 1;
  pr.singular = (p == 2 && l1 == l2 && l2 > 0);
  const int bound = std::max(static_cast<int>(digits(pr.alpha, p).size()), L_p(l2, p)) + 2;
  for (int i = 0; i < bound; ++i) {
    if (digit(pr.alpha, i, p) != 0) pr.b_minus.push_back(i);
    if (digit(pr.alpha, i, p) != p - 1) pr.b_plus.push_back(i);
  }
  std::vector<std::pair<long long, IntervalSet>> found;
  IntervalSet cur;
  auto rec = [&](auto&& self, int start, long long d) -> void {
    found.emplace_back(d, cur);
    for (int i1 = start; i1 < bound; ++i1) {
      long long base = d + ipow(p, i1);
      if (base > l2) break;
      if (digit(pr.alpha, i1, p) == 0) continue;
      long long acc = base;
      for (int i2 = i1 + 1; i2 <= bound; ++i2) {
        acc += (p - 1 - digit(pr.alpha, i2 - 1, p)) * ipow(p, i2 - 1);
        if (acc > l2) break;
        if (digit(pr.alpha, i2, p) == p - 1) continue;
        cur.intervals.emplace_back(i1, i2);
        self(self, i2 + 1, acc);
        cur.intervals.pop_back();
      }
    }
  };
  rec(rec, 0, 0);
  std::sort(found.begin(), found.end());
  for (auto& [d, I] : found) {
    if (pr.singular && I.empty()) continue;
    pr.A.push_back(I);
    pr.deltas.push_back(d);
  }
  return pr;
}

// M_{nu_J} contains M_{nu_I} exactly when J is a subset of I.
inline bool factor_order(const TwoPartProfile& pr, const IntervalSet& I, const IntervalSet& J) {
  pr.index_of(I);
  pr.index_of(J);
  return J.subset_of(I);
}

// M_{d1} contains M_{d2} iff alpha + d1 + d2 contains d1.
inline bool containment_by_digits(long long alpha, long long d1, long long d2, int p) {
  return contains_p(alpha + d1 + d2, d1, p);
}

inline int multiplicity_2part(const Partition& lambda, long long d, int p = 2) {
  require_two_part(lambda);
  if (d < 0 || d > lambda[1]) throw std::invalid_argument("d must lie in [0, lambda_2]");
  Partition nu = Partition::two_part(lambda[0] + static_cast<int>(d), lambda[1] - static_cast<int>(d));
  if (!is_p_regular(nu, p)) throw std::invalid_argument("target partition is not p-regular");
  long long alpha = lambda[0] - lambda[1] + 1;
  return contains_p(alpha + 2 * d, d, p) ? 1 : 0;
}

struct UniserialVerdict {
  bool uniserial = false;
  bool alpha_power_of_two = false;
  int a = -1, b = -1, c = -1;
};

inline UniserialVerdict uniserial_2part(const Partition& lambda) {
  require_two_part(lambda);
  UniserialVerdict v;
  const long long l2 = lambda[1];
  const long long alpha = lambda[0] - lambda[1] + 1;
  if (is_power_of_two(alpha)) {
    v.alpha_power_of_two = true;
    v.uniserial = true;
    return v;
  }
  v.a = val2(alpha);
  v.b = val2(alpha + (1LL << v.a));
  v.c = val2(alpha - (1LL << v.a));
  if (v.c > v.b)
    v.uniserial = (1LL << v.c) > l2;
  else
    v.uniserial = (1LL << v.c) + (1LL << v.b) > l2;
  return v;
}

inline long long socle_d(const Partition& lambda) {
  require_two_part(lambda);
  const long long l2 = lambda[1];
  const long long alpha = lambda[0] - lambda[1] + 1;
  const int L = L_p(l2, 2);
  const long long m = 1LL << L;
  const long long abar = alpha % m;
  if (abar == 0) return 0;
  if (abar >= m - l2) return m - abar;
  const long long half = m >> 1;
  return half - alpha % half;
}

inline FactorLabel socle_2part(const Partition& lambda) {
  long long d = socle_d(lambda);
  TwoPartProfile pr = profile(lambda, 2);
  return pr.factor(pr.index_of_d(d));
}

struct PeriodicityResult {
  bool periodic = false;
  std::vector<std::pair<long long, long long>> bijection;
};

inline PeriodicityResult lattice_periodic(const Partition& lambda, const Partition& mu, int p = 2) {
  require_two_part(lambda);
  require_two_part(mu);
  PeriodicityResult r;
  if (lambda[1] != mu[1]) return r;
  long long m = ipow(p, L_p(lambda[1], p));
  if (((lambda[0] - mu[0]) % m + m) % m != 0) return r;
  r.periodic = true;
  for (long long d : profile(lambda, p).deltas) r.bijection.emplace_back(d, d);
  return r;
}

// f(a,b) = 1 iff a >= b >= 0 and a contains b in binary.
inline int hook_f(long long a, long long b) { return (b >= 0 && a >= b && contains_p(a, b, 2)) ? 1 : 0; }

inline int hook_decomp(int n, int r, int j) {
  if (n < 1 || r < 0 || r >= n) throw std::invalid_argument("hook leg out of range");
  if (j < 0 || n - j <= j) throw std::invalid_argument("(n-j,j) must be a 2-regular partition");
  if (r > n - r) r = n - r - 1;  // conjugate hook has the same composition factors in characteristic 2
  int total = 0;
  for (int k = 0; r - 2 * k - j >= 0; ++k) total += hook_f(n + 1 - 2 * j, r - 2 * k - j);
  return total;
}

struct UniqueMinCase {
  bool unique = false;
  int case_id = 0;  // 1..5 in the order of the classification, 0 if none
};

inline UniqueMinCase hook_unique_min(int n, int r) {
  if (r < 0 || r > n - r) throw std::invalid_argument("need 0 <= r <= n - r");
  const int L = L_p(r, 2);
  const long long m = 1LL << L;
  auto eq = [m](long long x, long long y) { return ((x - y) % m + m) % m == 0; };
  UniqueMinCase c;
  if (eq(r, -1) && eq(n, -1)) c.case_id = 1;
  else if (eq(r, -1) && eq(n, -2)) c.case_id = 2;
  else if (eq(r, -2) && eq(n, -3)) c.case_id = 3;
  else if (L >= 1 && eq(r, m / 2) && eq(n, 0)) c.case_id = 4;
  else if (L >= 1 && eq(r, m / 2) && eq(n, m / 2)) c.case_id = 5;
  c.unique = c.case_id != 0;
  return c;
}

inline bool hook_uniserial(int n, int r) {
  if (n < 1 || r < 0 || r >= n) throw std::invalid_argument("hook leg out of range");
  if (r >= n - r) r = n - r - 1;
  if (r <= 1) return true;
  if (r == 2) return n % 4 == 1 || n % 4 == 2;
  if (r == 3) return n % 4 == 3;
  return false;
}

enum class Parity { even = 0, odd = 1 };

inline int nonuniserial_witness(int n_mod_32, Parity parity) {
  if (n_mod_32 < 0 || n_mod_32 >= 32) throw std::invalid_argument("residue must lie in [0,32)");
  const int n0 = n_mod_32 + 32 * 4;
  for (int s = parity == Parity::even ? 2 : 1; s <= 31; s += 2) {
    Partition lam = Partition::two_part(n0 - s, s);
    if (!lattice_periodic(lam, Partition::two_part(n0 + 32 - s, s)).periodic)
      throw std::logic_error("representative outside the periodicity window");
    if (!uniserial_2part(lam).uniserial) return s;
  }
  throw std::logic_error("no non-uniserial witness below 32");
}

inline std::vector<std::pair<int, int>> witness_table(Parity parity) {
  std::vector<std::pair<int, int>> t;
  for (int r = 0; r < 32; ++r) t.emplace_back(r, nonuniserial_witness(r, parity));
  return t;
}

// Rows (n mod 2^{L(r)}, r) where the hook has a unique minimal submodule.
inline std::vector<std::pair<int, int>> unique_min_table(int r_max = 29) {
  std::vector<std::pair<int, int>> t;
  for (int r = 0; r <= r_max; ++r) {
    const int m = 1 << L_p(r, 2);
    for (int res = 0; res < m; ++res)
      if (hook_unique_min(res + 2 * m, r).unique) t.emplace_back(res, r);
  }
  return t;
}

struct FiltrationWitnessRow {
  int residue = 0, r = 0;
  std::optional<int> s;  // smallest s = r mod 2, s <= r, with S^(n-s,s) not uniserial
};

inline std::vector<FiltrationWitnessRow> filtration_witness_rows(int r_max = 29) {
  std::vector<FiltrationWitnessRow> rows;
  for (auto [res, r] : unique_min_table(r_max)) {
    const int m = 1 << L_p(r, 2);
    const int n = res + m * (4 + (64 / m));
    FiltrationWitnessRow row{res, r, std::nullopt};
    for (int s = r % 2; s <= r; s += 2)
      if (!uniserial_2part(Partition::two_part(n - s, s)).uniserial) {
        row.s = s;
        break;
      }
    rows.push_back(row);
  }
  return rows;
}

// Dimension of D^(n-j,j) in characteristic 2 from the composition factors of the 2-part Specht modules.
inline long long dim_simple_2part(int l1, int l2) {
  if (l1 < l2 || l2 < 0) throw std::invalid_argument("not a partition");
  if (l1 == l2 && l2 > 0) throw std::invalid_argument("D is undefined for a 2-singular partition");
  static std::mutex mu;
  static std::map<std::pair<int, int>, long long> memo;
  {
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = memo.find({l1, l2}); it != memo.end()) return it->second;
  }
  long long dim = dim_specht_2part(l1, l2);
  for (long long d : profile(Partition::two_part(l1, l2), 2).deltas)
    if (d > 0) dim -= dim_simple_2part(l1 + static_cast<int>(d), l2 - static_cast<int>(d));
  std::lock_guard<std::mutex> lock(mu);
  memo[{l1, l2}] = dim;
  return dim;
}

inline long long dim_simple(const Partition& nu) {
  require_two_part(nu);
  return dim_simple_2part(nu[0], nu[1]);
}

// Submodule lattice forced by the containment order: submodules are the sets of factors
// closed under passing from J to every I containing J.
struct PredictedLattice {
  std::vector<std::uint64_t> nodes;  // bitmask over profile factor indices, sorted by (dim, mask)
  std::vector<long long> dims;
  struct Edge {
    std::size_t from, to, factor;
  };
  std::vector<Edge> edges;
};

inline PredictedLattice predicted_lattice(const TwoPartProfile& pr) {
  const std::size_t k = pr.size();
  if (k > 63) throw std::invalid_argument("too many composition factors for the predicted lattice");
  std::vector<std::uint64_t> above(k, 0);  // strict supersets of A[i]
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      if (i != j && pr.A[i].subset_of(pr.A[j])) above[i] |= std::uint64_t{1} << j;
  std::vector<long long> fdim(k);
  const bool two = pr.p == 2;
  for (std::size_t i = 0; i < k; ++i) fdim[i] = two ? dim_simple(pr.factor(i).nu) : 0;
  std::set<std::uint64_t> seen{0};
  std::vector<std::uint64_t> frontier{0};
  while (!frontier.empty()) {
    std::vector<std::uint64_t> next;
    for (auto s : frontier)
      for (std::size_t i = 0; i < k; ++i) {
        std::uint64_t bit = std::uint64_t{1} << i;
        if ((s & bit) || (above[i] & ~s)) continue;
        if (seen.insert(s | bit).second) next.push_back(s | bit);
      }
    frontier = std::move(next);
  }
  PredictedLattice pl;
  std::vector<std::pair<long long, std::uint64_t>> order;
  for (auto s : seen) {
    long long d = 0;
    for (std::size_t i = 0; i < k; ++i)
      if (s >> i & 1) d += fdim[i];
    order.emplace_back(d, s);
  }
  std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
    int pa = std::popcount(a.second), pb = std::popcount(b.second);
    return std::tie(pa, a.first, a.second) < std::tie(pb, b.first, b.second);
  });
  std::map<std::uint64_t, std::size_t> id;
  for (auto& [d, s] : order) {
    id[s] = pl.nodes.size();
    pl.nodes.push_back(s);
    pl.dims.push_back(d);
  }
  for (std::size_t a = 0; a < pl.nodes.size(); ++a)
    for (std::size_t i = 0; i < k; ++i) {
      std::uint64_t bit = std::uint64_t{1} << i;
      auto s = pl.nodes[a];
      if ((s & bit) || (above[i] & ~s)) continue;
      pl.edges.push_back({a, id.at(s | bit), i});
    }
  return pl;
}

}  // namespace spechtlab
