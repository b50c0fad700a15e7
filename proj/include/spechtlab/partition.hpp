#pragma once

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace spechtlab {

using i128 = __int128;

class Partition {
 public:
  Partition() = default;

  explicit Partition(std::vector<int> parts) : parts_(std::move(parts)) {
    while (!parts_.empty() && parts_.back() == 0) parts_.pop_back();
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      if (parts_[i] <= 0) throw std::invalid_argument("partition parts must be positive");
      if (i > 0 && parts_[i] > parts_[i - 1])
        throw std::invalid_argument("partition parts must be weakly decreasing");
    }
    n_ = std::accumulate(parts_.begin(), parts_.end(), 0);
  }

  Partition(std::initializer_list<int> parts) : Partition(std::vector<int>(parts)) {}

  static Partition two_part(int l1, int l2) { return Partition(std::vector<int>{l1, l2}); }

  static Partition hook(int n, int r) {
    if (r < 0 || r >= n) throw std::invalid_argument("hook leg out of range");
    std::vector<int> p{n - r};
    p.insert(p.end(), static_cast<std::size_t>(r), 1);
    return Partition(std::move(p));
  }

  // Grammar: comma list with optional exponents, e.g. "6,1^4"; parentheses are tolerated.
  static Partition parse(std::string_view s) {
    std::string t;
    for (char c : s)
      if (c != ' ' && c != '(' && c != ')') t.push_back(c);
    std::vector<int> parts;
    if (t.empty()) return Partition();
    std::size_t pos = 0;
    while (pos <= t.size()) {
      std::size_t comma = t.find(',', pos);
      if (comma == std::string::npos) comma = t.size();
      std::string_view item(t.data() + pos, comma - pos);
      std::size_t caret = item.find('^');
      int value = parse_int(item.substr(0, caret));
      int mult = caret == std::string_view::npos ? 1 : parse_int(item.substr(caret + 1));
      if (mult < 0) throw std::invalid_argument("negative exponent in partition");
      parts.insert(parts.end(), static_cast<std::size_t>(mult), value);
      pos = comma + 1;
      if (comma == t.size()) break;
    }
    return Partition(std::move(parts));
  }

  std::string str() const {
    std::string out;
    std::size_t i = 0;
    while (i < parts_.size()) {
      std::size_t j = i;
      while (j < parts_.size() && parts_[j] == parts_[i]) ++j;
      if (!out.empty()) out += ',';
      out += std::to_string(parts_[i]);
      if (j - i > 1) out += '^' + std::to_string(j - i);
      i = j;
    }
    return out;
  }

  const std::vector<int>& parts() const { return parts_; }
  int n() const { return n_; }
  std::size_t length() const { return parts_.size(); }
  int operator[](std::size_t i) const { return i < parts_.size() ? parts_[i] : 0; }

  bool is_two_part() const { return parts_.size() <= 2; }
  bool is_hook() const {
    for (std::size_t i = 1; i < parts_.size(); ++i)
      if (parts_[i] != 1) return false;
    return true;
  }
  int hook_leg() const {
    if (!is_hook()) throw std::invalid_argument("not a hook partition");
    return parts_.empty() ? 0 : static_cast<int>(parts_.size()) - 1;
  }

  Partition conjugate() const {
    std::vector<int> c;
    if (parts_.empty()) return Partition();
    for (int j = 1; j <= parts_[0]; ++j) {
      int cnt = 0;
      for (int p : parts_)
        if (p >= j) ++cnt;
      c.push_back(cnt);
    }
    return Partition(std::move(c));
  }

  friend bool operator==(const Partition& a, const Partition& b) { return a.parts_ == b.parts_; }
  friend auto operator<=>(const Partition& a, const Partition& b) { return a.parts_ <=> b.parts_; }

 private:
  static int parse_int(std::string_view s) {
    int v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
      throw std::invalid_argument("malformed partition string");
    return v;
  }

  std::vector<int> parts_;
  int n_ = 0;
};

struct NodeCoord {
  int row = 1;
  int col = 1;
  bool in(const Partition& p) const {
    return row >= 1 && col >= 1 && col <= p[static_cast<std::size_t>(row - 1)];
  }
};

inline std::vector<Partition> partitions_of(int n) {
  std::vector<Partition> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int rem, int maxpart) -> void {
    if (rem == 0) {
      out.emplace_back(cur);
      return;
    }
    for (int p = std::min(rem, maxpart); p >= 1; --p) {
      cur.push_back(p);
      self(self, rem - p, p);
      cur.pop_back();
    }
  };
  rec(rec, n, n);
  return out;
}

inline bool dominates(const Partition& l, const Partition& m) {
  if (l.n() != m.n()) throw std::invalid_argument("dominance needs partitions of the same size");
  long long a = 0, b = 0;
  std::size_t len = std::max(l.length(), m.length());
  for (std::size_t i = 0; i < len; ++i) {
    a += l[i];
    b += m[i];
    if (a < b) return false;
  }
  return true;
}

inline void require_prime(int p) {
  if (p < 2) throw std::invalid_argument("p must be a prime");
  for (int d = 2; d * d <= p; ++d)
    if (p % d == 0) throw std::invalid_argument("p must be a prime");
}

inline bool is_p_regular(const Partition& l, int p) {
  const auto& v = l.parts();
  std::size_t i = 0;
  while (i < v.size()) {
    std::size_t j = i;
    while (j < v.size() && v[j] == v[i]) ++j;
    if (static_cast<int>(j - i) >= p) return false;
    i = j;
  }
  return true;
}

inline std::vector<int> digits(long long a, int p) {
  if (a < 0) throw std::invalid_argument("digits of a negative integer");
  std::vector<int> d;
  while (a > 0) {
    d.push_back(static_cast<int>(a % p));
    a /= p;
  }
  return d;
}

inline int digit(long long a, int i, int p) {
  for (int k = 0; k < i && a > 0; ++k) a /= p;
  return static_cast<int>(a % p);
}

inline bool contains_p(long long a, long long b, int p) {
  if (a < 0 || b < 0) throw std::invalid_argument("containment needs nonnegative integers");
  while (b > 0) {
    long long db = b % p;
    if (db != 0 && db != a % p) return false;
    a /= p;
    b /= p;
  }
  return true;
}

inline int L_p(long long r, int p) {
  if (r < 0) throw std::invalid_argument("L_p of a negative integer");
  int L = 0;
  long long pw = 1;
  while (r >= pw) {
    pw *= p;
    ++L;
  }
  return L;
}

inline long long ipow(long long b, int e) {
  long long r = 1;
  for (int i = 0; i < e; ++i) {
    if (r > std::numeric_limits<long long>::max() / b) throw std::invalid_argument("power overflow");
    r *= b;
  }
  return r;
}

inline int val2(long long a) {
  if (a <= 0) throw std::invalid_argument("val2 needs a positive integer");
  int k = 0;
  while ((a & 1) == 0) {
    a >>= 1;
    ++k;
  }
  return k;
}

inline bool is_power_of_two(long long a) { return a > 0 && (a & (a - 1)) == 0; }

inline std::vector<int> residue_contents(const Partition& l, int p) {
  std::vector<int> c(static_cast<std::size_t>(p), 0);
  for (std::size_t r = 0; r < l.length(); ++r)
    for (int col = 0; col < l[r]; ++col) {
      int res = ((col - static_cast<int>(r)) % p + p) % p;
      ++c[static_cast<std::size_t>(res)];
    }
  return c;
}

inline bool same_block(const Partition& l, const Partition& m, int p) {
  if (l.n() != m.n()) throw std::invalid_argument("block test needs partitions of the same size");
  return residue_contents(l, p) == residue_contents(m, p);
}

inline long long binomial(long long n, long long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  i128 r = 1;
  for (long long i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > static_cast<i128>(std::numeric_limits<long long>::max()))
      throw std::invalid_argument("binomial overflow");
  }
  return static_cast<long long>(r);
}

inline long long dim_specht(const Partition& l) {
  if (l.length() <= 2) return binomial(l.n(), l[1]) - binomial(l.n(), l[1] - 1);
  if (l.is_hook()) return binomial(l.n() - 1, l.hook_leg());
  throw std::invalid_argument("closed-form dimension only for hooks and 2-part partitions");
}

inline long long dim_specht_2part(int l1, int l2) { return dim_specht(Partition::two_part(l1, l2)); }

// Semistandard tableaux of shape l and content mu, filled value by value as horizontal strips.
inline long long semistandard_count(const Partition& l, std::vector<int> mu) {
  for (int m : mu)
    if (m < 0) throw std::invalid_argument("composition parts must be nonnegative");
  while (!mu.empty() && mu.back() == 0) mu.pop_back();
  if (std::accumulate(mu.begin(), mu.end(), 0) != l.n()) return 0;
  const std::size_t rows = l.length();
  std::map<std::pair<std::size_t, std::vector<int>>, long long> memo;
  auto rec = [&](auto&& self, std::size_t v, const std::vector<int>& shape) -> long long {
    if (v == mu.size()) return shape == l.parts() || (rows == 0) ? 1 : 0;
    auto key = std::make_pair(v, shape);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    long long total = 0;
    std::vector<int> next = shape;
    auto place = [&](auto&& place_self, std::size_t r, int left) -> void {
      if (r == rows) {
        if (left == 0) total += self(self, v + 1, next);
        return;
      }
      int cur = shape[r];
      int cap = std::min(l[r], r == 0 ? l[r] : shape[r - 1]) - cur;
      for (int k = 0; k <= std::min(cap, left); ++k) {
        next[r] = cur + k;
        place_self(place_self, r + 1, left - k);
      }
      next[r] = cur;
    };
    place(place, 0, mu[v]);
    memo[key] = total;
    return total;
  };
  return rec(rec, 0, std::vector<int>(rows, 0));
}

}  // namespace spechtlab
