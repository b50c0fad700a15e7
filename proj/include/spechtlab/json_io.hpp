#pragma once

#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <optional>
#include <regex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "spechtlab/f2.hpp"
#include "spechtlab/lattice.hpp"
#include "spechtlab/module.hpp"
#include "spechtlab/oracle.hpp"
#include "spechtlab/specht.hpp"

namespace spechtlab {

using json = nlohmann::json;

namespace detail {

inline std::string row_hex(const f2::Matrix& M, std::size_t i) {
  static const char* digits = "0123456789abcdef";
  std::string s;
  for (std::size_t c = 0; c < M.cols(); c += 4) {
    unsigned v = 0;
    for (std::size_t b = 0; b < 4 && c + b < M.cols(); ++b) v |= static_cast<unsigned>(M.get(i, c + b)) << b;
    s.push_back(digits[v]);
  }
  return s;
}

inline f2::Vector hex_row(const std::string& s, std::size_t cols) {
  if (s.size() != (cols + 3) / 4) throw std::invalid_argument("basis row has the wrong length");
  f2::Vector v(cols);
  for (std::size_t k = 0; k < s.size(); ++k) {
    const char ch = s[k];
    unsigned x = 0;
    if (ch >= '0' && ch <= '9')
      x = static_cast<unsigned>(ch - '0');
    else if (ch >= 'a' && ch <= 'f')
      x = static_cast<unsigned>(ch - 'a' + 10);
    else
      throw std::invalid_argument("bad hex digit in basis row");
    for (std::size_t b = 0; b < 4 && 4 * k + b < cols; ++b)
      if (x >> b & 1U) v.set(4 * k + b);
  }
  return v;
}

}  // namespace detail

inline json interval_json(const IntervalSet& I) {
  json a = json::array();
  for (auto [lo, hi] : I.intervals) a.push_back({lo, hi});
  return a;
}

inline json profile_json(const TwoPartProfile& pr) {
  json j;
  j["lambda"] = pr.lambda.str();
  j["p"] = pr.p;
  j["alpha"] = pr.alpha;
  json factors = json::array();
  for (const auto& f : pr.factors())
    factors.push_back({{"label", f.nu.str()}, {"d", f.d}, {"intervals", interval_json(f.source)}});
  j["factors"] = factors;
  json order = json::array();  // (i, j): the factor-i submodule lies inside the factor-j submodule
  for (std::size_t a = 0; a < pr.size(); ++a)
    for (std::size_t b = 0; b < pr.size(); ++b)
      if (a != b && factor_order(pr, pr.A[a], pr.A[b])) order.push_back({pr.factor(a).nu.str(), pr.factor(b).nu.str()});
  j["contained_in"] = order;
  if (pr.p == 2 && pr.size() > 0) {
    j["socle"] = socle_2part(pr.lambda).nu.str();
    j["uniserial"] = uniserial_2part(pr.lambda).uniserial;
    if (pr.size() <= 63) {
      auto pl = predicted_lattice(pr);
      j["predicted_dims"] = pl.dims;
    }
  }
  return j;
}

inline json lattice_json(const LatticeGraph& L, bool with_basis = false) {
  json j;
  j["module"] = L.label;
  j["module_dim"] = L.module_dim;
  json nodes = json::array();
  for (const auto& n : L.nodes) {
    json node{{"id", n.id}, {"dim", n.dim}};
    if (with_basis) {
      json rows = json::array();
      for (std::size_t i = 0; i < n.space.dim(); ++i) rows.push_back(detail::row_hex(n.space.basis(), i));
      node["basis"] = rows;
    }
    nodes.push_back(node);
  }
  j["nodes"] = nodes;
  json edges = json::array();
  for (const auto& e : L.edges) edges.push_back({{"from", e.from}, {"to", e.to}, {"label", e.label.str()}});
  j["edges"] = edges;
  j["top"] = L.top;
  j["bottom"] = L.bottom;
  j["truncated"] = L.truncated;
  j["incomplete"] = L.incomplete;
  return j;
}

// Reads a lattice written by lattice_json; node spaces are restored only when bases were written.
inline LatticeGraph lattice_from_json(const json& j) {
  LatticeGraph L;
  L.label = j.value("module", std::string());
  L.module_dim = j.at("module_dim").get<std::size_t>();
  for (const auto& n : j.at("nodes")) {
    LatticeGraph::Node node;
    node.id = n.at("id").get<std::size_t>();
    node.dim = n.at("dim").get<std::size_t>();
    if (node.id != L.nodes.size()) throw std::invalid_argument("lattice nodes must be listed in id order");
    if (n.contains("basis")) {
      f2::Matrix B(0, L.module_dim);
      for (const auto& r : n.at("basis")) B.append_row(detail::hex_row(r.get<std::string>(), L.module_dim));
      node.space = f2::Subspace::span(std::move(B));
      if (node.space.dim() != node.dim) throw std::invalid_argument("node basis does not match its dimension");
    } else {
      node.space = f2::Subspace(L.module_dim);
    }
    L.nodes.push_back(std::move(node));
  }
  for (const auto& e : j.at("edges")) {
    const auto from = e.at("from").get<std::size_t>(), to = e.at("to").get<std::size_t>();
    if (from >= L.nodes.size() || to >= L.nodes.size()) throw std::invalid_argument("edge endpoint out of range");
    L.edges.push_back({from, to, Partition::parse(e.at("label").get<std::string>())});
  }
  L.top = j.at("top").get<std::size_t>();
  L.bottom = j.at("bottom").get<std::size_t>();
  L.truncated = j.value("truncated", false);
  L.incomplete = j.value("incomplete", false);
  return L;
}

// Reads the DOT text written by to_dot; node spaces are not part of the format.
inline LatticeGraph lattice_from_dot(const std::string& dot) {
  static const std::regex title(R"re(label="S\^\(([^)]*)\)";)re");
  static const std::regex meta(R"re(// module_dim=(\d+) top=(\d+) bottom=(\d+) truncated=([01]) incomplete=([01]))re");
  static const std::regex node(R"re(n(\d+) \[shape=circle,label="(\d+)(?:_\d+)?"\];)re");
  static const std::regex edge(R"re(n(\d+) -> n(\d+) \[label="D\(([^)]*)\)"\];)re");
  LatticeGraph L;
  bool have_meta = false;
  std::istringstream is(dot);
  std::string line;
  std::smatch m;
  while (std::getline(is, line)) {
    if (std::regex_search(line, m, edge)) {
      const auto from = std::stoul(m[1]), to = std::stoul(m[2]);
      if (from >= L.nodes.size() || to >= L.nodes.size()) throw std::invalid_argument("edge endpoint out of range");
      L.edges.push_back({from, to, Partition::parse(m[3].str())});
    } else if (std::regex_search(line, m, node)) {
      if (std::stoul(m[1]) != L.nodes.size()) throw std::invalid_argument("lattice nodes must be listed in id order");
      L.nodes.push_back({L.nodes.size(), f2::Subspace(0), std::stoul(m[2])});
    } else if (std::regex_search(line, m, meta)) {
      L.module_dim = std::stoul(m[1]);
      L.top = std::stoul(m[2]);
      L.bottom = std::stoul(m[3]);
      L.truncated = m[4] == "1";
      L.incomplete = m[5] == "1";
      have_meta = true;
    } else if (std::regex_search(line, m, title)) {
      L.label = m[1];
    }
  }
  if (!have_meta) throw std::invalid_argument("DOT text lacks the lattice metadata line");
  return L;
}

// Same dims, edges, labels and flags.
inline bool same_graph(const LatticeGraph& a, const LatticeGraph& b) {
  return a.dims() == b.dims() && a.edges == b.edges && a.top == b.top && a.bottom == b.bottom &&
         a.module_dim == b.module_dim && a.truncated == b.truncated && a.incomplete == b.incomplete;
}

// On-disk cache of Specht generators: a binary file of row lists plus a JSON sidecar naming its contents.
class ModuleCache {
 public:
  static constexpr int kBasisOrderVersion = 1;

  explicit ModuleCache(std::filesystem::path dir) : dir_(std::move(dir)) { std::filesystem::create_directories(dir_); }

  RepModule specht(const Partition& shape, std::size_t dense_limit = kDefaultDenseLimit) {
    const std::string stem = key(shape);
    const auto bin = dir_ / (stem + ".bin"), side = dir_ / (stem + ".json");
    if (std::filesystem::exists(bin) && std::filesystem::exists(side)) {
      if (auto M = load(shape, bin, side)) {
        if (M->dim <= dense_limit) M->densify();
        return *M;
      }
    }
    RepModule M = rep_matrices(shape, 0);
    store(shape, M, bin, side);
    if (M.dim <= dense_limit) M.densify();
    return M;
  }

  static std::string key(const Partition& shape) {
    return "specht-" + hex64(fnv1a(shape.str() + "|" + std::to_string(kBasisOrderVersion)));
  }

 private:
  std::filesystem::path dir_;

  static std::uint64_t fnv1a(std::string_view s, std::uint64_t h = 1469598103934665603ULL) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 1099511628211ULL;
    }
    return h;
  }

  static std::string hex64(std::uint64_t x) {
    std::ostringstream os;
    os << std::hex << x;
    return os.str();
  }

  static std::string encode(const RepModule& M) {
    std::ostringstream os(std::ios::binary);
    auto put = [&](std::uint64_t v) { os.write(reinterpret_cast<const char*>(&v), sizeof v); };
    os.write("SPC1", 4);
    put(M.dim);
    put(M.sparse.size());
    for (const auto& S : M.sparse) {
      put(S.rows());
      put(S.cols());
      for (std::size_t i = 0; i < S.rows(); ++i) {
        auto r = S.row(i);
        put(r.size());
        os.write(reinterpret_cast<const char*>(r.data()), static_cast<std::streamsize>(r.size() * sizeof(std::uint32_t)));
      }
    }
    return os.str();
  }

  static void store(const Partition& shape, const RepModule& M, const std::filesystem::path& bin,
                    const std::filesystem::path& side) {
    const std::string data = encode(M);
    std::ofstream(bin, std::ios::binary).write(data.data(), static_cast<std::streamsize>(data.size()));
    json j{{"shape", shape.str()},
           {"basis_order_version", kBasisOrderVersion},
           {"dim", M.dim},
           {"generators", M.sparse.size()},
           {"content_hash", hex64(fnv1a(data))}};
    std::ofstream(side) << j.dump(2) << '\n';
  }

  static std::optional<RepModule> load(const Partition& shape, const std::filesystem::path& bin,
                                       const std::filesystem::path& side) {
    json j;
    try {
      std::ifstream(side) >> j;
    } catch (const json::exception&) {
      return std::nullopt;
    }
    if (j.value("shape", std::string()) != shape.str() || j.value("basis_order_version", 0) != kBasisOrderVersion)
      return std::nullopt;
    std::ifstream in(bin, std::ios::binary);
    std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (hex64(fnv1a(data)) != j.value("content_hash", std::string())) return std::nullopt;
    std::size_t pos = 4;
    auto get = [&]() {
      if (pos + 8 > data.size()) throw std::runtime_error("truncated module cache file");
      std::uint64_t v;
      std::memcpy(&v, data.data() + pos, 8);
      pos += 8;
      return v;
    };
    if (data.compare(0, 4, "SPC1") != 0) return std::nullopt;
    RepModule M;
    M.dim = get();
    M.label = shape.str();
    const std::uint64_t gens = get();
    for (std::uint64_t g = 0; g < gens; ++g) {
      const std::uint64_t rows = get(), cols = get();
      std::vector<std::vector<std::uint32_t>> lists(rows);
      for (auto& l : lists) {
        const std::uint64_t len = get();
        if (pos + len * 4 > data.size()) throw std::runtime_error("truncated module cache file");
        l.resize(len);
        std::memcpy(l.data(), data.data() + pos, len * 4);
        pos += len * 4;
      }
      M.sparse.push_back(f2::SparseRows::from_lists(cols, lists));
    }
    return M;
  }
};

}  // namespace spechtlab
