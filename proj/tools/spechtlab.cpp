#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "spechtlab/json_io.hpp"
#include "spechtlab/lattice.hpp"
#include "spechtlab/oracle.hpp"
#include "spechtlab/specht.hpp"

using namespace spechtlab;

namespace {

constexpr int kOk = 0, kUsage = 2, kTruncated = 3, kMismatch = 4;

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct Common {
  int p = 2;
  bool dot = false, tikz = false, verify = false, basis = false;
  std::string json_out, cache_dir, diff_out = "spechtlab-diff.json";
  std::size_t guard = 10000;
  unsigned threads = 1;
};

void emit_json(const Common& c, const json& j) {
  if (c.json_out.empty()) return;
  if (c.json_out == "-") {
    std::cout << j.dump(2) << '\n';
    return;
  }
  std::ofstream os(c.json_out);
  if (!os) throw std::runtime_error("cannot write " + c.json_out);
  os << j.dump(2) << '\n';
}

// Disagreements go to a separate artifact so that the oracle output is never overwritten.
void write_diff(const Common& c, const json& j) {
  std::ofstream os(c.diff_out);
  if (!os) throw std::runtime_error("cannot write " + c.diff_out);
  os << j.dump(2) << '\n';
  std::cerr << "disagreement written to " << c.diff_out << '\n';
}

Partition parse_partition(const std::string& s) {
  try {
    return Partition::parse(s);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("bad partition '") + s + "': " + e.what());
  }
}

RepModule specht_module(const Common& c, const Partition& lambda) {
  if (c.cache_dir.empty()) return rep_matrices(lambda);
  return ModuleCache(c.cache_dir).specht(lambda);
}

LatticeOptions lattice_options(const Common& c) {
  LatticeOptions o;
  o.guard = c.guard;
  o.threads = std::max(1U, c.threads);
  return o;
}

std::string join_dims(const std::vector<std::size_t>& d) {
  std::string s;
  for (auto x : d) s += (s.empty() ? "" : " ") + std::to_string(x);
  return s;
}

void print_lattice(std::ostream& os, const LatticeGraph& L) {
  os << "module S^(" << L.label << ") dim " << L.module_dim << '\n';
  os << "nodes " << L.nodes.size() << ": " << join_dims(L.dims()) << '\n';
  for (const auto& e : L.edges)
    os << "  " << L.nodes[e.from].dim << " -> " << L.nodes[e.to].dim << "  D(" << e.label.str() << ")\n";
  if (L.truncated) os << "truncated: node guard exceeded\n";
  if (L.incomplete) os << "incomplete: some quotient had no simple submodule among the candidates\n";
  if (!L.truncated) {
    os << "uniserial " << (is_uniserial(L) ? "yes" : "no") << ", distributive "
       << (L.nodes.size() <= 400 ? (is_distributive(L) ? "yes" : "no") : "skipped") << '\n';
  }
}

int cmd_predict(const Common& c, const std::string& lam) {
  Partition lambda = parse_partition(lam);
  if (!lambda.is_two_part()) throw UsageError("predict takes a partition with at most two parts; use 'hooks' for hooks");
  TwoPartProfile pr = profile(lambda, c.p);
  json j = profile_json(pr);
  std::cout << "lambda (" << lambda.str() << "), p = " << c.p << ", " << pr.size() << " composition factors\n";
  for (const auto& f : pr.factors()) {
    std::cout << "  D(" << f.nu.str() << ")  d = " << f.d << "  A = " << f.source.str();
    if (c.p == 2) std::cout << "  dim " << dim_simple(f.nu);
    std::cout << '\n';
  }
  if (c.p == 2 && pr.size() > 0) {
    std::cout << "socle D(" << socle_2part(lambda).nu.str() << ")\n";
    std::cout << "uniserial " << (uniserial_2part(lambda).uniserial ? "yes" : "no") << '\n';
  }
  int code = kOk;
  if (c.verify) {
    if (c.p != 2) throw UsageError("--verify computes in characteristic 2 only");
    LatticeGraph L = specht_lattice(lambda, specht_module(c, lambda), lattice_options(c));
    if (L.truncated) {
      std::cout << "verify: truncated by the node guard\n";
      code = kTruncated;
    } else {
      auto rep = compare_with_prediction(L, pr);
      std::cout << "verify: matrix lattice " << (rep.agree() ? "agrees" : "disagrees") << " (" << L.nodes.size()
                << " nodes)\n";
      j["verify"] = {{"agree", rep.agree()}, {"mismatches", rep.mismatches}};
      if (!rep.agree()) {
        write_diff(c, {{"shape", lambda.str()}, {"mismatches", rep.mismatches}, {"predicted", profile_json(pr)},
                       {"computed", lattice_json(L)}});
        code = kMismatch;
      }
    }
  }
  emit_json(c, j);
  return code;
}

int cmd_lattice(const Common& c, const std::string& lam, const std::vector<int>& hook) {
  Partition lambda;
  if (!hook.empty()) {
    if (hook.size() != 2 || hook[0] < 1 || hook[1] < 0 || hook[1] >= hook[0]) throw UsageError("--hook needs n r with 0 <= r < n");
    lambda = Partition::hook(hook[0], hook[1]);
  } else {
    if (lam.empty()) throw UsageError("lattice needs a partition or --hook n r");
    lambda = parse_partition(lam);
  }
  if (c.p != 2) throw UsageError("matrix computations are in characteristic 2 only");
  if (!lambda.is_two_part() && !lambda.is_hook()) throw UsageError("lattice supports two-part and hook shapes");
  LatticeGraph L = specht_lattice(lambda, specht_module(c, lambda), lattice_options(c));
  print_lattice(std::cout, L);
  if (c.dot) std::cout << to_dot(L);
  if (c.tikz) std::cout << to_tikz(L);
  json j = lattice_json(L, c.basis);
  int code = kOk;
  if (L.truncated) code = kTruncated;
  if (lambda.is_two_part() && !L.truncated) {
    auto rep = compare_with_prediction(L, profile(lambda));
    std::cout << "prediction " << (rep.agree() ? "agrees" : "disagrees") << '\n';
    for (const auto& m : rep.mismatches) std::cout << "  mismatch: " << m << '\n';
    j["prediction"] = {{"agree", rep.agree()}, {"mismatches", rep.mismatches}};
    if (!rep.agree()) code = kMismatch;
  }
  if (!L.truncated && !dimension_accounting_holds(L, [](const Partition& p) { return dim_simple(p); })) {
    std::cout << "dimension accounting fails\n";
    j["dimension_accounting"] = false;
    code = kMismatch;
  }
  if (code == kMismatch) {
    json d{{"shape", lambda.str()}, {"computed", lattice_json(L)}};
    if (j.contains("prediction")) d["prediction"] = j["prediction"];
    if (lambda.is_two_part()) d["predicted"] = profile_json(profile(lambda));
    write_diff(c, d);
  }
  emit_json(c, j);
  return code;
}

int cmd_hooks(const Common& c, const std::vector<int>& nrange, const std::vector<int>& rrange) {
  if (nrange.size() != 2 || nrange[0] < 1 || nrange[0] > nrange[1]) throw UsageError("--n needs MIN MAX");
  if (rrange.size() != 2 || rrange[0] < 0 || rrange[0] > rrange[1]) throw UsageError("--r needs MIN MAX");
  if (c.verify && nrange[1] > 16) throw UsageError("--verify is limited to n <= 16");
  int code = kOk;
  std::cout << "n,r,uniserial,unique_minimal,decomposition,witness_s";
  if (c.verify) std::cout << ",matrix_uniserial,matrix_unique_minimal,agree";
  std::cout << '\n';
  json rows = json::array(), disagreements = json::array();
  for (int n = nrange[0]; n <= nrange[1]; ++n)
    for (int r = rrange[0]; r <= rrange[1] && r < n; ++r) {
      const bool uni = hook_uniserial(n, r);
      std::optional<bool> umin;
      if (r <= n - r) umin = hook_unique_min(n, r).unique;
      std::string decomp;
      for (int j = 0; n - j > j; ++j)
        if (int m = hook_decomp(n, r, j); m > 0) decomp += (decomp.empty() ? "" : " ") + Partition::two_part(n - j, j).str() + ":" + std::to_string(m);
      const int witness = nonuniserial_witness(n % 32, r % 2 == 0 ? Parity::even : Parity::odd);
      std::cout << n << ',' << r << ',' << (uni ? "yes" : "no") << ',' << (umin ? (*umin ? "yes" : "no") : "n/a") << ",\""
                << decomp << "\"," << witness;
      json row{{"n", n}, {"r", r}, {"uniserial", uni}, {"decomposition", decomp}, {"witness_s", witness}};
      if (umin) row["unique_minimal"] = *umin;
      if (c.verify) {
        LatticeGraph L = specht_lattice(Partition::hook(n, r), lattice_options(c));
        if (L.truncated) return kTruncated;
        const bool mu = is_uniserial(L);
        int atoms = 0;
        for (const auto& e : L.edges)
          if (e.from == L.bottom) ++atoms;
        const bool agree = mu == uni && (!umin || (atoms == 1) == *umin);
        std::cout << ',' << (mu ? "yes" : "no") << ',' << (atoms == 1 ? "yes" : "no") << ',' << (agree ? "yes" : "no");
        row["matrix_uniserial"] = mu;
        row["matrix_unique_minimal"] = atoms == 1;
        row["agree"] = agree;
        if (!agree) {
          code = kMismatch;
          disagreements.push_back(row);
        }
      }
      std::cout << '\n';
      rows.push_back(row);
    }
  if (!disagreements.empty()) write_diff(c, {{"hooks", disagreements}});
  emit_json(c, rows);
  return code;
}

std::string groups_str(const std::vector<ChoiceGroup>& groups) {
  std::string s;
  for (const auto& g : groups) {
    s += s.empty() ? "" : " ";
    s += "{";
    for (std::size_t i = 0; i < g.elems.size(); ++i) s += (i ? "," : "") + std::to_string(g.elems[i]);
    s += "}:" + std::to_string(g.take);
  }
  return s;
}

void print_filtration(const Filtration& F, json& out) {
  std::size_t prev = 0;
  json steps = json::array();
  for (std::size_t i = 0; i < F.steps.size(); ++i) {
    const std::size_t d = F.steps[i].dim();
    std::cout << "  step " << i << ": dim " << d << ", quotient " << d - prev << " ~ S^(" << F.labels[i].str() << ")";
    if (i < F.groups.size() && !F.groups[i].empty()) std::cout << ", generator " << groups_str(F.groups[i]);
    std::cout << '\n';
    steps.push_back({{"dim", d}, {"quotient_dim", d - prev}, {"label", F.labels[i].str()},
                     {"generator", i < F.groups.size() ? groups_str(F.groups[i]) : ""}});
    prev = d;
  }
  out = steps;
}

int cmd_filtration(const Common& c, int n, int r) {
  if (n < 2 || r < 0 || r >= n) throw UsageError("filtration needs n >= 2 and 0 <= r < n");
  json j;
  int code = kOk;
  if (2 * r <= n) {
    Filtration F = hook_filtration(n, r);
    std::cout << "hook filtration of S^(" << Partition::hook(n, r).str() << ")\n";
    print_filtration(F, j["hook"]);
    for (std::size_t i = 0; i < F.steps.size(); ++i) {
      const auto want = dim_specht(F.labels[i]);
      const auto got = F.steps[i].dim() - (i ? F.steps[i - 1].dim() : 0);
      if (static_cast<long long>(got) != want) code = kMismatch;
    }
  }
  if (n % 2 == 0 && n - r <= r) {
    Filtration F = second_filtration(n, r);
    std::cout << "second filtration of S^(" << Partition::hook(n, r).str() << ")\n";
    print_filtration(F, j["second"]);
  }
  if (j.is_null()) throw UsageError("no filtration applies: need r <= n/2, or n even with n - r <= r");
  emit_json(c, j);
  return code;
}

int cmd_exactseq(const Common& c, int n) {
  if (n < 2 || n % 2) throw UsageError("exactseq needs an even n >= 2");
  json out = json::array();
  bool all = true;
  const int k = n / 2;
  std::vector<SpechtHom> maps;
  for (int i = 0; i < k; ++i) maps.push_back(theta_hat(i, n));
  // Junction at S^(n-i-1,i+1) between the maps numbered i and i+1; the maps at both ends are zero.
  for (int i = -1; i < k; ++i) {
    const SpechtHom* in = i >= 0 ? &maps[static_cast<std::size_t>(i)] : nullptr;
    const SpechtHom* outm = i + 1 < k ? &maps[static_cast<std::size_t>(i + 1)] : nullptr;
    const bool zero = !in || !outm || f2::multiply(in->matrix, outm->matrix).is_zero();
    const std::size_t ra = in ? in->rank() : 0, rb = outm ? outm->rank() : 0;
    const std::size_t mid = static_cast<std::size_t>(dim_specht(Partition::two_part(n - i - 1, i + 1)));
    const bool exact = zero && ra + rb == mid;
    all = all && exact;
    std::cout << "junction S^(" << Partition::two_part(n - i - 1, i + 1).str() << "): composite "
              << (zero ? "zero" : "nonzero") << ", rank " << ra << " + " << rb << " vs dim " << mid << " -> "
              << (exact ? "exact" : "NOT exact") << '\n';
    out.push_back({{"module", Partition::two_part(n - i - 1, i + 1).str()}, {"composite_zero", zero}, {"rank_in", ra},
                   {"rank_out", rb}, {"dim", mid}, {"exact", exact}});
  }
  std::cout << (all ? "im=ker at all " + std::to_string(k + 1) + " junctions" : std::string("exactness fails")) << '\n';
  if (!all) write_diff(c, {{"exactseq", n}, {"junctions", out}});
  emit_json(c, out);
  return all ? kOk : kMismatch;
}

int cmd_dual(const Common& c, int n, int r) {
  if (n < 2 || r < 0 || r >= n) throw UsageError("dual needs n >= 2 and 0 <= r < n");
  const Partition a = Partition::hook(n, r), b = Partition::hook(n, n - 1 - r);
  RepModule M = rep_matrices(a);
  M.densify();
  auto opt = lattice_options(c);
  LatticeGraph La = submodule_lattice(M, hook_factors(n, r), opt);
  LatticeGraph Ld = submodule_lattice(dual_module(M), hook_factors(n, r), opt);
  LatticeGraph Lb = specht_lattice(b, opt);
  if (La.truncated || Ld.truncated || Lb.truncated) return kTruncated;
  const bool dual_rev = lattice_isomorphism(reversed(La), Ld).has_value();
  const bool conj = lattice_isomorphism(Ld, Lb).has_value();
  const bool self = lattice_isomorphism(La, reversed(La)).has_value();
  std::cout << "S^(" << a.str() << "): nodes " << join_dims(La.dims()) << '\n';
  std::cout << "dual lattice is the order reverse: " << (dual_rev ? "yes" : "no") << '\n';
  std::cout << "dual lattice equals lattice of S^(" << b.str() << "): " << (conj ? "yes" : "no") << '\n';
  std::cout << "lattice is isomorphic to its order reverse: " << (self ? "yes" : "no") << '\n';
  bool map_ok = true;
  if (n % 2 == 1) {
    try {
      SpechtHom h = duality_map(n, r);
      map_ok = h.rank() == M.dim;
      std::cout << "explicit duality map: rank " << h.rank() << " of " << M.dim << '\n';
    } catch (const std::exception& e) {
      map_ok = false;
      std::cout << "explicit duality map failed: " << e.what() << '\n';
    }
  }
  json out{{"shape", a.str()},   {"dual_is_reverse", dual_rev}, {"dual_matches_conjugate_hook", conj},
           {"self_reverse", self}, {"duality_map_ok", map_ok}};
  if (!(dual_rev && conj && map_ok)) write_diff(c, {{"dual", out}, {"lattice", lattice_json(La)}, {"dual_lattice", lattice_json(Ld)}});
  emit_json(c, out);
  return dual_rev && conj && map_ok ? kOk : kMismatch;
}

int cmd_conjectures(const Common& c, int period_r, const std::vector<int>& period_n, int dist_max) {
  json out;
  if (!period_n.empty()) {
    if (period_r < 0) throw UsageError("--hook-period needs --r");
    std::vector<LatticeGraph> Ls;
    for (int n : period_n) {
      if (period_r >= n) throw UsageError("hook leg out of range");
      Ls.push_back(specht_lattice(Partition::hook(n, period_r), lattice_options(c)));
      std::cout << "S^(" << Partition::hook(n, period_r).str() << "): " << Ls.back().nodes.size() << " nodes\n";
    }
    json cmp = json::array();
    for (std::size_t i = 1; i < Ls.size(); ++i) {
      // Factor labels shift with n; compare the shapes of the graphs only.
      auto strip = [](LatticeGraph L) {
        for (auto& e : L.edges) e.label = Partition();
        return L;
      };
      const bool iso = lattice_isomorphism(strip(Ls[0]), strip(Ls[i])).has_value();
      std::cout << "observed: n=" << period_n[0] << " and n=" << period_n[i] << (iso ? " isomorphic" : " not isomorphic") << '\n';
      cmp.push_back({{"n", period_n[i]}, {"isomorphic_to_first", iso}});
    }
    out["hook_period"] = cmp;
  }
  if (dist_max > 0) {
    json rows = json::array();
    for (int n = 2; n <= dist_max; ++n)
      for (int r = 0; r < n; ++r) {
        LatticeGraph L = specht_lattice(Partition::hook(n, r), lattice_options(c));
        if (L.truncated) continue;
        const bool d = is_distributive(L);
        bool mult_free = true;
        for (const auto& f : hook_factors(n, r)) mult_free = mult_free && f.multiplicity == 1;
        std::cout << "S^(" << Partition::hook(n, r).str() << "): distributive " << (d ? "yes" : "no")
                  << ", multiplicity-free " << (mult_free ? "yes" : "no") << '\n';
        rows.push_back({{"n", n}, {"r", r}, {"distributive", d}, {"multiplicity_free", mult_free}});
      }
    out["distributivity"] = rows;
  }
  if (out.is_null()) throw UsageError("conjectures needs --hook-period or --distributive");
  emit_json(c, out);
  return kOk;
}

int cmd_tables(const Common& c) {
  json out;
  for (Parity par : {Parity::even, Parity::odd}) {
    const char* name = par == Parity::even ? "even" : "odd";
    std::cout << "witness table (" << name << " s): n mod 32 -> smallest s with S^(n-s,s) not uniserial\n";
    json t = json::array();
    for (auto [res, s] : witness_table(par)) {
      std::cout << "  " << res << " -> " << s << '\n';
      t.push_back({res, s});
    }
    out[std::string("witness_") + name] = t;
  }
  std::cout << "hooks with a unique minimal submodule (n mod 2^L(r), r):\n";
  json um = json::array();
  for (auto [res, r] : unique_min_table()) {
    std::cout << "  (" << res << ", " << r << ")\n";
    um.push_back({res, r});
  }
  out["unique_minimal"] = um;
  std::cout << "non-uniserial two-part witness for each such row:\n";
  json fw = json::array();
  for (const auto& row : filtration_witness_rows()) {
    std::cout << "  (" << row.residue << ", " << row.r << ") -> " << (row.s ? std::to_string(*row.s) : "none") << '\n';
    fw.push_back({{"residue", row.residue}, {"r", row.r}, {"s", row.s ? json(*row.s) : json(nullptr)}});
  }
  out["filtration_witness"] = fw;
  emit_json(c, out);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Submodule structure of mod-2 Specht modules for two-part and hook shapes"};
  app.require_subcommand(1);
  Common c;
  auto add_common = [&](CLI::App* s) {
    s->add_option("--p", c.p, "Prime (predictions only)")->check(CLI::PositiveNumber);
    s->add_option("--json", c.json_out, "Write JSON to this file ('-' for stdout)");
    s->add_option("--diff", c.diff_out, "File for the disagreement report written when a check fails");
    s->add_option("--guard", c.guard, "Node-count guard for lattice searches");
    s->add_option("--threads", c.threads, "Worker threads for lattice searches");
    s->add_option("--cache", c.cache_dir, "Directory for cached Specht generators");
    s->add_flag("--dot", c.dot, "Print the lattice as DOT");
    s->add_flag("--tikz", c.tikz, "Print the lattice as TikZ");
    s->add_flag("--verify", c.verify, "Recompute with matrices and compare");
    s->add_flag("--basis", c.basis, "Include node bases in JSON output");
  };

  std::string lam;
  std::vector<int> hook, nrange{8, 16}, rrange{0, 5}, period_n;
  int n = 0, r = 0, period_r = -1, dist_max = 0;

  auto* predict = app.add_subcommand("predict", "Composition factors, order, socle and uniseriality from the oracle");
  predict->add_option("lambda", lam, "Two-part partition, e.g. 9,5")->required();
  add_common(predict);

  auto* lattice = app.add_subcommand("lattice", "Submodule lattice of a Specht module by matrix computation");
  lattice->add_option("lambda", lam, "Partition, e.g. 9,5 or 6,1^4");
  lattice->add_option("--hook", hook, "Hook (n-r,1^r) given as n r")->expected(2);
  add_common(lattice);

  auto* hooks = app.add_subcommand("hooks", "CSV atlas of hook predictions");
  hooks->add_option("--n", nrange, "n range MIN MAX")->expected(2);
  hooks->add_option("--r", rrange, "r range MIN MAX")->expected(2);
  add_common(hooks);

  auto* filtration = app.add_subcommand("filtration", "Filtrations of S^(n-r,1^r) with their generators");
  filtration->add_option("n", n)->required();
  filtration->add_option("r", r)->required();
  add_common(filtration);

  auto* exactseq = app.add_subcommand("exactseq", "Check the sequence of maps between two-part Specht modules");
  exactseq->add_option("n", n)->required();
  add_common(exactseq);

  auto* dual = app.add_subcommand("dual", "Compare the lattice of a hook with its dual and the conjugate hook");
  dual->add_option("n", n)->required();
  dual->add_option("r", r)->required();
  add_common(dual);

  auto* conj = app.add_subcommand("conjectures", "Experiments: hook periodicity and distributivity sweeps");
  std::vector<std::string> period_args;
  conj->add_option("--hook-period", period_args, "Compare hook lattices for a fixed leg across n: r=R n=N1,N2,...")
      ->expected(0, 2);
  conj->add_option("--r", period_r, "Leg for --hook-period");
  conj->add_option("--ns", period_n, "Values of n for --hook-period")->delimiter(',');
  conj->add_option("--distributive", dist_max, "Distributivity sweep over hooks with n up to this value");
  add_common(conj);

  auto* tables = app.add_subcommand("tables", "Regenerate the witness and unique-minimal tables");
  add_common(tables);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }
  try {
    require_prime(c.p);
    if (!c.json_out.empty() && c.json_out == c.diff_out) throw UsageError("--json and --diff must name different files");
    if (*predict) return cmd_predict(c, lam);
    if (*lattice) return cmd_lattice(c, lam, hook);
    if (*hooks) return cmd_hooks(c, nrange, rrange);
    if (*filtration) return cmd_filtration(c, n, r);
    if (*exactseq) return cmd_exactseq(c, n);
    if (*dual) return cmd_dual(c, n, r);
    if (*conj) {
      for (const auto& a : period_args) {
        try {
          if (a.rfind("r=", 0) == 0) {
            period_r = std::stoi(a.substr(2));
          } else if (a.rfind("n=", 0) == 0) {
            period_n.clear();
            std::stringstream ss(a.substr(2));
            for (std::string t; std::getline(ss, t, ',');) period_n.push_back(std::stoi(t));
          } else {
            throw UsageError("--hook-period takes r=R and n=N1,N2,...");
          }
        } catch (const std::logic_error&) {
          throw UsageError("bad --hook-period value '" + a + "'");
        }
      }
      if (conj->count("--hook-period") && period_n.empty()) throw UsageError("--hook-period needs n=N1,N2,... or --ns");
      return cmd_conjectures(c, period_r, period_n, dist_max);
    }
    if (*tables) return cmd_tables(c);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
