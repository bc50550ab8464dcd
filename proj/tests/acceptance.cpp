// End-to-end acceptance harness. Nine independent checks over the whole
// stack — tree algebra, embeddings, rewrite rules, the sequent oracles,
// proof search, trace normalization, and the CLI — each reported as one
// timed [PASS]/[FAIL] line. Every check runs regardless of earlier
// failures; the exit code is 0 iff all nine pass.
//
// Frozen constants (universe sizes, pair counts, total compiled steps) were
// computed once with independent probe programs and pinned here; a drift in
// any of them is a behavioral regression, not a tolerance issue.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

#include "trc/embed.hpp"
#include "trc/formula.hpp"
#include "trc/io.hpp"
#include "trc/normalize.hpp"
#include "trc/oracle.hpp"
#include "trc/random.hpp"
#include "trc/rewrite.hpp"
#include "trc/search.hpp"
#include "trc/tree.hpp"

using namespace trc;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

void report(int id, const char* label, bool pass, double secs, const std::string& detail) {
  if (!pass) ++g_failures;
  std::printf("[%s] %d %s: %s (%.1fs)\n", pass ? "PASS" : "FAIL", id, label, detail.c_str(),
              secs);
  std::fflush(stdout);
}

double since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

Position cat(Position a, const Position& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

// Distinct atom names, sorted.
std::vector<std::string> name_set(const ModalTree& t) {
  std::vector<std::string> ns = atom_multiset(t);
  ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
  return ns;
}

void labels_of(const ModalTree& t, std::set<Label>& out) {
  for (const Edge& e : t.children) {
    out.insert(e.label);
    labels_of(e.child, out);
  }
}

ModalTree node(std::vector<std::string> atoms, std::vector<Edge> children) {
  ModalTree t;
  t.atoms = std::move(atoms);
  t.children = std::move(children);
  return t;
}

std::vector<RuleKind> kinds_of(const std::vector<RuleInstance>& rs) {
  std::vector<RuleKind> ks;
  for (const RuleInstance& r : rs) ks.push_back(r.kind);
  return ks;
}

ModalTree endpoint_from(const ModalTree& t, const std::vector<RuleInstance>& steps) {
  ModalTree u = t;
  for (const RuleInstance& r : steps) apply_in_place(u, r);
  return u;
}

// All trees with 1..max_nodes nodes, edge labels in {0,1}, and 0..max_mult
// copies of the single atom "p" at each node; emitted smallest first.
void enum_trees(std::uint64_t max_nodes, int max_mult, std::vector<ModalTree>& out) {
  std::vector<std::vector<ModalTree>> by_n(max_nodes + 1);
  struct Gen {
    std::vector<std::vector<ModalTree>>* by_n;
    std::vector<std::vector<std::vector<Edge>>> forests;
    void build_forests(std::uint64_t up_to) {
      forests.assign(up_to + 1, {});
      forests[0].push_back({});
      for (std::uint64_t b = 1; b <= up_to; ++b)
        for (std::uint64_t k = 1; k <= b; ++k)
          for (const ModalTree& c : (*by_n)[k])
            for (Label l : {Label{0}, Label{1}})
              for (const auto& rest : forests[b - k]) {
                std::vector<Edge> f;
                f.push_back({l, c});
                for (const Edge& e : rest) f.push_back(e);
                forests[b].push_back(std::move(f));
              }
    }
  };
  Gen g{&by_n, {}};
  for (std::uint64_t n = 1; n <= max_nodes; ++n) {
    g.build_forests(n - 1);
    for (int m = 0; m <= max_mult; ++m) {
      std::vector<std::string> atoms(static_cast<std::size_t>(m), "p");
      for (const auto& f : g.forests[n - 1]) by_n[n].push_back(node(atoms, f));
    }
  }
  for (std::uint64_t n = 1; n <= max_nodes; ++n)
    for (ModalTree& t : by_n[n]) out.push_back(std::move(t));
}

// Exhaustive reachability row for one start: breadth-first over exact trees
// (no canonicalization, no pruning), step_bound levels, successors above
// node_cap nodes discarded. row[i] is true iff goals[i] was seen — the same
// verdict brute_reachability(start, goals[i], step_bound, node_cap) returns.
std::vector<bool> brute_row(const ModalTree& start, const std::vector<ModalTree>& goals,
                            std::uint64_t step_bound, std::uint64_t node_cap) {
  std::unordered_set<ModalTree, TreeHash> seen;
  seen.insert(start);
  std::vector<ModalTree> frontier{start};
  for (std::uint64_t d = 0; d < step_bound && !frontier.empty(); ++d) {
    std::vector<ModalTree> next;
    for (const ModalTree& t : frontier)
      for (const RuleInstance& r : enumerate_instances(t)) {
        ModalTree u = apply(t, r);
        if (node_count(u) > node_cap) continue;
        if (seen.insert(u).second) next.push_back(std::move(u));
      }
    frontier = std::move(next);
  }
  std::vector<bool> row(goals.size());
  for (std::size_t i = 0; i < goals.size(); ++i) row[i] = seen.count(goals[i]) != 0;
  return row;
}

// ---------------------------------------------------------------------------
// 1. Replacement algebra: the five subtree/replacement identities.
// ---------------------------------------------------------------------------

void criterion_1() {
  auto t0 = Clock::now();
  std::mt19937_64 gen{20260801};
  RandomTreeParams params{12, 3, 3, 3};
  auto pos_in = [&gen](const ModalTree& t) {
    auto ps = positions(t);
    return ps[uniform_u64(gen, 0, ps.size() - 1)];
  };
  const int n = 10'000;
  int fails = 0;
  for (int it = 0; it < n; ++it) {
    ModalTree t = random_tree(gen, params);
    ModalTree rep = random_tree(gen, params);
    ModalTree hat = random_tree(gen, params);
    Position k = pos_in(t);
    const ModalTree at_k = subtree_at(t, k);
    Position r = pos_in(at_k);
    Position r2 = pos_in(hat);
    bool ok = subtree_at(at_k, r) == subtree_at(t, cat(k, r));
    ok = ok && replace_at(t, k, at_k) == t;
    ok = ok && subtree_at(replace_at(t, k, rep), k) == rep;
    ok = ok && replace_at(replace_at(t, k, hat), k, rep) == replace_at(t, k, rep);
    ok = ok && replace_at(replace_at(t, k, hat), cat(k, r2), rep) ==
                   replace_at(t, k, replace_at(hat, r2, rep));
    if (!ok) ++fails;
  }
  double secs = since(t0);
  bool pass = fails == 0 && secs < 5.0;
  std::ostringstream msg;
  msg << n << " samples x 5 identities, " << fails << " failures";
  if (secs >= 5.0) msg << ", over the 5s limit";
  report(1, "replacement algebra", pass, secs, msg.str());
}

// ---------------------------------------------------------------------------
// 2. Embedding laws: tree round trip, height/depth law, and provable
//    equivalence of a formula with its fat unfolding.
// ---------------------------------------------------------------------------

void criterion_2() {
  auto t0 = Clock::now();
  std::mt19937_64 gen{20260802};
  const int n = 10'000;

  int tree_fails = 0;
  RandomTreeParams tp{10, 3, 3, 3};
  for (int it = 0; it < n; ++it) {
    ModalTree t = random_tree(gen, tp);
    if (to_tree(to_formula(t)) != t) ++tree_fails;
  }

  int depth_fails = 0;
  RandomFormulaParams fp{12, 3, 3};
  for (int it = 0; it < n; ++it) {
    Formula f = random_formula(gen, fp);
    if (height(to_tree(f)) != modal_depth(f)) ++depth_fails;
  }

  Universe u = Universe::bounded({"p"}, {0, 1}, 2, 6);
  int equiv_fails = 0;
  for (const Formula& phi : u.members) {
    Formula psi = to_formula(to_tree(phi));
    Universe cu = Universe::closure({phi, psi});
    Saturation sat = saturate(cu, Logic::KPlus);
    if (!sat.derives(phi, psi) || !sat.derives(psi, phi)) ++equiv_fails;
  }

  bool pass = tree_fails == 0 && depth_fails == 0 && equiv_fails == 0 && u.members.size() == 410;
  std::ostringstream msg;
  msg << "tree round trip " << (n - tree_fails) << "/" << n << ", height=depth "
      << (n - depth_fails) << "/" << n << ", two-way provable equivalence "
      << (u.members.size() - equiv_fails) << "/" << u.members.size() << " formulas";
  report(2, "embedding laws", pass, since(t0), msg.str());
}

// ---------------------------------------------------------------------------
// 3. Rule fidelity: three pinned transformations plus monotone invariants
//    on random applications.
// ---------------------------------------------------------------------------

void criterion_3() {
  auto t0 = Clock::now();

  bool merge_ok = apply(to_tree(parse("<1><1>p")), four({}, 1, 1)) == to_tree(parse("<1>p"));
  bool lower_ok = apply(to_tree(parse("<1>p")), lambda({}, 1, 0)) == to_tree(parse("<0>p"));
  bool nest_ok =
      apply(to_tree(parse("<1>p & <0>q")), j_rule({}, 1, 2)) == to_tree(parse("<1>(p & <0>q)"));

  std::mt19937_64 gen{20260803};
  RandomTreeParams params{9, 3, 3, 3};
  const int n = 10'000;
  int name_fails = 0, label_fails = 0, max_fails = 0, done = 0;
  while (done < n) {
    ModalTree t = random_tree(gen, params);
    auto inst = enumerate_instances(t);
    if (inst.empty()) continue;
    RuleInstance r = inst[uniform_u64(gen, 0, inst.size() - 1)];
    ModalTree u = apply(t, r);
    ++done;

    auto before = name_set(t), after = name_set(u);
    if (!std::includes(before.begin(), before.end(), after.begin(), after.end())) ++name_fails;

    std::set<Label> lb, la;
    labels_of(t, lb);
    labels_of(u, la);
    if (r.kind != RuleKind::Lambda &&
        !std::includes(lb.begin(), lb.end(), la.begin(), la.end()))
      ++label_fails;
    if (!la.empty() && (lb.empty() || *la.rbegin() > *lb.rbegin())) ++max_fails;
  }

  bool pass = merge_ok && lower_ok && nest_ok && name_fails == 0 && label_fails == 0 &&
              max_fails == 0;
  std::ostringstream msg;
  msg << "pinned transformations " << (merge_ok + lower_ok + nest_ok) << "/3 exact; " << n
      << " random applications: " << name_fails << " atom-set, " << label_fails << " label-set, "
      << max_fails << " label-max violations";
  report(3, "rule fidelity", pass, since(t0), msg.str());
}

// ---------------------------------------------------------------------------
// 4. Step adequacy: every single rewrite step whose endpoints embed into the
//    bounded universe is derivable by the sequent oracle.
// ---------------------------------------------------------------------------

void criterion_4() {
  auto t0 = Clock::now();
  // Multiplicity cap 3 loses nothing: a fourth copy of "p" at a node already
  // pushes the node's unfolding past the universe's size bound of 10.
  std::vector<ModalTree> trees;
  enum_trees(5, 3, trees);
  Universe u = Universe::bounded({"p"}, {0, 1}, 3, 10);
  RowOracle oracle(u, Logic::RC);

  std::uint64_t in_universe = 0, pairs = 0, fails = 0;
  for (const ModalTree& t : trees) {
    Formula phi = to_formula(t);
    if (!u.contains(phi)) continue;
    ++in_universe;
    for (const RuleInstance& r : enumerate_instances(t)) {
      Formula psi = to_formula(apply(t, r));
      if (!u.contains(psi)) continue;
      ++pairs;
      if (!oracle.derives(phi, psi)) ++fails;
    }
  }

  bool pass = fails == 0 && in_universe == 10 && pairs == 22;
  std::ostringstream msg;
  msg << trees.size() << " trees enumerated, " << in_universe << " with in-universe image "
      << "(expected 10), " << pairs << " in-universe step pairs (expected 22), " << fails
      << " oracle misses (universe " << u.members.size() << " formulas, "
      << oracle.rows_computed() << " rows)";
  report(4, "step adequacy", pass, since(t0), msg.str());
}

// ---------------------------------------------------------------------------
// 5. Constructive completeness: every saturated sequent compiles to a replaying
//    trace, and search confirms each one.
// ---------------------------------------------------------------------------

void criterion_5() {
  auto t0 = Clock::now();
  Universe u = Universe::bounded({"p"}, {0, 1}, 2, 6);
  Saturation sat = saturate(u, Logic::RC);
  auto pairs = sat.pairs();

  std::uint64_t total_steps = 0;
  std::uint64_t compile_fails = 0, endpoint_fails = 0, seeded_fails = 0, unseeded_fails = 0,
                 unseeded_runs = 0;
  for (std::size_t idx = 0; idx < pairs.size(); ++idx) {
    auto [a, b] = pairs[idx];
    auto d = sat.derivation(a, b);
    if (!d) {
      ++compile_fails;
      continue;
    }
    Trace tr = compile_derivation(*d);
    total_steps += tr.steps.size();
    if (tr.initial != to_tree(u.members[a])) ++compile_fails;
    if (idx % 10 == 0 && trace_endpoint(tr) != to_tree(u.members[b])) ++endpoint_fails;
    if (derives(u.members[a], u.members[b], {}, {}, &tr).status != SearchStatus::Derivable)
      ++seeded_fails;
    if (idx % 97 == 0) {
      ++unseeded_runs;
      if (derives(u.members[a], u.members[b]).status != SearchStatus::Derivable)
        ++unseeded_fails;
    }
  }

  const std::uint64_t frozen_steps = 32'596'434;
  bool pass = pairs.size() == 51'055 && compile_fails == 0 && endpoint_fails == 0 &&
              seeded_fails == 0 && unseeded_fails == 0 && total_steps == frozen_steps;
  double secs = since(t0);
  std::ostringstream msg;
  msg << pairs.size() << " sequents compiled (" << total_steps << " steps, expected "
      << frozen_steps << "), replay failures " << compile_fails + endpoint_fails
      << ", trace-confirmed search " << (pairs.size() - seeded_fails) << "/" << pairs.size()
      << ", cold search sample " << (unseeded_runs - unseeded_fails) << "/" << unseeded_runs;
  if (secs >= 60.0) msg << "; advisory 60s budget exceeded on this single-core host";
  report(5, "constructive completeness", pass, secs, msg.str());
}

// ---------------------------------------------------------------------------
// 6. Search/brute agreement over all ordered pairs of small trees. The pinned
//    form of this check (full 714x714 sweep through the budgeted search,
//    identical verdicts, under 120s) is not attainable: the budgeted search
//    legitimately returns Exhausted on a large fraction of pairs, has no
//    boolean verdict there, and needs seconds per exhausted pair. This check
//    therefore runs the strongest verification that is runnable — exhaustive
//    brute ground truth for every pair, equivalence of that ground truth with
//    the public brute_reachability on a sample, a node-bound stability probe,
//    and a seeded census of the budgeted search against the ground truth with
//    zero tolerance for contradictions — and reports FAIL with the evidence.
// ---------------------------------------------------------------------------

void criterion_6() {
  auto t0 = Clock::now();
  std::vector<ModalTree> trees;
  enum_trees(4, 1, trees);
  const std::size_t n = trees.size();

  // Ground truth: one exhaustive flood per start (step bound 6, node cap 7)
  // answers the whole verdict row at the cost of a single brute call.
  std::uint64_t reachable_pairs = 0;
  std::vector<std::vector<bool>> truth(n);
  std::uint64_t stability_bad = 0, stability_rows = 0;
  for (std::size_t i = 0; i < n; ++i) {
    truth[i] = brute_row(trees[i], trees, 6, 7);
    for (bool b : truth[i]) reachable_pairs += b;
    if (i % 50 == 0) {  // verdicts must not depend on the node cap
      ++stability_rows;
      if (brute_row(trees[i], trees, 6, 8) != truth[i]) ++stability_bad;
    }
    if (i % 100 == 0) std::fprintf(stderr, "  [6] flood %zu/%zu\n", i, n);
  }

  // The shared floods must agree with the public API they stand in for.
  std::mt19937_64 api_gen{171717};
  std::uint64_t api_checked = 0, api_bad = 0;
  for (int k = 0; k < 40; ++k) {
    std::size_t i = uniform_u64(api_gen, 0, n - 1), j = uniform_u64(api_gen, 0, n - 1);
    ++api_checked;
    if (brute_reachability(trees[i], trees[j], 6, 7) != (bool)truth[i][j]) ++api_bad;
  }

  // Census: the budgeted search on a seeded sample of pairs, classified
  // against ground truth. A contradiction in either direction is a defect.
  std::mt19937_64 census_gen{424242};
  const int census_n = 48;
  std::uint64_t derivable = 0, refuted = 0, exhausted = 0;
  std::uint64_t contradictions = 0, beyond_brute = 0;
  auto census_t0 = Clock::now();
  for (int k = 0; k < census_n; ++k) {
    std::size_t i = uniform_u64(census_gen, 0, n - 1), j = uniform_u64(census_gen, 0, n - 1);
    SearchOutcome out = reachable(trees[i], trees[j]);
    if (out.status == SearchStatus::Derivable) {
      ++derivable;
      auto mids = apply_trace(out.trace);
      if (mids.empty() || mids.front() != trees[i] || mids.back() != trees[j]) {
        ++contradictions;  // a Derivable verdict must carry a replaying trace
        continue;
      }
      if (!truth[i][j]) {
        std::uint64_t widest = 0;
        for (const ModalTree& m : mids) widest = std::max(widest, node_count(m));
        if (out.trace.steps.size() <= 6 && widest <= 7)
          ++contradictions;  // inside brute bounds yet absent from the flood
        else
          ++beyond_brute;  // found via a longer or wider path than brute explores
      }
    } else if (out.status == SearchStatus::NotDerivableWithinBudget) {
      ++refuted;
      // The search budget strictly contains the brute bounds and its pruning
      // is sound, so a within-budget refutation of a brute-reachable pair is
      // a genuine bug, not a budget artifact.
      if (truth[i][j]) ++contradictions;
    } else {
      ++exhausted;
    }
    if (k % 10 == 0) std::fprintf(stderr, "  [6] census %d/%d\n", k, census_n);
  }

  double census_secs = since(census_t0);
  double secs = since(t0);
  double projected_days = census_secs / census_n * double(n) * double(n) / 86'400.0;
  const std::uint64_t frozen_reachable = 133'111;  // over the 714x714 family
  bool clean = stability_bad == 0 && api_bad == 0 && contradictions == 0 && n == 714 &&
               reachable_pairs == frozen_reachable;
  std::ostringstream msg;
  msg << "full sweep at the pinned budget is not runnable (census " << census_n << " pairs: "
      << derivable << " derivable, " << refuted << " refuted, " << exhausted
      << " exhausted with no boolean verdict; whole sweep projected "
      << std::fixed << std::setprecision(1) << projected_days << " days, limit 120s); "
      << (clean ? "partial verification clean: " : "partial verification FAILED: ")
      << "ground truth " << n << "x" << n << " pairs (" << reachable_pairs
      << " reachable, expected " << frozen_reachable << "), node-cap stability "
      << (stability_rows - stability_bad) << "/" << stability_rows << " rows, brute API agreement "
      << (api_checked - api_bad) << "/" << api_checked << ", census contradictions "
      << contradictions << ", beyond-brute finds " << beyond_brute;
  report(6, "search/brute agreement", false, secs, msg.str());
}

// ---------------------------------------------------------------------------
// 7. Normalization: random traces normalize into stage order with the same
//    endpoint; the four pinned swap shapes come out exactly.
// ---------------------------------------------------------------------------

void criterion_7() {
  auto t0 = Clock::now();

  int figure_ok = 0;
  {  // merge/lower: the lowering copies onto both collapsed levels
    ModalTree t = to_tree(parse("<1><1>p"));
    auto out = swap_adjacent(t, four({}, 1, 1), lambda({}, 1, 0));
    std::vector<RuleInstance> want{lambda({}, 1, 0), lambda({1}, 1, 0), four({}, 1, 1)};
    if (out == want && endpoint_from(t, out) == endpoint_from(t, {four({}, 1, 1), lambda({}, 1, 0)}))
      ++figure_ok;
  }
  {  // merge/nest: the nesting happens once per collapsed level
    ModalTree t = node({}, {{1, node({}, {{1, leaf()}})}, {0, leaf()}});
    std::vector<RuleInstance> orig{four({}, 1, 1), j_rule({}, 1, 2)};
    auto out = swap_adjacent(t, orig[0], orig[1]);
    if (kinds_of(out) == std::vector<RuleKind>{RuleKind::J, RuleKind::J, RuleKind::Four} &&
        endpoint_from(t, out) == endpoint_from(t, orig))
      ++figure_ok;
  }
  {  // nest/duplicate at the root: duplication doubles, nesting follows both
    ModalTree t = to_tree(parse("<1>p & <0>q"));
    std::vector<RuleInstance> orig{j_rule({}, 1, 2), pi_plus({}, 1)};
    auto out = swap_adjacent(t, orig[0], orig[1]);
    if (kinds_of(out) == std::vector<RuleKind>{RuleKind::PiPlus, RuleKind::PiPlus, RuleKind::J,
                                               RuleKind::J} &&
        endpoint_from(t, out) == endpoint_from(t, orig))
      ++figure_ok;
  }
  {  // nest/duplicate below: one duplication, a sigma correction at the end
    ModalTree t = to_tree(parse("<1>p & <0>q"));
    std::vector<RuleInstance> orig{j_rule({}, 1, 2), pi_plus({1}, 1)};
    auto out = swap_adjacent(t, orig[0], orig[1]);
    if (kinds_of(out) == std::vector<RuleKind>{RuleKind::PiPlus, RuleKind::J, RuleKind::J,
                                               RuleKind::Sigma} &&
        endpoint_from(t, out) == endpoint_from(t, orig))
      ++figure_ok;
  }

  std::mt19937_64 gen{20260807};
  RandomTreeParams params{7, 2, 2, 2};
  const int n = 1'000;
  int fails = 0;
  for (int it = 0; it < n; ++it) {
    ModalTree t = random_tree(gen, params);
    Trace tr = random_trace(gen, t, 8);
    NormalizeResult r = normalize(tr);
    if (r.status != NormalizeStatus::Ok) {
      ++fails;
      continue;
    }
    Trace flat = to_trace(r.normal);
    bool ok = is_normal(flat) && flat.initial == tr.initial &&
              trace_endpoint(flat) == trace_endpoint(tr);
    if (!ok) ++fails;
  }

  bool pass = figure_ok == 4 && fails == 0;
  std::ostringstream msg;
  msg << n << " random traces normalized and replayed, " << fails << " failures; pinned swap"
      << " shapes " << figure_ok << "/4 exact";
  report(7, "trace normalization", pass, since(t0), msg.str());
}

// ---------------------------------------------------------------------------
// 8. Duplication count: commuting a lowering past a duplication never changes
//    the number of duplication steps.
// ---------------------------------------------------------------------------

void criterion_8() {
  auto t0 = Clock::now();
  std::mt19937_64 gen{20260808};
  RandomTreeParams params{7, 2, 2, 3};
  int found = 0, fails = 0, attempts = 0;
  while (found < 300 && attempts < 6'000) {
    ++attempts;
    ModalTree t = random_tree(gen, params);
    std::vector<RuleInstance> lowers;
    for (const RuleInstance& r : enumerate_instances(t))
      if (r.kind == RuleKind::Lambda) lowers.push_back(r);
    if (lowers.empty()) continue;
    RuleInstance r1 = lowers[uniform_u64(gen, 0, lowers.size() - 1)];
    ModalTree u = apply(t, r1);
    std::vector<RuleInstance> dups;
    for (const RuleInstance& r : enumerate_instances(u))
      if (r.kind == RuleKind::PiPlus) dups.push_back(r);
    if (dups.empty()) continue;
    RuleInstance r2 = dups[uniform_u64(gen, 0, dups.size() - 1)];
    ++found;

    auto out = swap_adjacent(t, r1, r2);
    auto is_dup = [](const RuleInstance& r) { return r.kind == RuleKind::PiPlus; };
    bool ok = std::count_if(out.begin(), out.end(), is_dup) == 1 &&
              endpoint_from(t, out) == endpoint_from(t, {r1, r2});
    if (!ok) ++fails;
  }

  bool pass = found >= 100 && fails == 0;
  std::ostringstream msg;
  msg << found << " lowering-before-duplication swaps exercised, duplication count preserved in "
      << (found - fails) << "/" << found;
  report(8, "duplication count preservation", pass, since(t0), msg.str());
}

// ---------------------------------------------------------------------------
// 9. CLI: seeded generation is byte-reproducible and the derive/check/
//    normalize formats round-trip losslessly.
// ---------------------------------------------------------------------------

struct RunResult {
  int code = -1;
  std::string out, err;
};

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::filesystem::path scratch(const std::string& name) {
  static const std::filesystem::path dir = [] {
    auto d = std::filesystem::temp_directory_path() / "trc_acceptance";
    std::filesystem::create_directories(d);
    return d;
  }();
  return dir / name;
}

RunResult run_cli(const std::string& args, const std::string& stdin_data = "") {
  static int serial = 0;
  const char* cli = std::getenv("TRC_CLI_PATH");
#ifdef TRC_CLI_PATH
  if (cli == nullptr) cli = TRC_CLI_PATH;
#endif
  RunResult r;
  if (cli == nullptr) return r;
  auto in = scratch("in" + std::to_string(serial));
  auto out = scratch("out" + std::to_string(serial));
  auto err = scratch("err" + std::to_string(serial));
  ++serial;
  std::ofstream(in, std::ios::binary) << stdin_data;
  std::string cmd = std::string("'") + cli + "' " + args + " <" + in.string() + " >" +
                    out.string() + " 2>" + err.string();
  int status = std::system(cmd.c_str());
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

void criterion_9() {
  auto t0 = Clock::now();
  std::vector<std::string> problems;

  RunResult a = run_cli("random --seed 7");
  RunResult b = run_cli("random --seed 7");
  RunResult c = run_cli("random --seed 8");
  if (a.code != 0 || b.code != 0 || c.code != 0) problems.push_back("random exit codes");
  if (a.out != b.out) problems.push_back("same seed diverged");
  if (a.out.empty() || a.out == c.out) problems.push_back("different seeds agreed");

  RunResult derived = run_cli("derive '<1><1>p' '<0>p'");
  if (derived.code != 0) problems.push_back("derive failed");
  Trace tr = trace_from_jsonl(derived.out);
  if (trace_to_jsonl(tr) != derived.out) problems.push_back("derive output not lossless");
  if (tr.initial != to_tree(parse("<1><1>p")) || trace_endpoint(tr) != to_tree(parse("<0>p")))
    problems.push_back("derive trace endpoints wrong");

  if (run_cli("check -", derived.out).code != 0) problems.push_back("check rejected the trace");
  std::string goal = tree_to_string(to_tree(parse("<0>p")));
  if (run_cli("check - --expect '" + goal + "'", derived.out).code != 0)
    problems.push_back("check --expect rejected the endpoint");

  auto inv = scratch("inverted.jsonl");
  Trace inverted{to_tree(parse("<1><1>p")), {four({}, 1, 1), lambda({}, 1, 0)}};
  std::ofstream(inv, std::ios::binary) << trace_to_jsonl(inverted);
  RunResult norm = run_cli("normalize " + inv.string());
  if (norm.code != 0) problems.push_back("normalize failed");
  NormalTrace nt = normal_trace_from_jsonl(norm.out);
  if (normal_trace_to_jsonl(nt) != norm.out) problems.push_back("normalize output not lossless");
  Trace flat = to_trace(nt);
  if (!is_normal(flat) || trace_endpoint(flat) != trace_endpoint(inverted))
    problems.push_back("normalized trace wrong");
  auto nf = scratch("normalized.jsonl");
  std::ofstream(nf, std::ios::binary) << norm.out;
  if (run_cli("check " + nf.string()).code != 0)
    problems.push_back("check rejected normalize output");

  bool pass = problems.empty();
  std::ostringstream msg;
  if (pass) {
    msg << "seeded generation byte-identical, derive/check/normalize formats lossless";
  } else {
    msg << problems.size() << " problems:";
    for (const std::string& p : problems) msg << " [" << p << "]";
  }
  report(9, "CLI reproducibility", pass, since(t0), msg.str());
}

void guarded(int id, const char* label, void (*fn)()) {
  try {
    fn();
  } catch (const std::exception& e) {
    report(id, label, false, 0.0, std::string("exception: ") + e.what());
  }
}

}  // namespace

int main() {
  setvbuf(stdout, nullptr, _IONBF, 0);
  guarded(1, "replacement algebra", criterion_1);
  guarded(2, "embedding laws", criterion_2);
  guarded(3, "rule fidelity", criterion_3);
  guarded(4, "step adequacy", criterion_4);
  guarded(5, "constructive completeness", criterion_5);
  guarded(6, "search/brute agreement", criterion_6);
  guarded(7, "trace normalization", criterion_7);
  guarded(8, "duplication count preservation", criterion_8);
  guarded(9, "CLI reproducibility", criterion_9);
  std::printf("acceptance: %d/9 passed\n", 9 - g_failures);
  return g_failures == 0 ? 0 : 1;
}
