// trc — command-line front end for the tree rewriting library.
//
// Subcommands: tree, formula, apply, derive, check, normalize, random, repl,
// selftest. Every subcommand takes --json for machine-readable output. Data
// outputs go to standard output; diagnostics and human-mode outcome lines go
// to standard error, so that e.g. `trc derive ... | trc check -` works.

#include <cctype>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "trc/align.hpp"
#include "trc/embed.hpp"
#include "trc/errors.hpp"
#include "trc/formula.hpp"
#include "trc/io.hpp"
#include "trc/normalize.hpp"
#include "trc/oracle.hpp"
#include "trc/random.hpp"
#include "trc/rewrite.hpp"
#include "trc/search.hpp"
#include "trc/tree.hpp"

namespace {

using nlohmann::json;

std::string counted(std::size_t n, const char* noun) {
  return std::to_string(n) + " " + noun + (n == 1 ? "" : "s");
}

std::string read_input(const std::string& path_or_dash) {
  if (path_or_dash == "-") {
    std::ostringstream out;
    out << std::cin.rdbuf();
    return out.str();
  }
  std::ifstream in(path_or_dash, std::ios::binary);
  if (!in) throw trc::Error("cannot open file: " + path_or_dash);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

// A tree argument is inline JSON when it starts with '{', otherwise a file.
trc::ModalTree load_tree_arg(const std::string& arg) {
  std::size_t k = 0;
  while (k < arg.size() && std::isspace(static_cast<unsigned char>(arg[k]))) ++k;
  if (k < arg.size() && arg[k] == '{') return trc::tree_from_string(arg);
  return trc::tree_from_string(read_input(arg));
}

// Dotted 1-based path, e.g. "1.2"; empty means the root.
trc::Position parse_pos(const std::string& text) {
  trc::Position pos;
  if (text.empty()) return pos;
  std::size_t at = 0;
  while (at <= text.size()) {
    std::size_t dot = text.find('.', at);
    std::string part = text.substr(at, dot == std::string::npos ? std::string::npos : dot - at);
    if (part.empty() || part.find_first_not_of("0123456789") != std::string::npos)
      throw trc::ParseError("bad position component '" + part + "'", at);
    unsigned long long v = std::stoull(part);
    if (v == 0 || v > 0xffffffffull)
      throw trc::ParseError("position components are 1-based 32-bit naturals", at);
    pos.push_back(static_cast<std::uint32_t>(v));
    if (dot == std::string::npos) break;
    at = dot + 1;
  }
  return pos;
}

json trace_to_json_obj(const trc::Trace& tr) {
  json steps = json::array();
  for (const trc::RuleInstance& r : tr.steps) steps.push_back(trc::instance_to_json(r));
  return json{{"initial", trc::tree_to_json(tr.initial)}, {"steps", std::move(steps)}};
}

std::vector<std::size_t> stage_bounds_of(const trc::NormalTrace& nt) {
  std::vector<std::size_t> b;
  std::size_t acc = 0;
  for (const auto* v : {&nt.replicative, &nt.modal, &nt.decreasing, &nt.atomic, &nt.structural}) {
    acc += v->size();
    b.push_back(acc);
  }
  return b;
}

int run_tree(const std::string& text, bool as_json) {
  (void)as_json;  // the native output is already JSON
  trc::Formula f = trc::parse(text);
  std::cout << trc::tree_to_string(trc::to_tree(f)) << "\n";
  return 0;
}

int run_formula(const std::string& arg, bool as_json) {
  trc::ModalTree t = load_tree_arg(arg);
  std::string printed = trc::print(trc::to_formula(t));
  if (as_json)
    std::cout << json{{"formula", printed}}.dump() << "\n";
  else
    std::cout << printed << "\n";
  return 0;
}

struct ApplyArgs {
  std::string tree;
  std::string rule;
  std::string pos;
  std::uint32_t i = 0;
  std::uint32_t j = 0;
  std::uint64_t beta = 0;
  bool json_out = false;
};

int run_apply(const ApplyArgs& a) {
  trc::ModalTree t = load_tree_arg(a.tree);
  trc::RuleInstance r;
  r.kind = trc::rule_kind_from_name(a.rule);
  r.pos = parse_pos(a.pos);
  r.i = a.i;
  r.j = a.j;
  r.beta = a.beta;
  trc::ModalTree out = trc::apply(t, r);
  if (a.json_out)
    std::cout << json{{"tree", trc::tree_to_json(out)}}.dump() << "\n";
  else
    std::cout << trc::tree_to_string(out) << "\n";
  return 0;
}

struct DeriveArgs {
  std::string phi, psi;
  std::uint64_t max_nodes = 0;
  std::uint64_t max_steps = 64;
  std::uint64_t max_frontier = 200000;
  bool normalized = false;
  bool json_out = false;
};

int run_derive(const DeriveArgs& a) {
  trc::ModalTree start = trc::to_tree(trc::parse(a.phi));
  trc::ModalTree goal = trc::to_tree(trc::parse(a.psi));

  if (auto cert = trc::refutation_certificate(start, goal)) {
    const char* kind =
        cert->kind == trc::RefutationCertificate::Kind::MissingAtoms ? "missing-atoms"
                                                                     : "label-excess";
    if (a.json_out)
      std::cout << json{{"status", "refuted"},
                        {"certificate", {{"kind", kind}, {"detail", cert->detail}}}}
                       .dump()
                << "\n";
    else
      std::cerr << "refuted: " << cert->detail << "\n";
    return 2;
  }

  trc::SearchBudget b;
  b.max_nodes = a.max_nodes;
  b.max_steps = a.max_steps;
  b.max_frontier = a.max_frontier;
  trc::SearchOptions opts;
  opts.normalized = a.normalized;
  trc::SearchOutcome out = trc::reachable(start, goal, b, opts);

  switch (out.status) {
    case trc::SearchStatus::Derivable:
      if (a.json_out)
        std::cout << json{{"status", "derivable"},
                          {"steps", out.trace.steps.size()},
                          {"trace", trace_to_json_obj(out.trace)}}
                         .dump()
                  << "\n";
      else {
        std::cerr << "derivable (" << counted(out.trace.steps.size(), "step") << ")\n";
        std::cout << trc::trace_to_jsonl(out.trace);
      }
      return 0;
    case trc::SearchStatus::NotDerivableWithinBudget:
      if (a.json_out)
        std::cout << json{{"status", "not-derivable-within-budget"}}.dump() << "\n";
      else
        std::cerr << "not derivable within budget\n";
      return 1;
    case trc::SearchStatus::Exhausted:
    default: {
      const char* dim = out.dim == trc::BudgetDim::Steps ? "steps" : "frontier";
      if (a.json_out)
        std::cout << json{{"status", "exhausted"}, {"dimension", dim}}.dump() << "\n";
      else
        std::cerr << "budget exhausted (" << dim << ")\n";
      return 3;
    }
  }
}

struct CheckArgs {
  std::string trace;
  std::string expect;  // optional tree arg
  bool json_out = false;
};

int run_check(const CheckArgs& a) {
  trc::Trace tr = trc::trace_from_jsonl(read_input(a.trace));
  trc::ModalTree cur = tr.initial;
  for (std::size_t k = 0; k < tr.steps.size(); ++k) {
    try {
      cur = trc::apply(cur, tr.steps[k]);
    } catch (const trc::Error& e) {
      if (a.json_out)
        std::cout << json{{"ok", false}, {"failed_step", k + 1}, {"error", e.what()}}.dump()
                  << "\n";
      else
        std::cerr << "step " << (k + 1) << " failed: " << e.what() << "\n";
      return 1;
    }
  }
  if (!a.expect.empty()) {
    trc::ModalTree want = load_tree_arg(a.expect);
    if (cur != want) {
      if (a.json_out)
        std::cout << json{{"ok", false},
                          {"error", "endpoint mismatch"},
                          {"endpoint", trc::tree_to_json(cur)}}
                         .dump()
                  << "\n";
      else
        std::cerr << "endpoint mismatch: got " << trc::tree_to_string(cur) << "\n";
      return 1;
    }
  }
  if (a.json_out)
    std::cout << json{{"ok", true},
                      {"steps", tr.steps.size()},
                      {"endpoint", trc::tree_to_json(cur)}}
                     .dump()
              << "\n";
  else
    std::cout << "ok: " << counted(tr.steps.size(), "step") << ", endpoint "
              << trc::tree_to_string(cur) << "\n";
  return 0;
}

struct NormalizeArgs {
  std::string trace;
  std::uint64_t max_swaps = 1000000;
  bool json_out = false;
};

int run_normalize(const NormalizeArgs& a) {
  trc::Trace tr = trc::trace_from_jsonl(read_input(a.trace));
  trc::NormalizeOptions opts;
  opts.max_swaps = a.max_swaps;
  trc::NormalizeResult r = trc::normalize(tr, opts);
  if (r.status == trc::NormalizeStatus::SwapBudgetExhausted) {
    if (a.json_out)
      std::cout << json{{"status", "swap-budget-exhausted"}, {"swaps_used", r.swaps_used}}.dump()
                << "\n";
    else
      std::cerr << "swap budget exhausted after " << counted(r.swaps_used, "swap") << "\n";
    return 3;
  }
  if (a.json_out) {
    trc::Trace flat = trc::to_trace(r.normal);
    std::cout << json{{"status", "ok"},
                      {"swaps_used", r.swaps_used},
                      {"stage_bounds", stage_bounds_of(r.normal)},
                      {"trace", trace_to_json_obj(flat)}}
                     .dump()
              << "\n";
  } else {
    std::cerr << "normalized (" << counted(r.swaps_used, "swap") << ")\n";
    std::cout << trc::normal_trace_to_jsonl(r.normal);
  }
  return 0;
}

struct RandomArgs {
  std::uint64_t nodes = 6;
  std::uint64_t max_atoms = 2;
  std::uint64_t atoms = 2;
  std::uint64_t labels = 2;
  std::uint64_t seed = 0;
  std::uint64_t trace_steps = 0;
  bool json_out = false;
};

int run_random(const RandomArgs& a) {
  if (a.labels == 0) throw trc::Error("--labels must be at least 1");
  if (a.nodes == 0) throw trc::Error("--nodes must be at least 1");
  std::mt19937_64 gen(a.seed);
  trc::RandomTreeParams params;
  params.max_nodes = a.nodes;
  params.max_atoms_per_node = a.max_atoms;
  params.num_atom_names = a.atoms;
  params.max_label = a.labels - 1;
  trc::ModalTree t = trc::random_tree(gen, params);
  if (a.trace_steps == 0) {
    if (a.json_out)
      std::cout << json{{"tree", trc::tree_to_json(t)}}.dump() << "\n";
    else
      std::cout << trc::tree_to_string(t) << "\n";
    return 0;
  }
  trc::Trace tr = trc::random_trace(gen, t, a.trace_steps);
  if (a.json_out)
    std::cout << json{{"trace", trace_to_json_obj(tr)}}.dump() << "\n";
  else
    std::cout << trc::trace_to_jsonl(tr);
  return 0;
}

int run_repl(const std::string& formula_text) {
  trc::ModalTree cur = trc::to_tree(trc::parse(formula_text));
  std::vector<trc::ModalTree> undo;
  for (;;) {
    std::cout << trc::tree_to_string(cur) << "\n";
    std::vector<trc::RuleInstance> insts = trc::enumerate_instances(cur);
    for (std::size_t k = 0; k < insts.size(); ++k)
      std::cout << "  [" << (k + 1) << "] " << trc::print_instance(insts[k]) << "\n";
    std::cout << "> " << std::flush;
    std::string line;
    if (!std::getline(std::cin, line)) break;
    std::size_t b = line.find_first_not_of(" \t");
    std::size_t e = line.find_last_not_of(" \t");
    line = b == std::string::npos ? "" : line.substr(b, e - b + 1);
    if (line.empty() || line == "l" || line == "list") continue;
    if (line == "q" || line == "quit") break;
    if (line == "u" || line == "undo") {
      if (undo.empty()) {
        std::cout << "nothing to undo\n";
      } else {
        cur = undo.back();
        undo.pop_back();
      }
      continue;
    }
    if (line.find_first_not_of("0123456789") != std::string::npos) {
      std::cout << "enter an instance number, u(ndo), l(ist), or q(uit)\n";
      continue;
    }
    unsigned long long k = std::stoull(line);
    if (k == 0 || k > insts.size()) {
      std::cout << "no such instance\n";
      continue;
    }
    undo.push_back(cur);
    cur = trc::apply(cur, insts[k - 1]);
  }
  return 0;
}

struct SelftestRow {
  std::string name;
  bool ok = false;
  std::uint64_t count = 0;
};

int run_selftest(bool as_json) {
  std::vector<SelftestRow> rows;

  // 1. Sequent prover examples on a subformula-closure universe.
  {
    SelftestRow row{"prover-examples", true, 0};
    using trc::conj;
    using trc::diamond;
    trc::Formula p = trc::atom("p"), q = trc::atom("q");
    trc::Formula dist_l = diamond(1, conj(p, q));
    trc::Formula dist_r = conj(diamond(1, p), diamond(1, q));
    trc::Universe u = trc::Universe::closure({dist_l, dist_r});
    trc::Saturation sat = trc::saturate(u, trc::Logic::KPlus);
    auto expect = [&](const trc::Formula& l, const trc::Formula& r) {
      ++row.count;
      if (!sat.derives(l, r)) row.ok = false;
    };
    for (const trc::Formula& f : u.members) expect(f, f);
    expect(conj(p, q), p);
    expect(conj(p, q), q);
    expect(dist_l, dist_r);
    rows.push_back(row);
  }

  // 2. Every recorded proof on a small universe compiles and replays.
  trc::Universe small = trc::Universe::bounded({"p"}, {0, 1}, 2, 5);
  trc::Saturation rc = trc::saturate(small, trc::Logic::RC);
  {
    SelftestRow row{"proof-compilation", true, 0};
    for (auto [a, b] : rc.pairs()) {
      auto d = rc.derivation(a, b);
      if (!d) {
        row.ok = false;
        break;
      }
      trc::Trace tr = trc::compile_derivation(*d);
      ++row.count;
      if (tr.initial != trc::to_tree(small.members[a]) ||
          trc::trace_endpoint(tr) != trc::to_tree(small.members[b])) {
        row.ok = false;
        break;
      }
    }
    rows.push_back(row);
  }

  // 3. Recorded proofs are locally valid at every node.
  {
    SelftestRow row{"proof-validity", true, 0};
    for (auto [a, b] : rc.pairs()) {
      auto d = rc.derivation(a, b);
      std::vector<const trc::Derivation*> stack{d.get()};
      while (!stack.empty()) {
        const trc::Derivation* n = stack.back();
        stack.pop_back();
        ++row.count;
        if (!trc::locally_valid(*n)) row.ok = false;
        for (const auto& pr : n->premises) stack.push_back(pr.get());
      }
    }
    rows.push_back(row);
  }

  // 4. The row-wise oracle matches full saturation row by row.
  {
    SelftestRow row{"row-oracle-agreement", true, 0};
    trc::RowOracle ro(small, trc::Logic::RC);
    for (std::uint32_t a = 0; a < small.members.size(); ++a) {
      std::vector<std::uint32_t> got = ro.row(small.members[a]);
      std::vector<std::uint32_t> want;
      for (std::uint32_t b = 0; b < small.members.size(); ++b)
        if (rc.derives_ids(a, b)) want.push_back(b);
      ++row.count;
      if (got != want) row.ok = false;
    }
    rows.push_back(row);
  }

  // 5. Search and the brute-force explorer agree on pinned pairs.
  {
    SelftestRow row{"search-vs-brute", true, 0};
    trc::Formula p = trc::atom("p");
    auto agree = [&](const trc::ModalTree& s, const trc::ModalTree& g, bool expected) {
      ++row.count;
      bool brute = trc::brute_reachability(s, g, 6, trc::node_count(s) + trc::node_count(g) + 4);
      bool search = trc::reachable(s, g).status == trc::SearchStatus::Derivable;
      if (brute != expected || search != expected) row.ok = false;
    };
    trc::ModalTree dd = trc::to_tree(trc::diamond(1, trc::diamond(1, p)));
    trc::ModalTree d1 = trc::to_tree(trc::diamond(1, p));
    trc::ModalTree d0 = trc::to_tree(trc::diamond(0, p));
    agree(dd, d1, true);
    agree(d1, d1, true);
    agree(d0, d1, false);
    rows.push_back(row);
  }

  bool all_ok = true;
  for (const SelftestRow& r : rows) all_ok = all_ok && r.ok;
  if (as_json) {
    json checks = json::array();
    for (const SelftestRow& r : rows)
      checks.push_back({{"name", r.name}, {"ok", r.ok}, {"checks", r.count}});
    std::cout << json{{"ok", all_ok}, {"rows", std::move(checks)}}.dump() << "\n";
  } else {
    for (const SelftestRow& r : rows) {
      std::cout << "  " << r.name;
      for (std::size_t k = r.name.size(); k < 24; ++k) std::cout << ' ';
      std::cout << (r.ok ? "ok" : "FAIL") << "  (" << r.count << " checks)\n";
    }
    std::cout << "selftest: " << (all_ok ? "PASS" : "FAIL") << "\n";
  }
  return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tree rewriting engine for strictly positive modal logic"};
  app.require_subcommand(1);
  int rc = 0;

  std::string tree_formula;
  bool tree_json = false;
  CLI::App* cmd_tree = app.add_subcommand("tree", "Convert a formula to its tree (JSON)");
  cmd_tree->add_option("formula", tree_formula, "Formula text, e.g. \"<1>p & q\"")->required();
  cmd_tree->add_flag("--json", tree_json, "Machine-readable output");
  cmd_tree->callback([&] { rc = run_tree(tree_formula, tree_json); });

  std::string formula_tree;
  bool formula_json = false;
  CLI::App* cmd_formula = app.add_subcommand("formula", "Convert a tree (JSON file or inline) to a formula");
  cmd_formula->add_option("tree", formula_tree, "Tree JSON file, '-' for stdin, or inline JSON")->required();
  cmd_formula->add_flag("--json", formula_json, "Machine-readable output");
  cmd_formula->callback([&] { rc = run_formula(formula_tree, formula_json); });

  ApplyArgs apply_args;
  CLI::App* cmd_apply = app.add_subcommand("apply", "Apply one rewrite rule to a tree");
  cmd_apply->add_option("tree", apply_args.tree, "Tree JSON file, '-' for stdin, or inline JSON")->required();
  cmd_apply->add_option("--rule", apply_args.rule,
                        "Rule name: RhoPlus, RhoMinus, Sigma, PiPlus, PiMinus, Four, Lambda, J")
      ->required();
  cmd_apply->add_option("--pos", apply_args.pos, "Node position as dotted 1-based path, e.g. 1.2 (default: root)");
  cmd_apply->add_option("--i", apply_args.i, "First rule index");
  cmd_apply->add_option("--j", apply_args.j, "Second rule index");
  cmd_apply->add_option("--beta", apply_args.beta, "New label (Lambda only)");
  cmd_apply->add_flag("--json", apply_args.json_out, "Machine-readable output");
  cmd_apply->callback([&] { rc = run_apply(apply_args); });

  DeriveArgs derive_args;
  CLI::App* cmd_derive = app.add_subcommand("derive", "Search for a rewrite run between two formulas' trees");
  cmd_derive->add_option("phi", derive_args.phi, "Start formula")->required();
  cmd_derive->add_option("psi", derive_args.psi, "Goal formula")->required();
  cmd_derive->add_option("--max-nodes", derive_args.max_nodes, "Node cap per intermediate tree (0 = auto)");
  cmd_derive->add_option("--max-steps", derive_args.max_steps, "Depth cap");
  cmd_derive->add_option("--max-frontier", derive_args.max_frontier, "Stored-state cap");
  cmd_derive->add_flag("--normalized", derive_args.normalized, "Expand successors in stage order");
  cmd_derive->add_flag("--json", derive_args.json_out, "Machine-readable output");
  cmd_derive->callback([&] { rc = run_derive(derive_args); });

  CheckArgs check_args;
  CLI::App* cmd_check = app.add_subcommand("check", "Replay a trace file and report the verdict");
  cmd_check->add_option("trace", check_args.trace, "Trace JSONL file, or '-' for stdin")->required();
  cmd_check->add_option("--expect", check_args.expect, "Expected endpoint tree (JSON file or inline)");
  cmd_check->add_flag("--json", check_args.json_out, "Machine-readable output");
  cmd_check->callback([&] { rc = run_check(check_args); });

  NormalizeArgs norm_args;
  CLI::App* cmd_norm = app.add_subcommand("normalize", "Reorder a trace into stage order");
  cmd_norm->add_option("trace", norm_args.trace, "Trace JSONL file, or '-' for stdin")->required();
  cmd_norm->add_option("--max-swaps", norm_args.max_swaps, "Adjacent-swap budget");
  cmd_norm->add_flag("--json", norm_args.json_out, "Machine-readable output");
  cmd_norm->callback([&] { rc = run_normalize(norm_args); });

  RandomArgs random_args;
  CLI::App* cmd_random = app.add_subcommand("random", "Generate a reproducible random tree or trace");
  cmd_random->add_option("--nodes", random_args.nodes, "Maximum node count");
  cmd_random->add_option("--max-atoms", random_args.max_atoms, "Maximum atoms per node");
  cmd_random->add_option("--atoms", random_args.atoms, "Number of atom names");
  cmd_random->add_option("--labels", random_args.labels, "Number of labels (drawn from 0..L-1)");
  cmd_random->add_option("--seed", random_args.seed, "Random seed");
  cmd_random->add_option("--trace-steps", random_args.trace_steps,
                         "Emit a random trace of up to this many steps (0 = tree only)");
  cmd_random->add_flag("--json", random_args.json_out, "Machine-readable output");
  cmd_random->callback([&] { rc = run_random(random_args); });

  std::string repl_formula;
  bool repl_json = false;
  CLI::App* cmd_repl = app.add_subcommand("repl", "Interactively step a tree through enumerated instances");
  cmd_repl->add_option("formula", repl_formula, "Starting formula")->required();
  cmd_repl->add_flag("--json", repl_json, "Accepted for uniformity; trees already print as JSON");
  cmd_repl->callback([&] { rc = run_repl(repl_formula); });

  bool selftest_json = false;
  CLI::App* cmd_selftest = app.add_subcommand("selftest", "Run the built-in oracle cross-checks");
  cmd_selftest->add_flag("--json", selftest_json, "Machine-readable output");
  cmd_selftest->callback([&] { rc = run_selftest(selftest_json); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const trc::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return rc;
}
