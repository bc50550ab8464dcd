#include "trc/search.hpp"

#include <algorithm>
#include <limits>
#include <unordered_map>
#include <unordered_set>

#include "trc/align.hpp"
#include "trc/embed.hpp"

namespace trc {

namespace {

constexpr std::size_t kRoot = std::numeric_limits<std::size_t>::max();

struct PruneContext {
  std::uint64_t max_nodes = 0;
  std::uint64_t atom_len_cap = 0;
  std::vector<std::string> goal_names;        // distinct atom names the goal needs
  std::vector<std::string> goal_root_names;   // ... needed in the root node itself
  std::vector<std::string> goal_below_names;  // ... needed somewhere below the root
  bool goal_has_edges = false;
  Label goal_max_label = 0;
};

std::unordered_set<std::string> name_set(const ModalTree& t) {
  std::vector<std::string> names = atom_multiset(t);
  return {names.begin(), names.end()};
}

// Atom names occurring strictly below the root node. No rule moves an atom
// between nodes and the root node itself is never displaced, so both this set
// and the root's own name set can only shrink along a trace.
std::unordered_set<std::string> below_name_set(const ModalTree& t) {
  std::unordered_set<std::string> out;
  for (const Edge& e : t.children)
    for (const std::string& n : atom_multiset(e.child)) out.insert(n);
  return out;
}

bool covers(const std::unordered_set<std::string>& have, const std::vector<std::string>& need) {
  for (const std::string& n : need)
    if (!have.count(n)) return false;
  return true;
}

// Dead-state tests, each backed by a monotone invariant: node counts never
// grow past the cap usefully, atom names are never introduced (globally, in
// the root node, or in the forest below it), the maximum label never
// increases, and edges never appear from nothing.
bool admissible(const ModalTree& u, const PruneContext& pc) {
  if (node_count(u) > pc.max_nodes) return false;
  if (max_atom_list_length(u) > pc.atom_len_cap) return false;
  if (!pc.goal_names.empty() && !covers(name_set(u), pc.goal_names)) return false;
  if (!pc.goal_root_names.empty() &&
      !covers({u.atoms.begin(), u.atoms.end()}, pc.goal_root_names))
    return false;
  if (!pc.goal_below_names.empty() && !covers(below_name_set(u), pc.goal_below_names))
    return false;
  if (pc.goal_has_edges) {
    auto [has, ml] = max_label(u);
    if (!has || ml < pc.goal_max_label) return false;
  }
  return true;
}

struct Node {
  ModalTree tree;
  std::size_t parent = kRoot;
  RuleInstance step;
};

}  // namespace

SearchOutcome reachable(const ModalTree& start, const ModalTree& goal, const SearchBudget& b,
                        const SearchOptions& opts, const Trace* seed) {
  if (seed != nullptr) {
    try {
      if (seed->initial == start && trace_endpoint(*seed) == goal) {
        SearchOutcome out;
        out.status = SearchStatus::Derivable;
        out.trace = *seed;
        return out;
      }
    } catch (const Error&) {
      // a seed that does not replay is merely ignored
    }
  }

  SearchBudget eb = b;
  if (eb.max_nodes == 0) eb.max_nodes = node_count(start) + node_count(goal) + 8;

  PruneContext pc;
  pc.max_nodes = eb.max_nodes;
  pc.atom_len_cap = std::max(max_atom_list_length(start), max_atom_list_length(goal)) + 1;
  for (const std::string& n : name_set(goal)) pc.goal_names.push_back(n);
  std::sort(pc.goal_names.begin(), pc.goal_names.end());
  for (const std::string& n :
       std::unordered_set<std::string>{goal.atoms.begin(), goal.atoms.end()})
    pc.goal_root_names.push_back(n);
  std::sort(pc.goal_root_names.begin(), pc.goal_root_names.end());
  for (const std::string& n : below_name_set(goal)) pc.goal_below_names.push_back(n);
  std::sort(pc.goal_below_names.begin(), pc.goal_below_names.end());
  auto [gh, gl] = max_label(goal);
  pc.goal_has_edges = gh;
  pc.goal_max_label = gl;

  ModalTree goal_canon = canonical_form(goal);

  std::vector<Node> nodes;
  std::unordered_map<ModalTree, std::size_t, TreeHash> seen;
  nodes.push_back(Node{start, kRoot, {}});
  ModalTree start_canon = canonical_form(start);
  bool start_is_goal = start_canon == goal_canon;
  seen.emplace(std::move(start_canon), 0);

  auto finish = [&](std::size_t idx) {
    std::vector<RuleInstance> steps;
    for (std::size_t k = idx; nodes[k].parent != kRoot; k = nodes[k].parent)
      steps.push_back(nodes[k].step);
    std::reverse(steps.begin(), steps.end());
    for (RuleInstance& s : align_to(nodes[idx].tree, goal)) steps.push_back(std::move(s));
    SearchOutcome out;
    out.status = SearchStatus::Derivable;
    out.trace = Trace{start, std::move(steps)};
    if (trace_endpoint(out.trace) != goal)
      throw ReplayMismatch("reachable: reconstructed trace misses the goal");
    return out;
  };

  if (start_is_goal) return finish(0);

  std::vector<std::size_t> frontier{0};
  for (std::uint64_t depth = 0; depth < eb.max_steps && !frontier.empty(); ++depth) {
    std::vector<std::size_t> next;
    for (std::size_t idx : frontier) {
      ModalTree cur = nodes[idx].tree;  // copy: nodes may reallocate below
      std::vector<RuleInstance> insts = enumerate_instances(cur);
      if (opts.normalized)
        std::stable_sort(insts.begin(), insts.end(), [](const RuleInstance& x, const RuleInstance& y) {
          return stage_of(x.kind) < stage_of(y.kind);
        });
      for (const RuleInstance& inst : insts) {
        ModalTree u = apply(cur, inst);
        if (!admissible(u, pc)) continue;
        ModalTree uc = canonical_form(u);
        if (seen.count(uc)) continue;
        bool is_goal = uc == goal_canon;
        nodes.push_back(Node{std::move(u), idx, inst});
        std::size_t nidx = nodes.size() - 1;
        seen.emplace(std::move(uc), nidx);
        if (is_goal) return finish(nidx);
        if (seen.size() > eb.max_frontier) {
          SearchOutcome out;
          out.status = SearchStatus::Exhausted;
          out.dim = BudgetDim::Frontier;
          return out;
        }
        next.push_back(nidx);
      }
    }
    frontier = std::move(next);
  }

  SearchOutcome out;
  if (frontier.empty()) {
    out.status = SearchStatus::NotDerivableWithinBudget;
  } else {
    out.status = SearchStatus::Exhausted;
    out.dim = BudgetDim::Steps;
  }
  return out;
}

SearchOutcome derives(const Formula& phi, const Formula& psi, const SearchBudget& b,
                      const SearchOptions& opts, const Trace* seed) {
  return reachable(to_tree(phi), to_tree(psi), b, opts, seed);
}

std::optional<RefutationCertificate> refutation_certificate(const ModalTree& start,
                                                            const ModalTree& goal) {
  std::unordered_set<std::string> have = name_set(start);
  std::vector<std::string> missing;
  for (const std::string& n : name_set(goal))
    if (!have.count(n)) missing.push_back(n);
  if (!missing.empty()) {
    std::sort(missing.begin(), missing.end());
    std::string detail = "goal atoms absent from start:";
    for (const std::string& n : missing) detail += " " + n;
    return RefutationCertificate{RefutationCertificate::Kind::MissingAtoms, std::move(detail)};
  }
  auto [sh, sl] = max_label(start);
  auto [gh, gl] = max_label(goal);
  if (gh && !sh)
    return RefutationCertificate{RefutationCertificate::Kind::LabelExcess,
                                 "goal has edges but start has none"};
  if (gh && gl > sl)
    return RefutationCertificate{
        RefutationCertificate::Kind::LabelExcess,
        "goal needs label " + std::to_string(gl) + " but start's maximum is " +
            std::to_string(sl)};
  return std::nullopt;
}

}  // namespace trc
