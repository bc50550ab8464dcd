#pragma once

#include <optional>
#include <string>

#include "trc/rewrite.hpp"
#include "trc/tree.hpp"

namespace trc {

struct SearchBudget {
  // 0 means the default: node_count(start) + node_count(goal) + 8.
  std::uint64_t max_nodes = 0;
  std::uint64_t max_steps = 64;
  std::uint64_t max_frontier = 200'000;
};

enum class SearchStatus {
  Derivable,
  NotDerivableWithinBudget,  // state space under the budget exhausted, goal absent
  Exhausted,                 // a budget dimension ran out with frontier remaining
};

enum class BudgetDim { Steps, Frontier };

struct SearchOutcome {
  SearchStatus status = SearchStatus::NotDerivableWithinBudget;
  Trace trace;               // Derivable only: replays from start to exactly goal
  BudgetDim dim = BudgetDim::Steps;  // Exhausted only
};

struct SearchOptions {
  // Expand successors in stage order (PiPlus, then modal, decreasing, atomic,
  // Sigma) instead of enumeration order.
  bool normalized = false;
};

// Breadth-first search over canonical forms from start. Successor pruning
// (all sound): intermediate node count <= max_nodes; goal's atom-name set
// must stay available; goal's maximum edge label must stay available; atom
// lists capped at one beyond the longest in start or goal. On canonical hit
// the trace is completed with an explicit Sigma/Rho alignment suffix so it
// ends at the goal exactly, then replay-verified.
//
// A non-null seed that replays from start to exactly goal short-circuits the
// search: the budget governs exploration, not externally supplied witnesses.
SearchOutcome reachable(const ModalTree& start, const ModalTree& goal, const SearchBudget& b = {},
                        const SearchOptions& opts = {}, const Trace* seed = nullptr);

// reachable over the tree embeddings of the two formulas.
SearchOutcome derives(const Formula& phi, const Formula& psi, const SearchBudget& b = {},
                      const SearchOptions& opts = {}, const Trace* seed = nullptr);

struct RefutationCertificate {
  enum class Kind {
    MissingAtoms,  // goal uses an atom name absent from start
    LabelExcess,   // goal needs an edge label above anything in start
  };
  Kind kind = Kind::MissingAtoms;
  std::string detail;
};

// Budget-independent refutation from the monotone invariants: no rule
// introduces an atom name, and the maximum edge label never increases (nor
// can edges appear in an edgeless tree). nullopt when no invariant separates
// the pair and search is required.
std::optional<RefutationCertificate> refutation_certificate(const ModalTree& start,
                                                            const ModalTree& goal);

}  // namespace trc
