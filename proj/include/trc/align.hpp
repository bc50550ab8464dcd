#pragma once

#include "trc/rewrite.hpp"

namespace trc {

// For trees with equal canonical forms, emits a sequence of Sigma / RhoPlus /
// RhoMinus steps rewriting `from` into exactly `to`: children are matched
// greedily per node by (label, canonical form) using Sigma transpositions,
// matched subtrees are aligned recursively, and each node's atom list is
// rearranged by duplicate-to-front / delete steps. Throws ReplayMismatch if
// the canonical forms differ.
std::vector<RuleInstance> align_to(const ModalTree& from, const ModalTree& to);

// Sigma-only variant used by swap repair: `from` and `to` must differ only in
// sibling order (equal atoms everywhere, children equal as multisets of exact
// subtrees, recursively already identical once matched). Throws ReplayMismatch
// when no exact matching exists.
std::vector<RuleInstance> sigma_diff(const ModalTree& from, const ModalTree& to);

}  // namespace trc
