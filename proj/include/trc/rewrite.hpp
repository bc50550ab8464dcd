#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "trc/tree.hpp"

namespace trc {

// The eight node rewrite rules. Names follow the engine's vocabulary:
//   RhoPlus   duplicate atom i to the front of the node's atom list
//   RhoMinus  delete atom i
//   Sigma     swap children i and j (i != j)
//   PiPlus    duplicate child i to the front of the child list
//   PiMinus   delete child i
//   Four      collapse child i with its j-th grandchild when the two edge
//             labels are equal, keeping the grandchild's subtree
//   Lambda    lower the label of child i to beta (beta < current label)
//   J         append child j's edge to the end of child i's child list and
//             remove it from the node, when label(i) > label(j) and i != j
enum class RuleKind : std::uint8_t {
  RhoPlus,
  RhoMinus,
  Sigma,
  PiPlus,
  PiMinus,
  Four,
  Lambda,
  J,
};

std::string_view rule_name(RuleKind k);
// Throws ParseError on an unknown name.
RuleKind rule_kind_from_name(std::string_view name);

// Pipeline stage of each rule; normal traces have nondecreasing stages.
enum class Stage : std::uint8_t {
  Replicative = 0,  // PiPlus
  Modal = 1,        // Lambda, J
  Decreasing = 2,   // PiMinus, Four
  Atomic = 3,       // RhoPlus, RhoMinus
  Structural = 4,   // Sigma
};

Stage stage_of(RuleKind k);

// A rule applied at a node. Fields beyond pos are rule-specific:
//   RhoPlus/RhoMinus/PiPlus/PiMinus: i (1-based list index)
//   Sigma: i, j (distinct child indices)
//   Four: i (child), j (index into child i's child list)
//   Lambda: i (child), beta (new label)
//   J: i (receiving child), j (moved child)
struct RuleInstance {
  RuleKind kind = RuleKind::RhoPlus;
  Position pos;
  std::uint32_t i = 0;
  std::uint32_t j = 0;
  Label beta = 0;
};

bool operator==(const RuleInstance& a, const RuleInstance& b);
inline bool operator!=(const RuleInstance& a, const RuleInstance& b) { return !(a == b); }

std::string print_instance(const RuleInstance& r);

RuleInstance rho_plus(Position pos, std::uint32_t i);
RuleInstance rho_minus(Position pos, std::uint32_t i);
RuleInstance sigma(Position pos, std::uint32_t i, std::uint32_t j);
RuleInstance pi_plus(Position pos, std::uint32_t i);
RuleInstance pi_minus(Position pos, std::uint32_t i);
RuleInstance four(Position pos, std::uint32_t i, std::uint32_t j);
RuleInstance lambda(Position pos, std::uint32_t i, Label beta);
RuleInstance j_rule(Position pos, std::uint32_t i, std::uint32_t j);

// Applies r to t. Throws InvalidPosition / IndexOutOfRange /
// SideConditionViolated when r does not apply.
ModalTree apply(const ModalTree& t, const RuleInstance& r);

// Same rewrite without the copy, mutating t; every side condition is checked
// before t is touched.
void apply_in_place(ModalTree& t, const RuleInstance& r);

// True iff apply(t, r) would succeed.
bool applicable(const ModalTree& t, const RuleInstance& r);

// Every instance applicable to t, deterministically ordered: positions in
// preorder; at each node rules in declaration order (RhoPlus, RhoMinus,
// Sigma, PiPlus, PiMinus, Four, Lambda, J); indices ascending (Sigma with
// i < j; J over ordered pairs). Lambda is enumerated only with beta = 0 and
// beta = label - 1 (apply accepts any beta below the label).
std::vector<RuleInstance> enumerate_instances(const ModalTree& t);

// A rewrite run: initial tree plus rule steps.
struct Trace {
  ModalTree initial;
  std::vector<RuleInstance> steps;
};

// All intermediate trees [t0, ..., tn]; throws if some step does not apply.
std::vector<ModalTree> apply_trace(const Trace& tr);

// Final tree of the run.
ModalTree trace_endpoint(const Trace& tr);

// The same rule acting inside a larger tree: prefix prepended to its position.
RuleInstance shift_instance(const RuleInstance& r, const Position& prefix);

// Concatenation; requires trace_endpoint(a) == b.initial (ReplayMismatch).
Trace concat(Trace a, const Trace& b);

}  // namespace trc
