#pragma once

#include "trc/rewrite.hpp"

namespace trc {

// A trace split into the five stages of a normal rewriting sequence.
struct NormalTrace {
  ModalTree initial;
  std::vector<RuleInstance> replicative;  // PiPlus
  std::vector<RuleInstance> modal;        // Lambda, J
  std::vector<RuleInstance> decreasing;   // PiMinus, Four
  std::vector<RuleInstance> atomic;       // RhoPlus, RhoMinus
  std::vector<RuleInstance> structural;   // Sigma
};

// Concatenates the stages back into a flat trace.
Trace to_trace(const NormalTrace& nt);

// Splits a trace whose kind sequence is already staged; throws
// SideConditionViolated otherwise.
NormalTrace split_stages(const Trace& tr);

// True iff the kind sequence is (PiPlus)* (Lambda|J)* (PiMinus|Four)*
// (RhoPlus|RhoMinus)* (Sigma)*.
bool is_normal(const std::vector<RuleInstance>& steps);
bool is_normal(const Trace& tr);

// Inverts one adjacent inversion: r1 then r2 apply to t with
// stage(r1.kind) > stage(r2.kind). Returns a replacement sequence replaying
// from t to the same tree, whose kinds follow the corresponding commutation
// shape (mover copies first, then r1's kind, then any Sigma corrections).
// Throws NotAnInversion when the stages are not inverted, and ReplayMismatch
// if a case-table bug produces a wrong endpoint (never silently accepted).
std::vector<RuleInstance> swap_adjacent(const ModalTree& t, const RuleInstance& r1,
                                        const RuleInstance& r2);

// Reorders a PiPlus-only run into nondecreasing position depth using the
// depth-level permutation clauses (duplication of the touched branch splits
// one instance into two). Endpoint is preserved exactly; validated by replay.
std::vector<RuleInstance> pi_plus_reorder(const ModalTree& t, std::vector<RuleInstance> steps);

// Width-level permutation of two same-node duplications a then b, applicable
// when 1 < b.i and b.i != a.i + 1: returns
// [PiPlus(p, b.i - 1), PiPlus(p, a.i + 1), Sigma(p, 1, 2)].
std::vector<RuleInstance> pi_plus_width_swap(const ModalTree& t, const RuleInstance& a,
                                             const RuleInstance& b);

struct NormalizeOptions {
  std::uint64_t max_swaps = 1'000'000;
};

enum class NormalizeStatus { Ok, SwapBudgetExhausted };

struct NormalizeResult {
  NormalizeStatus status = NormalizeStatus::Ok;
  std::uint64_t swaps_used = 0;
  NormalTrace normal;  // valid only when status == Ok
};

// Insertion normalization: steps are appended one at a time and commuted
// leftward past later stages with swap_adjacent until no adjacent inversion
// remains; emitted Sigma corrections bubble rightward the same way. The
// result replays from tr.initial to trace_endpoint(tr) exactly.
NormalizeResult normalize(const Trace& tr, const NormalizeOptions& opts = {});

}  // namespace trc
