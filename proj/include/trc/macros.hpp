#pragma once

#include "trc/rewrite.hpp"

namespace trc {

// Compound rewrites built from the base rules. Every macro replays its
// result internally and throws ReplayMismatch if the construction is broken,
// so callers can rely on the documented endpoints.

// Rearranges the atom list of the node at p: the new k-th atom is the old
// order[k-1]-th one. order must be a permutation of 1..n. Uses n duplications
// to the front in reverse order followed by n trailing deletions.
Trace permute_atoms(const ModalTree& t, const Position& p, const std::vector<std::uint32_t>& order);

// t to sum(t, t): root atoms then root children duplicated in place.
Trace duplicate_self(const ModalTree& t);

// sum(a, b) to a: deletes b's root atoms and children.
Trace weaken_to_left(const ModalTree& a, const ModalTree& b);

// sum(a, b) to b: deletes a's root atoms and children.
Trace weaken_to_right(const ModalTree& a, const ModalTree& b);

// sum(tr.initial, b) to sum(endpoint, b): the steps act on the left summand
// verbatim (left root lists come first, so indices and positions carry over).
Trace lift_sum_left(const Trace& tr, const ModalTree& b);

// sum(a, tr.initial) to sum(a, endpoint): root-level indices and leading
// position components shift by a's root list sizes.
Trace lift_sum_right(const Trace& tr, const ModalTree& a);

// sum(a, b) to sum(b, a): atom rotation plus adjacent child swaps.
Trace sum_swap(const ModalTree& a, const ModalTree& b);

// For tr2: t to u and tr3: t to v with the same t, builds t to sum(u, v):
// duplicate_self, rewrite the left copy to u, swap, rewrite the left copy
// to v, swap back.
Trace pair_traces(const Trace& tr2, const Trace& tr3);

// For tr1: a to a' and tr2: b to b', builds sum(a, b) to sum(a', b').
Trace sum_traces(const Trace& tr1, const Trace& tr2);

}  // namespace trc
