#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "trc/errors.hpp"
#include "trc/formula.hpp"

namespace trc {

// Address of a node: sequence of 1-based child indices from the root.
// The empty position is the root.
using Position = std::vector<std::uint32_t>;

std::string print_position(const Position& p);

struct Edge;

// Finite tree whose nodes carry an ordered list of atoms and an ordered list
// of labeled edges to subtrees.
struct ModalTree {
  std::vector<std::string> atoms;
  std::vector<Edge> children;
};

struct Edge {
  Label label = 0;
  ModalTree child;
};

bool operator==(const ModalTree& a, const ModalTree& b);
inline bool operator!=(const ModalTree& a, const ModalTree& b) { return !(a == b); }
bool operator==(const Edge& a, const Edge& b);
inline bool operator!=(const Edge& a, const Edge& b) { return !(a == b); }

// Total order (atoms, then children lexicographically); deterministic tie-break
// for canonical forms and enumeration.
int compare(const ModalTree& a, const ModalTree& b);

ModalTree leaf(std::vector<std::string> atoms = {});

// Longest edge path from the root; the single-node tree has height 0.
std::uint64_t height(const ModalTree& t);

// Number of nodes.
std::uint64_t node_count(const ModalTree& t);

// Root-merge: concatenates atom lists and child lists, left before right.
ModalTree sum(const ModalTree& a, const ModalTree& b);

// Fold of sum over the list starting from the empty tree.
ModalTree sum_list(const std::vector<ModalTree>& ts);

// All node addresses in preorder: the root first, then each child's positions
// prefixed by its index, children left to right.
std::vector<Position> positions(const ModalTree& t);

bool is_valid_position(const ModalTree& t, const Position& p);

// Node addressed by p. Throws InvalidPosition if p does not address a node.
const ModalTree& subtree_at(const ModalTree& t, const Position& p);

// Copy of t with the node at p replaced by s. Throws InvalidPosition.
ModalTree replace_at(const ModalTree& t, const Position& p, const ModalTree& s);

// 1-based list helpers shared by the rewrite rules. All throw IndexOutOfRange
// on indices outside 1..size.
template <typename T>
const T& get_at(const std::vector<T>& xs, std::size_t i) {
  if (i < 1 || i > xs.size()) throw IndexOutOfRange("index " + std::to_string(i) + " outside 1.." + std::to_string(xs.size()));
  return xs[i - 1];
}

template <typename T>
std::vector<T> erase_at(std::vector<T> xs, std::size_t i) {
  if (i < 1 || i > xs.size()) throw IndexOutOfRange("index " + std::to_string(i) + " outside 1.." + std::to_string(xs.size()));
  xs.erase(xs.begin() + static_cast<std::ptrdiff_t>(i - 1));
  return xs;
}

// Copies element i to the front; the original keeps its place (now at i+1).
template <typename T>
std::vector<T> dup_front(std::vector<T> xs, std::size_t i) {
  if (i < 1 || i > xs.size()) throw IndexOutOfRange("index " + std::to_string(i) + " outside 1.." + std::to_string(xs.size()));
  T copy = xs[i - 1];
  xs.insert(xs.begin(), std::move(copy));
  return xs;
}

template <typename T>
std::vector<T> set_at(std::vector<T> xs, std::size_t i, T v) {
  if (i < 1 || i > xs.size()) throw IndexOutOfRange("index " + std::to_string(i) + " outside 1.." + std::to_string(xs.size()));
  xs[i - 1] = std::move(v);
  return xs;
}

template <typename T>
std::vector<T> swap_at(std::vector<T> xs, std::size_t i, std::size_t j) {
  if (i < 1 || i > xs.size()) throw IndexOutOfRange("index " + std::to_string(i) + " outside 1.." + std::to_string(xs.size()));
  if (j < 1 || j > xs.size()) throw IndexOutOfRange("index " + std::to_string(j) + " outside 1.." + std::to_string(xs.size()));
  std::swap(xs[i - 1], xs[j - 1]);
  return xs;
}

// Representative of the equivalence class of t under atom-list and sibling
// permutations: atoms sorted, children canonicalized then sorted by
// (label, canonical child).
ModalTree canonical_form(const ModalTree& t);

// Structural 64-bit hash, compatible with operator==.
std::uint64_t tree_hash(const ModalTree& t);

struct TreeHash {
  std::size_t operator()(const ModalTree& t) const { return static_cast<std::size_t>(tree_hash(t)); }
};

// Multiset/bound observations used by invariant checks and search pruning.
std::vector<std::string> atom_multiset(const ModalTree& t);  // sorted
bool has_edges(const ModalTree& t);
// Largest edge label anywhere, or nullopt-like false pair when edgeless.
std::pair<bool, Label> max_label(const ModalTree& t);
// Longest atom list over all nodes.
std::uint64_t max_atom_list_length(const ModalTree& t);

}  // namespace trc
