#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "trc/formula.hpp"
#include "trc/rewrite.hpp"
#include "trc/tree.hpp"

namespace trc {

// Uniform integer in [lo, hi] drawn by rejection from the engine's raw output.
// std::uniform_int_distribution is implementation-defined, so outputs would
// not be reproducible across standard libraries; this is, given mt19937_64's
// fixed sequence.
inline std::uint64_t uniform_u64(std::mt19937_64& g, std::uint64_t lo, std::uint64_t hi) {
  std::uint64_t n = hi - lo + 1;
  if (n == 0) return g();  // full range
  std::uint64_t threshold = (0 - n) % n;  // 2^64 mod n
  for (;;) {
    std::uint64_t r = g();
    if (r >= threshold) return lo + r % n;
  }
}

struct RandomTreeParams {
  std::uint64_t max_nodes = 6;
  std::uint64_t max_atoms_per_node = 2;
  std::uint64_t num_atom_names = 2;  // names "a", "b", ...
  Label max_label = 2;
};

// Random tree with node count in [1, max_nodes]: nodes are spent on a random
// child count at each level, atoms drawn per node.
ModalTree random_tree(std::mt19937_64& g, const RandomTreeParams& params);

// Random formula with size in [1, max_size] over the same alphabet scheme.
struct RandomFormulaParams {
  std::uint64_t max_size = 9;
  std::uint64_t num_atom_names = 2;
  Label max_label = 2;
};
Formula random_formula(std::mt19937_64& g, const RandomFormulaParams& params);

// Random valid trace: up to max_steps instances drawn uniformly from
// enumerate_instances of the evolving tree (stops early at a dead end).
Trace random_trace(std::mt19937_64& g, const ModalTree& initial, std::uint64_t max_steps);

// Atom name for index k: "a", "b", ..., "z", "a1", ...
std::string atom_name_for(std::uint64_t k);

}  // namespace trc
