#include "trc/random.hpp"

namespace trc {

std::string atom_name_for(std::uint64_t k) {
  std::string name(1, static_cast<char>('a' + k % 26));
  if (k >= 26) name += std::to_string(k / 26);
  return name;
}

namespace {

// Builds a tree consuming at most `budget` nodes (>= 1), returns nodes used.
std::uint64_t grow(std::mt19937_64& g, const RandomTreeParams& p, std::uint64_t budget, ModalTree& out) {
  std::uint64_t n_atoms = uniform_u64(g, 0, p.max_atoms_per_node);
  for (std::uint64_t k = 0; k < n_atoms; ++k)
    out.atoms.push_back(atom_name_for(uniform_u64(g, 0, p.num_atom_names - 1)));
  std::uint64_t used = 1;
  if (budget <= 1) return used;
  std::uint64_t n_children = uniform_u64(g, 0, budget - 1);
  for (std::uint64_t c = 0; c < n_children && used < budget; ++c) {
    Edge e;
    e.label = uniform_u64(g, 0, p.max_label);
    used += grow(g, p, uniform_u64(g, 1, budget - used), e.child);
    out.children.push_back(std::move(e));
  }
  return used;
}

}  // namespace

ModalTree random_tree(std::mt19937_64& g, const RandomTreeParams& params) {
  ModalTree t;
  std::uint64_t budget = uniform_u64(g, 1, params.max_nodes);
  grow(g, params, budget, t);
  return t;
}

namespace {

Formula random_formula_sized(std::mt19937_64& g, const RandomFormulaParams& p, std::uint64_t budget) {
  // size(T) = size(atom) = 1; size(<a>f) = 1 + size(f); size(f & h) = 1 + size(f) + size(h)
  std::uint64_t max_kind = budget >= 3 ? 3 : (budget >= 2 ? 2 : 1);
  std::uint64_t kind = uniform_u64(g, 0, max_kind);
  switch (kind) {
    case 0:
      return top();
    case 1:
      return atom(atom_name_for(uniform_u64(g, 0, p.num_atom_names - 1)));
    case 2:
      return diamond(uniform_u64(g, 0, p.max_label),
                     random_formula_sized(g, p, uniform_u64(g, 1, budget - 1)));
    default: {
      std::uint64_t left_budget = uniform_u64(g, 1, budget - 2);
      Formula l = random_formula_sized(g, p, left_budget);
      Formula r = random_formula_sized(g, p, uniform_u64(g, 1, budget - 1 - left_budget));
      return conj(std::move(l), std::move(r));
    }
  }
}

}  // namespace

Formula random_formula(std::mt19937_64& g, const RandomFormulaParams& params) {
  std::uint64_t budget = uniform_u64(g, 1, params.max_size);
  return random_formula_sized(g, params, budget);
}

Trace random_trace(std::mt19937_64& g, const ModalTree& initial, std::uint64_t max_steps) {
  Trace tr;
  tr.initial = initial;
  ModalTree cur = initial;
  for (std::uint64_t s = 0; s < max_steps; ++s) {
    std::vector<RuleInstance> options = enumerate_instances(cur);
    if (options.empty()) break;
    RuleInstance pick = options[uniform_u64(g, 0, options.size() - 1)];
    cur = apply(cur, pick);
    tr.steps.push_back(std::move(pick));
  }
  return tr;
}

}  // namespace trc
