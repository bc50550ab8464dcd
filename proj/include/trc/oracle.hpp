#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <unordered_map>
#include <vector>

#include "trc/formula.hpp"
#include "trc/rewrite.hpp"

namespace trc {

// Finite formula universe; member order is deterministic (size, then total
// order), and the set is closed under subformulas.
struct Universe {
  std::vector<std::string> atoms;
  std::vector<Label> labels;
  std::uint64_t max_depth = 0;
  std::uint64_t max_size = 0;
  std::vector<Formula> members;
  std::unordered_map<std::string, std::uint32_t> index;  // printed form -> id

  // All formulas over the alphabet with modal_depth <= max_depth and
  // formula_size <= max_size.
  static Universe bounded(std::vector<std::string> atoms, std::vector<Label> labels,
                          std::uint64_t max_depth, std::uint64_t max_size);

  // Subformula closure of the seeds (plus Top); bounds and alphabet are the
  // maxima observed over members.
  static Universe closure(const std::vector<Formula>& seeds);

  std::optional<std::uint32_t> id_of(const Formula& f) const;
  bool contains(const Formula& f) const { return id_of(f).has_value(); }
};

enum class Logic { KPlus, RC };

// Sequent-prover rule kinds.
enum class DerivationKind {
  Id,        // phi |- phi
  TopIntro,  // phi |- T
  Cut,       // phi |- psi, psi |- chi  =>  phi |- chi
  AndE1,     // psi & chi |- psi
  AndE2,     // psi & chi |- chi
  AndI,      // phi |- psi, phi |- chi  =>  phi |- psi & chi
  Dist,      // phi |- psi  =>  <a>phi |- <a>psi
  Trans,     // <a><a>phi |- <a>phi            (RC)
  Mono,      // <a>phi |- <b>phi for a > b     (RC)
  Jax,       // <a>phi & <b>psi |- <a>(phi & <b>psi) for a > b  (RC)
};

struct Derivation {
  DerivationKind kind = DerivationKind::Id;
  Formula lhs, rhs;
  std::vector<std::shared_ptr<const Derivation>> premises;
};

// Checks one node against its schema (premises assumed checked).
bool locally_valid(const Derivation& d);

// Forward closure of the rule schemata over u.members, every intermediate
// inside the universe. Sound; incomplete when a needed cut formula falls
// outside u.
class Saturation {
 public:
  Saturation(const Universe& u, Logic logic);

  const Universe& universe() const { return *u_; }
  Logic logic() const { return logic_; }

  bool derives(const Formula& lhs, const Formula& rhs) const;
  bool derives_ids(std::uint32_t lhs, std::uint32_t rhs) const;

  // All derived pairs as (lhs id, rhs id), in deterministic order.
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs() const;

  // Reconstructs the recorded proof; nullopt when the pair is not derived.
  std::shared_ptr<const Derivation> derivation(std::uint32_t lhs, std::uint32_t rhs) const;

 private:
  struct Just {  // how a pair was first derived
    DerivationKind kind;
    std::uint32_t p1_lhs = 0, p1_rhs = 0;  // premise pairs, when used
    std::uint32_t p2_lhs = 0, p2_rhs = 0;
    std::uint8_t n_premises = 0;
  };
  const Universe* u_;
  Logic logic_;
  std::vector<std::vector<bool>> row_;  // row_[lhs][rhs]
  std::unordered_map<std::uint64_t, Just> just_;
  void add(std::uint32_t a, std::uint32_t b, Just j, std::vector<std::pair<std::uint32_t, std::uint32_t>>& wl);
  friend Saturation saturate(const Universe&, Logic);
};

Saturation saturate(const Universe& u, Logic logic);

// Row-wise variant for universes too large to saturate pairwise: computes
// single left-hand-side rows of the same least relation on demand, recursing
// into rows of diamond bodies through a subscription worklist. Cross-checked
// against Saturation on small universes.
class RowOracle {
 public:
  RowOracle(const Universe& u, Logic logic);
  ~RowOracle();

  // True iff lhs |- rhs in the universe-restricted closure.
  bool derives(const Formula& lhs, const Formula& rhs);

  // The full row of lhs (ids of derivable right-hand sides), sorted.
  std::vector<std::uint32_t> row(const Formula& lhs);

  std::uint64_t rows_computed() const;
  std::uint64_t members_total() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Realizes a proof as a rewrite run: a Trace from to_tree(lhs) ending exactly
// at to_tree(rhs). Cut concatenates, the conjunction rules use the sum
// macros, Dist shifts the sub-trace one level down, Trans/Mono/Jax emit one
// Four/Lambda/J step.
Trace compile_derivation(const Derivation& d);

// Plain breadth-first exploration over enumerate/apply with no
// canonicalization and no pruning; true iff goal is reached within
// step_bound steps through trees of at most node_bound nodes.
bool brute_reachability(const ModalTree& start, const ModalTree& goal, std::uint64_t step_bound,
                        std::uint64_t node_bound);

}  // namespace trc
