#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "trc/errors.hpp"

namespace trc {

using Label = std::uint64_t;

// Strictly positive modal formulas: T | atom | <label> f | f & g.
// Immutable; children shared. Equality is structural.
struct Formula {
  enum class Kind : std::uint8_t { Top, Atom, Diamond, And };

  Kind kind = Kind::Top;
  std::string name;                    // Atom
  Label label = 0;                     // Diamond
  std::shared_ptr<const Formula> lhs;  // Diamond body / And left
  std::shared_ptr<const Formula> rhs;  // And right
};

Formula top();
Formula atom(std::string name);
Formula diamond(Label label, Formula body);
Formula conj(Formula left, Formula right);

// Child accessors; precondition: the formula has that child.
const Formula& body(const Formula& f);
const Formula& left(const Formula& f);
const Formula& right(const Formula& f);

bool operator==(const Formula& a, const Formula& b);
inline bool operator!=(const Formula& a, const Formula& b) { return !(a == b); }

// Total order (kind, payload, children); used for deterministic enumeration.
int compare(const Formula& a, const Formula& b);

// Nesting depth of diamonds: 0 for T and atoms, 1 + depth for <a>f,
// max of the sides for conjunctions.
std::uint64_t modal_depth(const Formula& f);

// Node count: leaves 1, diamond 1 + body, conjunction 1 + left + right.
std::uint64_t formula_size(const Formula& f);

// Right-nested conjunction of a list, terminated by T: [] -> T,
// [f1, f2, ...] -> f1 & (f2 & (... & T)).
Formula conj_list(const std::vector<Formula>& fs);

// Concrete syntax, reparsable by parse. "&" is right-associative, diamonds
// bind tighter; parentheses emitted only where grammar requires them.
std::string print(const Formula& f);

// Grammar:
//   formula := conj
//   conj    := unary ("&" conj)?
//   unary   := "<" nat ">" unary | atom | "T" | "(" formula ")"
//   atom    := [a-z][a-zA-Z0-9_]*
// Whitespace between tokens is ignored. Throws ParseError on malformed input.
Formula parse(std::string_view text);

}  // namespace trc
