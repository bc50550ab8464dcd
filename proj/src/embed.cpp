#include "trc/embed.hpp"

namespace trc {

ModalTree to_tree(const Formula& f) {
  switch (f.kind) {
    case Formula::Kind::Top:
      return ModalTree{};
    case Formula::Kind::Atom:
      return leaf({f.name});
    case Formula::Kind::Diamond: {
      ModalTree t;
      t.children.push_back(Edge{f.label, to_tree(*f.lhs)});
      return t;
    }
    case Formula::Kind::And:
      return sum(to_tree(*f.lhs), to_tree(*f.rhs));
  }
  return ModalTree{};
}

Formula to_formula(const ModalTree& t) {
  std::vector<Formula> atoms;
  atoms.reserve(t.atoms.size());
  for (const std::string& a : t.atoms) atoms.push_back(atom(a));
  std::vector<Formula> diamonds;
  diamonds.reserve(t.children.size());
  for (const Edge& e : t.children) diamonds.push_back(diamond(e.label, to_formula(e.child)));
  return conj(conj_list(atoms), conj_list(diamonds));
}

}  // namespace trc
