#pragma once

#include "trc/formula.hpp"
#include "trc/tree.hpp"

namespace trc {

// Formula -> tree: T becomes the empty node, an atom a one-node tree carrying
// it, <a>f a single edge to the image of f, and a conjunction the root-merge
// of the two images.
ModalTree to_tree(const Formula& f);

// Tree -> formula: conjunction of the atom list's chain and the children's
// chain, each right-nested and T-terminated; a child (a, S) contributes
// <a> to_formula(S).
Formula to_formula(const ModalTree& t);

}  // namespace trc
