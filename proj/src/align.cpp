#include "trc/align.hpp"

#include <algorithm>

namespace trc {

namespace {

// Appends steps making the node-at-p atom list [a_{order[0]}, a_{order[1]}, ...]
// from [a_1..a_n]: reverse-order duplications to the front, then the trailing
// originals deleted. No-op for the identity permutation.
void atom_perm_steps(const Position& p, const std::vector<std::uint32_t>& order,
                     std::vector<RuleInstance>& out) {
  auto n = static_cast<std::uint32_t>(order.size());
  bool identity = true;
  for (std::uint32_t k = 0; k < n; ++k)
    if (order[k] != k + 1) {
      identity = false;
      break;
    }
  if (identity) return;
  for (std::uint32_t k = n; k >= 1; --k) out.push_back(rho_plus(p, order[k - 1] + (n - k)));
  for (std::uint32_t k = 0; k < n; ++k) out.push_back(rho_minus(p, n + 1));
}

// Finds order with from[order[k]-1] == to[k] picking each source index once.
bool atom_order(const std::vector<std::string>& from, const std::vector<std::string>& to,
                std::vector<std::uint32_t>& order) {
  if (from.size() != to.size()) return false;
  std::vector<bool> used(from.size(), false);
  order.clear();
  for (const std::string& want : to) {
    bool found = false;
    for (std::size_t i = 0; i < from.size(); ++i) {
      if (!used[i] && from[i] == want) {
        used[i] = true;
        order.push_back(static_cast<std::uint32_t>(i + 1));
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

void align_rec(const ModalTree& from, const ModalTree& to, const Position& p,
               std::vector<RuleInstance>& out) {
  if (from.atoms.size() != to.atoms.size() || from.children.size() != to.children.size())
    throw ReplayMismatch("align_to: trees have different canonical forms at " + print_position(p));

  std::vector<std::uint32_t> order;
  if (!atom_order(from.atoms, to.atoms, order))
    throw ReplayMismatch("align_to: atom multisets differ at " + print_position(p));
  atom_perm_steps(p, order, out);

  std::vector<Edge> kids = from.children;
  auto m = static_cast<std::uint32_t>(kids.size());
  for (std::uint32_t k = 1; k <= m; ++k) {
    const Edge& want = to.children[k - 1];
    ModalTree want_canon = canonical_form(want.child);
    std::uint32_t found = 0;
    for (std::uint32_t i = k; i <= m; ++i) {
      if (kids[i - 1].label == want.label && canonical_form(kids[i - 1].child) == want_canon) {
        found = i;
        break;
      }
    }
    if (found == 0)
      throw ReplayMismatch("align_to: child multisets differ at " + print_position(p));
    if (found != k) {
      out.push_back(sigma(p, k, found));
      std::swap(kids[k - 1], kids[found - 1]);
    }
  }
  for (std::uint32_t k = 1; k <= m; ++k) {
    Position cp = p;
    cp.push_back(k);
    align_rec(kids[k - 1].child, to.children[k - 1].child, cp, out);
  }
}

// Children sorted recursively, atom lists left in order: equality of these
// means the trees differ only by sibling permutations.
ModalTree sibling_sorted(const ModalTree& t) {
  ModalTree r;
  r.atoms = t.atoms;
  r.children.reserve(t.children.size());
  for (const Edge& e : t.children) r.children.push_back(Edge{e.label, sibling_sorted(e.child)});
  std::sort(r.children.begin(), r.children.end(), [](const Edge& a, const Edge& b) {
    if (a.label != b.label) return a.label < b.label;
    return compare(a.child, b.child) < 0;
  });
  return r;
}

void sigma_rec(const ModalTree& from, const ModalTree& to, const Position& p,
               std::vector<RuleInstance>& out) {
  if (from.atoms != to.atoms || from.children.size() != to.children.size())
    throw ReplayMismatch("sigma_diff: trees differ by more than sibling order at " +
                         print_position(p));
  std::vector<Edge> kids = from.children;
  auto m = static_cast<std::uint32_t>(kids.size());
  for (std::uint32_t k = 1; k <= m; ++k) {
    const Edge& want = to.children[k - 1];
    ModalTree want_sorted = sibling_sorted(want.child);
    std::uint32_t found = 0;
    for (std::uint32_t i = k; i <= m; ++i) {
      if (kids[i - 1].label == want.label && sibling_sorted(kids[i - 1].child) == want_sorted) {
        found = i;
        break;
      }
    }
    if (found == 0)
      throw ReplayMismatch("sigma_diff: trees differ by more than sibling order at " +
                           print_position(p));
    if (found != k) {
      out.push_back(sigma(p, k, found));
      std::swap(kids[k - 1], kids[found - 1]);
    }
  }
  for (std::uint32_t k = 1; k <= m; ++k) {
    Position cp = p;
    cp.push_back(k);
    sigma_rec(kids[k - 1].child, to.children[k - 1].child, cp, out);
  }
}

void replay_check(const ModalTree& from, const ModalTree& to,
                  const std::vector<RuleInstance>& steps, const char* what) {
  ModalTree cur = from;
  for (const RuleInstance& r : steps) cur = apply(cur, r);
  if (cur != to) throw ReplayMismatch(std::string(what) + ": replay misses the target tree");
}

}  // namespace

std::vector<RuleInstance> align_to(const ModalTree& from, const ModalTree& to) {
  std::vector<RuleInstance> out;
  align_rec(from, to, {}, out);
  replay_check(from, to, out, "align_to");
  return out;
}

std::vector<RuleInstance> sigma_diff(const ModalTree& from, const ModalTree& to) {
  std::vector<RuleInstance> out;
  sigma_rec(from, to, {}, out);
  replay_check(from, to, out, "sigma_diff");
  return out;
}

}  // namespace trc
