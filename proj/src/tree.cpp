#include "trc/tree.hpp"

#include <algorithm>
#include <utility>

namespace trc {

std::string print_position(const Position& p) {
  if (p.empty()) return "e";
  std::string out;
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (k) out += '.';
    out += std::to_string(p[k]);
  }
  return out;
}

bool operator==(const ModalTree& a, const ModalTree& b) {
  if (a.atoms != b.atoms) return false;
  if (a.children.size() != b.children.size()) return false;
  for (std::size_t k = 0; k < a.children.size(); ++k)
    if (a.children[k] != b.children[k]) return false;
  return true;
}

bool operator==(const Edge& a, const Edge& b) {
  return a.label == b.label && a.child == b.child;
}

int compare(const ModalTree& a, const ModalTree& b) {
  if (a.atoms != b.atoms) return a.atoms < b.atoms ? -1 : 1;
  std::size_t n = std::min(a.children.size(), b.children.size());
  for (std::size_t k = 0; k < n; ++k) {
    const Edge& x = a.children[k];
    const Edge& y = b.children[k];
    if (x.label != y.label) return x.label < y.label ? -1 : 1;
    int c = compare(x.child, y.child);
    if (c != 0) return c;
  }
  if (a.children.size() != b.children.size())
    return a.children.size() < b.children.size() ? -1 : 1;
  return 0;
}

ModalTree leaf(std::vector<std::string> atoms) {
  ModalTree t;
  t.atoms = std::move(atoms);
  return t;
}

std::uint64_t height(const ModalTree& t) {
  std::uint64_t h = 0;
  for (const Edge& e : t.children) h = std::max(h, 1 + height(e.child));
  return h;
}

std::uint64_t node_count(const ModalTree& t) {
  std::uint64_t n = 1;
  for (const Edge& e : t.children) n += node_count(e.child);
  return n;
}

ModalTree sum(const ModalTree& a, const ModalTree& b) {
  ModalTree t = a;
  t.atoms.insert(t.atoms.end(), b.atoms.begin(), b.atoms.end());
  t.children.insert(t.children.end(), b.children.begin(), b.children.end());
  return t;
}

ModalTree sum_list(const std::vector<ModalTree>& ts) {
  ModalTree acc;
  for (const ModalTree& t : ts) acc = sum(acc, t);
  return acc;
}

namespace {

void collect_positions(const ModalTree& t, Position& here, std::vector<Position>& out) {
  out.push_back(here);
  for (std::uint32_t k = 1; k <= t.children.size(); ++k) {
    here.push_back(k);
    collect_positions(t.children[k - 1].child, here, out);
    here.pop_back();
  }
}

}  // namespace

std::vector<Position> positions(const ModalTree& t) {
  std::vector<Position> out;
  Position here;
  collect_positions(t, here, out);
  return out;
}

bool is_valid_position(const ModalTree& t, const Position& p) {
  const ModalTree* cur = &t;
  for (std::uint32_t k : p) {
    if (k < 1 || k > cur->children.size()) return false;
    cur = &cur->children[k - 1].child;
  }
  return true;
}

const ModalTree& subtree_at(const ModalTree& t, const Position& p) {
  const ModalTree* cur = &t;
  for (std::size_t d = 0; d < p.size(); ++d) {
    std::uint32_t k = p[d];
    if (k < 1 || k > cur->children.size())
      throw InvalidPosition("position " + print_position(p) + " leaves the tree at depth " +
                            std::to_string(d));
    cur = &cur->children[k - 1].child;
  }
  return *cur;
}

ModalTree replace_at(const ModalTree& t, const Position& p, const ModalTree& s) {
  if (p.empty()) return s;
  std::uint32_t k = p.front();
  if (k < 1 || k > t.children.size())
    throw InvalidPosition("position component " + std::to_string(k) + " outside 1.." +
                          std::to_string(t.children.size()));
  ModalTree out = t;
  Position rest(p.begin() + 1, p.end());
  out.children[k - 1].child = replace_at(t.children[k - 1].child, rest, s);
  return out;
}

ModalTree canonical_form(const ModalTree& t) {
  ModalTree out;
  out.atoms = t.atoms;
  std::sort(out.atoms.begin(), out.atoms.end());
  out.children.reserve(t.children.size());
  for (const Edge& e : t.children) out.children.push_back(Edge{e.label, canonical_form(e.child)});
  std::sort(out.children.begin(), out.children.end(), [](const Edge& x, const Edge& y) {
    if (x.label != y.label) return x.label < y.label;
    return compare(x.child, y.child) < 0;
  });
  return out;
}

namespace {

void hash_mix(std::uint64_t& h, std::uint64_t v) {
  h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
}

std::uint64_t hash_rec(const ModalTree& t) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  hash_mix(h, t.atoms.size());
  for (const std::string& a : t.atoms) {
    std::uint64_t s = 0xcbf29ce484222325ull;
    for (char c : a) s = (s ^ static_cast<unsigned char>(c)) * 0x100000001b3ull;
    hash_mix(h, s);
  }
  hash_mix(h, 0x517cc1b727220a95ull);
  for (const Edge& e : t.children) {
    hash_mix(h, e.label);
    hash_mix(h, hash_rec(e.child));
  }
  return h;
}

}  // namespace

std::uint64_t tree_hash(const ModalTree& t) { return hash_rec(t); }

std::vector<std::string> atom_multiset(const ModalTree& t) {
  std::vector<std::string> out;
  std::vector<const ModalTree*> stack{&t};
  while (!stack.empty()) {
    const ModalTree* cur = stack.back();
    stack.pop_back();
    out.insert(out.end(), cur->atoms.begin(), cur->atoms.end());
    for (const Edge& e : cur->children) stack.push_back(&e.child);
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool has_edges(const ModalTree& t) { return !t.children.empty(); }

std::pair<bool, Label> max_label(const ModalTree& t) {
  bool any = false;
  Label best = 0;
  std::vector<const ModalTree*> stack{&t};
  while (!stack.empty()) {
    const ModalTree* cur = stack.back();
    stack.pop_back();
    for (const Edge& e : cur->children) {
      if (!any || e.label > best) best = e.label;
      any = true;
      stack.push_back(&e.child);
    }
  }
  return {any, best};
}

std::uint64_t max_atom_list_length(const ModalTree& t) {
  std::uint64_t best = t.atoms.size();
  for (const Edge& e : t.children) best = std::max(best, max_atom_list_length(e.child));
  return best;
}

}  // namespace trc
