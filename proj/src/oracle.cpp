#include "trc/oracle.hpp"

#include <algorithm>
#include <unordered_set>

#include "trc/embed.hpp"
#include "trc/macros.hpp"
#include "trc/tree.hpp"

namespace trc {

namespace {

constexpr std::uint32_t kNone = 0xffffffffu;

std::uint64_t pair_key(std::uint32_t a, std::uint32_t b) {
  return (static_cast<std::uint64_t>(a) << 32) | b;
}

bool size_then_order(const Formula& a, const Formula& b) {
  std::uint64_t sa = formula_size(a), sb = formula_size(b);
  if (sa != sb) return sa < sb;
  return compare(a, b) < 0;
}

void finalize_members(Universe& u, std::vector<Formula> members) {
  std::sort(members.begin(), members.end(), size_then_order);
  u.members = std::move(members);
  u.index.clear();
  for (std::uint32_t id = 0; id < u.members.size(); ++id) u.index.emplace(print(u.members[id]), id);
}

}  // namespace

Universe Universe::bounded(std::vector<std::string> atoms, std::vector<Label> labels,
                           std::uint64_t max_depth, std::uint64_t max_size) {
  Universe u;
  std::sort(atoms.begin(), atoms.end());
  atoms.erase(std::unique(atoms.begin(), atoms.end()), atoms.end());
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  u.atoms = std::move(atoms);
  u.labels = std::move(labels);
  u.max_depth = max_depth;
  u.max_size = max_size;
  if (max_size == 0) throw IndexOutOfRange("Universe::bounded: max_size must be at least 1");

  std::vector<std::vector<Formula>> by_size(max_size + 1);
  by_size[1].push_back(top());
  for (const std::string& name : u.atoms) by_size[1].push_back(atom(name));
  for (std::uint64_t s = 2; s <= max_size; ++s) {
    for (Label l : u.labels)
      for (const Formula& f : by_size[s - 1])
        if (modal_depth(f) + 1 <= max_depth) by_size[s].push_back(diamond(l, f));
    for (std::uint64_t ls = 1; ls + 1 < s; ++ls)
      for (const Formula& a : by_size[ls])
        for (const Formula& b : by_size[s - 1 - ls]) by_size[s].push_back(conj(a, b));
  }
  std::vector<Formula> members;
  for (auto& bucket : by_size) members.insert(members.end(), bucket.begin(), bucket.end());
  finalize_members(u, std::move(members));
  return u;
}

Universe Universe::closure(const std::vector<Formula>& seeds) {
  Universe u;
  std::vector<Formula> members;
  std::unordered_set<std::string> seen;
  std::vector<Formula> stack{top()};
  stack.insert(stack.end(), seeds.begin(), seeds.end());
  while (!stack.empty()) {
    Formula f = std::move(stack.back());
    stack.pop_back();
    if (!seen.insert(print(f)).second) continue;
    switch (f.kind) {
      case Formula::Kind::Top:
        break;
      case Formula::Kind::Atom:
        u.atoms.push_back(f.name);
        break;
      case Formula::Kind::Diamond:
        u.labels.push_back(f.label);
        stack.push_back(body(f));
        break;
      case Formula::Kind::And:
        stack.push_back(left(f));
        stack.push_back(right(f));
        break;
    }
    u.max_depth = std::max(u.max_depth, modal_depth(f));
    u.max_size = std::max(u.max_size, formula_size(f));
    members.push_back(std::move(f));
  }
  std::sort(u.atoms.begin(), u.atoms.end());
  u.atoms.erase(std::unique(u.atoms.begin(), u.atoms.end()), u.atoms.end());
  std::sort(u.labels.begin(), u.labels.end());
  u.labels.erase(std::unique(u.labels.begin(), u.labels.end()), u.labels.end());
  finalize_members(u, std::move(members));
  return u;
}

std::optional<std::uint32_t> Universe::id_of(const Formula& f) const {
  auto it = index.find(print(f));
  if (it == index.end()) return std::nullopt;
  return it->second;
}

bool locally_valid(const Derivation& d) {
  auto np = d.premises.size();
  for (const auto& p : d.premises)
    if (!p) return false;
  switch (d.kind) {
    case DerivationKind::Id:
      return np == 0 && d.lhs == d.rhs;
    case DerivationKind::TopIntro:
      return np == 0 && d.rhs == top();
    case DerivationKind::Cut:
      return np == 2 && d.premises[0]->lhs == d.lhs && d.premises[0]->rhs == d.premises[1]->lhs &&
             d.premises[1]->rhs == d.rhs;
    case DerivationKind::AndE1:
      return np == 0 && d.lhs.kind == Formula::Kind::And && left(d.lhs) == d.rhs;
    case DerivationKind::AndE2:
      return np == 0 && d.lhs.kind == Formula::Kind::And && right(d.lhs) == d.rhs;
    case DerivationKind::AndI:
      return np == 2 && d.rhs.kind == Formula::Kind::And && d.premises[0]->lhs == d.lhs &&
             d.premises[1]->lhs == d.lhs && d.premises[0]->rhs == left(d.rhs) &&
             d.premises[1]->rhs == right(d.rhs);
    case DerivationKind::Dist:
      return np == 1 && d.lhs.kind == Formula::Kind::Diamond &&
             d.rhs.kind == Formula::Kind::Diamond && d.lhs.label == d.rhs.label &&
             d.premises[0]->lhs == body(d.lhs) && d.premises[0]->rhs == body(d.rhs);
    case DerivationKind::Trans:
      return np == 0 && d.lhs.kind == Formula::Kind::Diamond &&
             body(d.lhs).kind == Formula::Kind::Diamond && body(d.lhs).label == d.lhs.label &&
             d.rhs == body(d.lhs);
    case DerivationKind::Mono:
      return np == 0 && d.lhs.kind == Formula::Kind::Diamond &&
             d.rhs.kind == Formula::Kind::Diamond && d.lhs.label > d.rhs.label &&
             body(d.lhs) == body(d.rhs);
    case DerivationKind::Jax: {
      if (np != 0 || d.lhs.kind != Formula::Kind::And) return false;
      const Formula& a = left(d.lhs);
      const Formula& b = right(d.lhs);
      if (a.kind != Formula::Kind::Diamond || b.kind != Formula::Kind::Diamond) return false;
      if (!(a.label > b.label)) return false;
      return d.rhs == diamond(a.label, conj(body(a), b));
    }
  }
  return false;
}

namespace {

// Structural tables shared by both oracles.
struct UniverseIndex {
  std::uint32_t n = 0;
  std::uint32_t top_id = kNone;
  struct MemberInfo {
    bool is_and = false;
    std::uint32_t left = kNone, right = kNone;
    bool is_diamond = false;
    std::uint32_t body = kNone;
    std::uint32_t label_idx = kNone;
  };
  std::vector<MemberInfo> info;
  // part id -> list of (conjunction id, left part id, right part id)
  std::vector<std::vector<std::array<std::uint32_t, 3>>> conj_parent;
  // label index x body id -> diamond id (kNone when absent)
  std::vector<std::vector<std::uint32_t>> diamond_of;
  // premise-free right-hand sides per left-hand member (empty for KPlus)
  std::vector<std::vector<std::uint32_t>> heads;

  UniverseIndex(const Universe& u, Logic logic) {
    n = static_cast<std::uint32_t>(u.members.size());
    auto tid = u.id_of(top());
    if (!tid) throw IndexOutOfRange("oracle: universe does not contain T");
    top_id = *tid;
    std::unordered_map<Label, std::uint32_t> label_idx;
    for (std::uint32_t k = 0; k < u.labels.size(); ++k) label_idx.emplace(u.labels[k], k);
    info.resize(n);
    conj_parent.resize(n);
    diamond_of.assign(u.labels.size(), std::vector<std::uint32_t>(n, kNone));
    for (std::uint32_t id = 0; id < n; ++id) {
      const Formula& f = u.members[id];
      if (f.kind == Formula::Kind::And) {
        info[id].is_and = true;
        info[id].left = *u.id_of(left(f));
        info[id].right = *u.id_of(right(f));
        conj_parent[info[id].left].push_back({id, info[id].left, info[id].right});
        if (info[id].right != info[id].left)
          conj_parent[info[id].right].push_back({id, info[id].left, info[id].right});
      } else if (f.kind == Formula::Kind::Diamond) {
        info[id].is_diamond = true;
        info[id].body = *u.id_of(body(f));
        info[id].label_idx = label_idx.at(f.label);
        diamond_of[info[id].label_idx][info[id].body] = id;
      }
    }
    heads.resize(n);
    if (logic == Logic::RC) {
      for (std::uint32_t id = 0; id < n; ++id) {
        const Formula& f = u.members[id];
        if (f.kind == Formula::Kind::Diamond) {
          const Formula& fb = body(f);
          if (fb.kind == Formula::Kind::Diamond && fb.label == f.label)
            heads[id].push_back(info[id].body);  // transitivity collapse
          for (std::uint32_t li = 0; li < u.labels.size(); ++li) {
            if (u.labels[li] >= f.label) break;
            std::uint32_t down = diamond_of[li][info[id].body];
            if (down != kNone) heads[id].push_back(down);  // monotone lowering
          }
        } else if (f.kind == Formula::Kind::And) {
          const Formula& a = left(f);
          const Formula& b = right(f);
          if (a.kind == Formula::Kind::Diamond && b.kind == Formula::Kind::Diamond &&
              a.label > b.label) {
            auto h = u.id_of(diamond(a.label, conj(body(a), b)));
            if (h) heads[id].push_back(*h);  // inward absorption
          }
        }
      }
    }
  }
};

}  // namespace

Saturation::Saturation(const Universe& u, Logic logic) : u_(&u), logic_(logic) {
  UniverseIndex ix(u, logic);
  std::uint32_t n = ix.n;
  row_.assign(n, std::vector<bool>(n, false));
  std::vector<std::vector<std::uint32_t>> col(n);
  std::vector<std::pair<std::uint32_t, std::uint32_t>> wl;

  auto add = [&](std::uint32_t a, std::uint32_t b, Just j) {
    if (row_[a][b]) return;
    row_[a][b] = true;
    col[b].push_back(a);
    just_.emplace(pair_key(a, b), j);
    wl.emplace_back(a, b);
  };

  for (std::uint32_t x = 0; x < n; ++x) {
    add(x, x, Just{DerivationKind::Id, 0, 0, 0, 0, 0});
    add(x, ix.top_id, Just{DerivationKind::TopIntro, 0, 0, 0, 0, 0});
    if (ix.info[x].is_and) {
      add(x, ix.info[x].left, Just{DerivationKind::AndE1, 0, 0, 0, 0, 0});
      add(x, ix.info[x].right, Just{DerivationKind::AndE2, 0, 0, 0, 0, 0});
    }
    const Formula& f = u.members[x];
    for (std::uint32_t h : ix.heads[x]) {
      DerivationKind k = DerivationKind::Mono;
      if (f.kind == Formula::Kind::And) k = DerivationKind::Jax;
      else if (h == ix.info[x].body && body(f).kind == Formula::Kind::Diamond &&
               body(f).label == f.label)
        k = DerivationKind::Trans;
      add(x, h, Just{k, 0, 0, 0, 0, 0});
    }
  }

  while (!wl.empty()) {
    auto [a, b] = wl.back();
    wl.pop_back();
    // cut on the right: a |- b and b |- c
    for (std::uint32_t c = 0; c < n; ++c)
      if (row_[b][c]) add(a, c, Just{DerivationKind::Cut, a, b, b, c, 2});
    // cut on the left: c |- a and a |- b
    for (std::size_t k = 0; k < col[a].size(); ++k) {
      std::uint32_t c = col[a][k];
      add(c, b, Just{DerivationKind::Cut, c, a, a, b, 2});
    }
    // conjunction introduction through any parent of b
    for (const auto& [cid, l, r] : ix.conj_parent[b])
      if (row_[a][l] && row_[a][r]) add(a, cid, Just{DerivationKind::AndI, a, l, a, r, 2});
    // distribution under every diamond present for both sides
    if (a != b) {
      for (std::uint32_t li = 0; li < ix.diamond_of.size(); ++li) {
        std::uint32_t da = ix.diamond_of[li][a];
        if (da == kNone) continue;
        std::uint32_t db = ix.diamond_of[li][b];
        if (db != kNone) add(da, db, Just{DerivationKind::Dist, a, b, 0, 0, 1});
      }
    }
  }
}

bool Saturation::derives_ids(std::uint32_t lhs, std::uint32_t rhs) const {
  if (lhs >= row_.size() || rhs >= row_.size())
    throw IndexOutOfRange("Saturation::derives_ids: id outside the universe");
  return row_[lhs][rhs];
}

bool Saturation::derives(const Formula& lhs, const Formula& rhs) const {
  auto a = u_->id_of(lhs);
  auto b = u_->id_of(rhs);
  if (!a || !b) throw IndexOutOfRange("Saturation::derives: formula outside the universe");
  return row_[*a][*b];
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> Saturation::pairs() const {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
  for (std::uint32_t a = 0; a < row_.size(); ++a)
    for (std::uint32_t b = 0; b < row_.size(); ++b)
      if (row_[a][b]) out.emplace_back(a, b);
  return out;
}

std::shared_ptr<const Derivation> Saturation::derivation(std::uint32_t lhs,
                                                         std::uint32_t rhs) const {
  if (lhs >= row_.size() || rhs >= row_.size())
    throw IndexOutOfRange("Saturation::derivation: id outside the universe");
  if (!row_[lhs][rhs]) return nullptr;
  std::unordered_map<std::uint64_t, std::shared_ptr<const Derivation>> memo;
  std::vector<std::uint64_t> stack{pair_key(lhs, rhs)};
  while (!stack.empty()) {
    std::uint64_t k = stack.back();
    if (memo.count(k)) {
      stack.pop_back();
      continue;
    }
    const Just& j = just_.at(k);
    std::uint64_t pk[2];
    std::size_t np = j.n_premises;
    if (np >= 1) pk[0] = pair_key(j.p1_lhs, j.p1_rhs);
    if (np == 2) pk[1] = pair_key(j.p2_lhs, j.p2_rhs);
    bool ready = true;
    for (std::size_t x = 0; x < np; ++x)
      if (!memo.count(pk[x])) {
        ready = false;
        stack.push_back(pk[x]);
      }
    if (!ready) continue;
    auto d = std::make_shared<Derivation>();
    d->kind = j.kind;
    d->lhs = u_->members[k >> 32];
    d->rhs = u_->members[k & 0xffffffffu];
    for (std::size_t x = 0; x < np; ++x) d->premises.push_back(memo.at(pk[x]));
    memo.emplace(k, std::move(d));
    stack.pop_back();
  }
  return memo.at(pair_key(lhs, rhs));
}

Saturation saturate(const Universe& u, Logic logic) { return Saturation(u, logic); }

struct RowOracle::Impl {
  const Universe* u;
  UniverseIndex ix;
  struct Row {
    std::vector<bool> in;
    std::vector<std::uint32_t> members;  // insertion order, for subscription replay
  };
  std::unordered_map<std::uint32_t, Row> rows;
  // body row id -> (subscriber row id, label index) pairs
  std::unordered_map<std::uint32_t, std::vector<std::pair<std::uint32_t, std::uint32_t>>> subs;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> wl;  // (row, new member)

  Impl(const Universe& universe, Logic logic) : u(&universe), ix(universe, logic) {}

  void add(std::uint32_t r, std::uint32_t x) {
    Row& row = rows.at(r);
    if (row.in[x]) return;
    row.in[x] = true;
    row.members.push_back(x);
    wl.emplace_back(r, x);
  }

  void ensure_row(std::uint32_t a) {
    if (rows.count(a)) return;
    Row row;
    row.in.assign(ix.n, false);
    rows.emplace(a, std::move(row));
    add(a, a);
    add(a, ix.top_id);
  }

  void subscribe(std::uint32_t subscriber, std::uint32_t label_idx, std::uint32_t body_id) {
    ensure_row(body_id);
    subs[body_id].emplace_back(subscriber, label_idx);
    // replay members the body row already has; later ones arrive via notify
    for (std::size_t k = 0; k < rows.at(body_id).members.size(); ++k) {
      std::uint32_t psi = rows.at(body_id).members[k];
      std::uint32_t dia = ix.diamond_of[label_idx][psi];
      if (dia != kNone) add(subscriber, dia);
    }
  }

  void drain() {
    while (!wl.empty()) {
      auto [r, x] = wl.back();
      wl.pop_back();
      const auto& mi = ix.info[x];
      if (mi.is_and) {
        add(r, mi.left);
        add(r, mi.right);
      }
      for (const auto& [cid, l, rr] : ix.conj_parent[x])
        if (rows.at(r).in[l] && rows.at(r).in[rr]) add(r, cid);
      for (std::uint32_t h : ix.heads[x]) add(r, h);
      if (mi.is_diamond) subscribe(r, mi.label_idx, mi.body);
      auto it = subs.find(r);
      if (it != subs.end()) {
        // snapshot: a subscription added mid-loop replays the full row itself
        auto listeners = it->second;
        for (const auto& [who, li] : listeners) {
          std::uint32_t dia = ix.diamond_of[li][x];
          if (dia != kNone) add(who, dia);
        }
      }
    }
  }
};

RowOracle::RowOracle(const Universe& u, Logic logic)
    : impl_(std::make_unique<Impl>(u, logic)) {}
RowOracle::~RowOracle() = default;

bool RowOracle::derives(const Formula& lhs, const Formula& rhs) {
  auto a = impl_->u->id_of(lhs);
  auto b = impl_->u->id_of(rhs);
  if (!a || !b) throw IndexOutOfRange("RowOracle::derives: formula outside the universe");
  impl_->ensure_row(*a);
  impl_->drain();
  return impl_->rows.at(*a).in[*b];
}

std::vector<std::uint32_t> RowOracle::row(const Formula& lhs) {
  auto a = impl_->u->id_of(lhs);
  if (!a) throw IndexOutOfRange("RowOracle::row: formula outside the universe");
  impl_->ensure_row(*a);
  impl_->drain();
  std::vector<std::uint32_t> out = impl_->rows.at(*a).members;
  std::sort(out.begin(), out.end());
  return out;
}

std::uint64_t RowOracle::rows_computed() const { return impl_->rows.size(); }
std::uint64_t RowOracle::members_total() const { return impl_->ix.n; }

namespace {

Trace compile_node(const Derivation& d,
                   const std::unordered_map<const Derivation*, Trace>& memo) {
  switch (d.kind) {
    case DerivationKind::Id:
      return Trace{to_tree(d.lhs), {}};
    case DerivationKind::TopIntro: {
      Trace tr{to_tree(d.lhs), {}};
      ModalTree t = tr.initial;
      for (std::size_t k = 0; k < t.atoms.size(); ++k) tr.steps.push_back(rho_minus({}, 1));
      for (std::size_t k = 0; k < t.children.size(); ++k) tr.steps.push_back(pi_minus({}, 1));
      return tr;
    }
    case DerivationKind::Cut: {
      // Memoized premise traces already carry the premises' endpoints, so the
      // junction is a formula equality; the top-level caller still replays the
      // whole compiled trace once as the end-to-end check.
      if (d.premises[0]->rhs != d.premises[1]->lhs)
        throw ReplayMismatch("compile_derivation: cut premises do not meet");
      Trace tr = memo.at(d.premises[0].get());
      const Trace& second = memo.at(d.premises[1].get());
      tr.steps.insert(tr.steps.end(), second.steps.begin(), second.steps.end());
      return tr;
    }
    case DerivationKind::AndE1:
      return weaken_to_left(to_tree(left(d.lhs)), to_tree(right(d.lhs)));
    case DerivationKind::AndE2:
      return weaken_to_right(to_tree(left(d.lhs)), to_tree(right(d.lhs)));
    case DerivationKind::AndI:
      return pair_traces(memo.at(d.premises[0].get()), memo.at(d.premises[1].get()));
    case DerivationKind::Dist: {
      const Trace& sub = memo.at(d.premises[0].get());
      Trace tr{to_tree(d.lhs), {}};
      tr.steps.reserve(sub.steps.size());
      for (const RuleInstance& s : sub.steps) tr.steps.push_back(shift_instance(s, {1}));
      return tr;
    }
    case DerivationKind::Trans:
      return Trace{to_tree(d.lhs), {four({}, 1, 1)}};
    case DerivationKind::Mono:
      return Trace{to_tree(d.lhs), {lambda({}, 1, d.rhs.label)}};
    case DerivationKind::Jax:
      return Trace{to_tree(d.lhs), {j_rule({}, 1, 2)}};
  }
  throw ReplayMismatch("compile_derivation: unknown derivation kind");
}

}  // namespace

Trace compile_derivation(const Derivation& d) {
  std::unordered_map<const Derivation*, Trace> memo;
  std::vector<const Derivation*> stack{&d};
  while (!stack.empty()) {
    const Derivation* cur = stack.back();
    if (memo.count(cur)) {
      stack.pop_back();
      continue;
    }
    bool ready = true;
    for (const auto& p : cur->premises)
      if (!memo.count(p.get())) {
        ready = false;
        stack.push_back(p.get());
      }
    if (!ready) continue;
    memo.emplace(cur, compile_node(*cur, memo));
    stack.pop_back();
  }
  Trace out = memo.at(&d);
  if (out.initial != to_tree(d.lhs) || trace_endpoint(out) != to_tree(d.rhs))
    throw ReplayMismatch("compile_derivation: compiled trace has the wrong endpoints");
  return out;
}

bool brute_reachability(const ModalTree& start, const ModalTree& goal, std::uint64_t step_bound,
                        std::uint64_t node_bound) {
  if (start == goal) return true;
  std::unordered_set<ModalTree, TreeHash> visited{start};
  std::vector<ModalTree> frontier{start};
  for (std::uint64_t depth = 0; depth < step_bound && !frontier.empty(); ++depth) {
    std::vector<ModalTree> next;
    for (const ModalTree& t : frontier) {
      for (const RuleInstance& r : enumerate_instances(t)) {
        ModalTree u = apply(t, r);
        if (node_count(u) > node_bound) continue;
        if (u == goal) return true;
        if (visited.insert(u).second) next.push_back(std::move(u));
      }
    }
    frontier = std::move(next);
  }
  return false;
}

}  // namespace trc
