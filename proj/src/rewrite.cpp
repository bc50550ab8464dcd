#include "trc/rewrite.hpp"

#include <utility>

namespace trc {

std::string_view rule_name(RuleKind k) {
  switch (k) {
    case RuleKind::RhoPlus: return "RhoPlus";
    case RuleKind::RhoMinus: return "RhoMinus";
    case RuleKind::Sigma: return "Sigma";
    case RuleKind::PiPlus: return "PiPlus";
    case RuleKind::PiMinus: return "PiMinus";
    case RuleKind::Four: return "Four";
    case RuleKind::Lambda: return "Lambda";
    case RuleKind::J: return "J";
  }
  return "?";
}

RuleKind rule_kind_from_name(std::string_view name) {
  if (name == "RhoPlus") return RuleKind::RhoPlus;
  if (name == "RhoMinus") return RuleKind::RhoMinus;
  if (name == "Sigma") return RuleKind::Sigma;
  if (name == "PiPlus") return RuleKind::PiPlus;
  if (name == "PiMinus") return RuleKind::PiMinus;
  if (name == "Four") return RuleKind::Four;
  if (name == "Lambda") return RuleKind::Lambda;
  if (name == "J") return RuleKind::J;
  throw ParseError("unknown rule name '" + std::string(name) + "'", 0);
}

Stage stage_of(RuleKind k) {
  switch (k) {
    case RuleKind::PiPlus: return Stage::Replicative;
    case RuleKind::Lambda:
    case RuleKind::J: return Stage::Modal;
    case RuleKind::PiMinus:
    case RuleKind::Four: return Stage::Decreasing;
    case RuleKind::RhoPlus:
    case RuleKind::RhoMinus: return Stage::Atomic;
    case RuleKind::Sigma: return Stage::Structural;
  }
  return Stage::Structural;
}

bool operator==(const RuleInstance& a, const RuleInstance& b) {
  return a.kind == b.kind && a.pos == b.pos && a.i == b.i && a.j == b.j && a.beta == b.beta;
}

std::string print_instance(const RuleInstance& r) {
  std::string out(rule_name(r.kind));
  out += '(';
  out += print_position(r.pos);
  switch (r.kind) {
    case RuleKind::RhoPlus:
    case RuleKind::RhoMinus:
    case RuleKind::PiPlus:
    case RuleKind::PiMinus:
      out += ", " + std::to_string(r.i);
      break;
    case RuleKind::Sigma:
    case RuleKind::Four:
    case RuleKind::J:
      out += ", " + std::to_string(r.i) + ", " + std::to_string(r.j);
      break;
    case RuleKind::Lambda:
      out += ", " + std::to_string(r.i) + ", b=" + std::to_string(r.beta);
      break;
  }
  out += ')';
  return out;
}

RuleInstance rho_plus(Position pos, std::uint32_t i) {
  return RuleInstance{RuleKind::RhoPlus, std::move(pos), i, 0, 0};
}
RuleInstance rho_minus(Position pos, std::uint32_t i) {
  return RuleInstance{RuleKind::RhoMinus, std::move(pos), i, 0, 0};
}
RuleInstance sigma(Position pos, std::uint32_t i, std::uint32_t j) {
  return RuleInstance{RuleKind::Sigma, std::move(pos), i, j, 0};
}
RuleInstance pi_plus(Position pos, std::uint32_t i) {
  return RuleInstance{RuleKind::PiPlus, std::move(pos), i, 0, 0};
}
RuleInstance pi_minus(Position pos, std::uint32_t i) {
  return RuleInstance{RuleKind::PiMinus, std::move(pos), i, 0, 0};
}
RuleInstance four(Position pos, std::uint32_t i, std::uint32_t j) {
  return RuleInstance{RuleKind::Four, std::move(pos), i, j, 0};
}
RuleInstance lambda(Position pos, std::uint32_t i, Label beta) {
  return RuleInstance{RuleKind::Lambda, std::move(pos), i, 0, beta};
}
RuleInstance j_rule(Position pos, std::uint32_t i, std::uint32_t j) {
  return RuleInstance{RuleKind::J, std::move(pos), i, j, 0};
}

namespace {

ModalTree& mutable_node(ModalTree& t, const Position& p) {
  ModalTree* cur = &t;
  for (std::size_t d = 0; d < p.size(); ++d) {
    std::uint32_t k = p[d];
    if (k < 1 || k > cur->children.size())
      throw InvalidPosition("position " + print_position(p) + " leaves the tree at depth " +
                            std::to_string(d));
    cur = &cur->children[k - 1].child;
  }
  return *cur;
}

void check_index(std::uint32_t i, std::size_t n) {
  if (i < 1 || i > n)
    throw IndexOutOfRange("index " + std::to_string(i) + " outside 1.." + std::to_string(n));
}

}  // namespace

void apply_in_place(ModalTree& t, const RuleInstance& r) {
  ModalTree& u = mutable_node(t, r.pos);
  switch (r.kind) {
    case RuleKind::RhoPlus: {
      check_index(r.i, u.atoms.size());
      std::string a = u.atoms[r.i - 1];
      u.atoms.insert(u.atoms.begin(), std::move(a));
      return;
    }
    case RuleKind::RhoMinus:
      check_index(r.i, u.atoms.size());
      u.atoms.erase(u.atoms.begin() + (r.i - 1));
      return;
    case RuleKind::Sigma:
      if (r.i == r.j) throw SideConditionViolated("Sigma needs distinct children, got i = j = " + std::to_string(r.i));
      check_index(r.i, u.children.size());
      check_index(r.j, u.children.size());
      std::swap(u.children[r.i - 1], u.children[r.j - 1]);
      return;
    case RuleKind::PiPlus: {
      check_index(r.i, u.children.size());
      Edge e = u.children[r.i - 1];
      u.children.insert(u.children.begin(), std::move(e));
      return;
    }
    case RuleKind::PiMinus:
      check_index(r.i, u.children.size());
      u.children.erase(u.children.begin() + (r.i - 1));
      return;
    case RuleKind::Four: {
      check_index(r.i, u.children.size());
      Edge& outer = u.children[r.i - 1];
      check_index(r.j, outer.child.children.size());
      Edge& inner = outer.child.children[r.j - 1];
      if (inner.label != outer.label)
        throw SideConditionViolated("Four needs equal labels, got " + std::to_string(outer.label) +
                                    " and " + std::to_string(inner.label));
      ModalTree grand = std::move(inner.child);  // lift out before overwriting its parent
      outer.child = std::move(grand);
      return;
    }
    case RuleKind::Lambda: {
      check_index(r.i, u.children.size());
      Edge& e = u.children[r.i - 1];
      if (!(r.beta < e.label))
        throw SideConditionViolated("Lambda needs beta below the label, got beta = " +
                                    std::to_string(r.beta) + ", label = " + std::to_string(e.label));
      e.label = r.beta;
      return;
    }
    case RuleKind::J: {
      if (r.i == r.j) throw SideConditionViolated("J needs distinct children, got i = j = " + std::to_string(r.i));
      check_index(r.i, u.children.size());
      check_index(r.j, u.children.size());
      Edge& recv = u.children[r.i - 1];
      Edge& moved = u.children[r.j - 1];
      if (!(recv.label > moved.label))
        throw SideConditionViolated("J needs label(i) > label(j), got " + std::to_string(recv.label) +
                                    " and " + std::to_string(moved.label));
      Edge taken = std::move(moved);
      recv.child.children.push_back(std::move(taken));
      u.children.erase(u.children.begin() + (r.j - 1));
      return;
    }
  }
  throw SideConditionViolated("unknown rule kind");
}

ModalTree apply(const ModalTree& t, const RuleInstance& r) {
  ModalTree out = t;
  apply_in_place(out, r);
  return out;
}

bool applicable(const ModalTree& t, const RuleInstance& r) {
  try {
    apply(t, r);
    return true;
  } catch (const Error&) {
    return false;
  }
}

std::vector<RuleInstance> enumerate_instances(const ModalTree& t) {
  std::vector<RuleInstance> out;
  for (const Position& p : positions(t)) {
    const ModalTree& u = subtree_at(t, p);
    auto n_atoms = static_cast<std::uint32_t>(u.atoms.size());
    auto n_children = static_cast<std::uint32_t>(u.children.size());
    for (std::uint32_t i = 1; i <= n_atoms; ++i) out.push_back(rho_plus(p, i));
    for (std::uint32_t i = 1; i <= n_atoms; ++i) out.push_back(rho_minus(p, i));
    for (std::uint32_t i = 1; i <= n_children; ++i)
      for (std::uint32_t j = i + 1; j <= n_children; ++j) out.push_back(sigma(p, i, j));
    for (std::uint32_t i = 1; i <= n_children; ++i) out.push_back(pi_plus(p, i));
    for (std::uint32_t i = 1; i <= n_children; ++i) out.push_back(pi_minus(p, i));
    for (std::uint32_t i = 1; i <= n_children; ++i) {
      const Edge& e = u.children[i - 1];
      for (std::uint32_t j = 1; j <= e.child.children.size(); ++j)
        if (e.child.children[j - 1].label == e.label) out.push_back(four(p, i, j));
    }
    for (std::uint32_t i = 1; i <= n_children; ++i) {
      Label l = u.children[i - 1].label;
      if (l > 0) {
        out.push_back(lambda(p, i, 0));
        if (l - 1 != 0) out.push_back(lambda(p, i, l - 1));
      }
    }
    for (std::uint32_t i = 1; i <= n_children; ++i)
      for (std::uint32_t j = 1; j <= n_children; ++j) {
        if (i == j) continue;
        if (u.children[i - 1].label > u.children[j - 1].label) out.push_back(j_rule(p, i, j));
      }
  }
  return out;
}

std::vector<ModalTree> apply_trace(const Trace& tr) {
  std::vector<ModalTree> out;
  out.reserve(tr.steps.size() + 1);
  out.push_back(tr.initial);
  for (const RuleInstance& r : tr.steps) {
    ModalTree next = out.back();
    apply_in_place(next, r);
    out.push_back(std::move(next));
  }
  return out;
}

ModalTree trace_endpoint(const Trace& tr) {
  ModalTree cur = tr.initial;
  for (const RuleInstance& r : tr.steps) apply_in_place(cur, r);
  return cur;
}

RuleInstance shift_instance(const RuleInstance& r, const Position& prefix) {
  RuleInstance out = r;
  Position p = prefix;
  p.insert(p.end(), r.pos.begin(), r.pos.end());
  out.pos = std::move(p);
  return out;
}

Trace concat(Trace a, const Trace& b) {
  if (trace_endpoint(a) != b.initial)
    throw ReplayMismatch("concat: left endpoint differs from right initial tree");
  a.steps.insert(a.steps.end(), b.steps.begin(), b.steps.end());
  return a;
}

}  // namespace trc
