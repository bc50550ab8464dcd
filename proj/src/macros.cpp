#include "trc/macros.hpp"

#include <algorithm>

namespace trc {

namespace {

void validate(const Trace& tr, const ModalTree& expected, const char* what) {
  if (trace_endpoint(tr) != expected)
    throw ReplayMismatch(std::string(what) + ": endpoint differs from the expected tree");
}

// Splices `piece` onto `acc` whose endpoint is already known to be `acc_end`
// (each piece arrives with its own validated endpoint, so the junction check
// is a tree equality, not a replay).
void splice_known(Trace& acc, const ModalTree& acc_end, const Trace& piece, const char* what) {
  if (piece.initial != acc_end)
    throw ReplayMismatch(std::string(what) + ": junction does not meet the accumulated endpoint");
  acc.steps.insert(acc.steps.end(), piece.steps.begin(), piece.steps.end());
}

// lift_sum_left with the endpoint of tr supplied by the caller; validates the
// lifted run against it with a single replay.
Trace lift_left_known(const Trace& tr, const ModalTree& b, const ModalTree& tr_end) {
  Trace out{sum(tr.initial, b), tr.steps};
  validate(out, sum(tr_end, b), "lift_sum_left");
  return out;
}

Trace lift_right_known(const Trace& tr, const ModalTree& a, const ModalTree& tr_end);

}  // namespace

Trace permute_atoms(const ModalTree& t, const Position& p, const std::vector<std::uint32_t>& order) {
  const ModalTree& u = subtree_at(t, p);
  auto n = static_cast<std::uint32_t>(u.atoms.size());
  if (order.size() != n) throw IndexOutOfRange("permute_atoms: order has wrong length");
  std::vector<bool> seen(n, false);
  for (std::uint32_t v : order) {
    if (v < 1 || v > n || seen[v - 1]) throw IndexOutOfRange("permute_atoms: order is not a permutation");
    seen[v - 1] = true;
  }
  Trace tr{t, {}};
  // Build the target order at the front, last element first, then drop the
  // originals, which sit at positions n+1..2n.
  for (std::uint32_t k = n; k >= 1; --k) {
    std::uint32_t prepends_done = n - k;
    tr.steps.push_back(rho_plus(p, order[k - 1] + prepends_done));
  }
  for (std::uint32_t k = 0; k < n; ++k) tr.steps.push_back(rho_minus(p, n + 1));

  ModalTree target_node = u;
  for (std::uint32_t k = 0; k < n; ++k) target_node.atoms[k] = u.atoms[order[k] - 1];
  validate(tr, replace_at(t, p, target_node), "permute_atoms");
  return tr;
}

Trace duplicate_self(const ModalTree& t) {
  auto n = static_cast<std::uint32_t>(t.atoms.size());
  auto m = static_cast<std::uint32_t>(t.children.size());
  Trace tr{t, {}};
  // Each duplication copies the element whose original index was n (resp. m);
  // the shift from previous prepends keeps that index constant.
  for (std::uint32_t k = 0; k < n; ++k) tr.steps.push_back(rho_plus({}, n));
  for (std::uint32_t k = 0; k < m; ++k) tr.steps.push_back(pi_plus({}, m));
  validate(tr, sum(t, t), "duplicate_self");
  return tr;
}

Trace weaken_to_left(const ModalTree& a, const ModalTree& b) {
  Trace tr{sum(a, b), {}};
  auto na = static_cast<std::uint32_t>(a.atoms.size());
  auto ma = static_cast<std::uint32_t>(a.children.size());
  for (std::size_t k = 0; k < b.atoms.size(); ++k) tr.steps.push_back(rho_minus({}, na + 1));
  for (std::size_t k = 0; k < b.children.size(); ++k) tr.steps.push_back(pi_minus({}, ma + 1));
  validate(tr, a, "weaken_to_left");
  return tr;
}

Trace weaken_to_right(const ModalTree& a, const ModalTree& b) {
  Trace tr{sum(a, b), {}};
  for (std::size_t k = 0; k < a.atoms.size(); ++k) tr.steps.push_back(rho_minus({}, 1));
  for (std::size_t k = 0; k < a.children.size(); ++k) tr.steps.push_back(pi_minus({}, 1));
  validate(tr, b, "weaken_to_right");
  return tr;
}

Trace lift_sum_left(const Trace& tr, const ModalTree& b) {
  return lift_left_known(tr, b, trace_endpoint(tr));
}

namespace {

Trace lift_right_known(const Trace& tr, const ModalTree& a, const ModalTree& tr_end) {
  auto da = static_cast<std::uint32_t>(a.atoms.size());
  auto ga = static_cast<std::uint32_t>(a.children.size());
  Trace out{sum(a, tr.initial), {}};
  ModalTree cur = out.initial;
  auto emit = [&](RuleInstance s) {
    apply_in_place(cur, s);
    out.steps.push_back(std::move(s));
  };
  for (RuleInstance r : tr.steps) {
    if (r.pos.empty() && r.kind == RuleKind::RhoPlus && da > 0) {
      // The duplicate lands in front of a's atoms; rotate it to the start of
      // the right segment, where it would sit had the rule acted on tr alone.
      emit(rho_plus({}, da + r.i));
      auto n = static_cast<std::uint32_t>(cur.atoms.size());
      std::vector<std::uint32_t> order;
      order.reserve(n);
      for (std::uint32_t k = 2; k <= da + 1; ++k) order.push_back(k);
      order.push_back(1);
      for (std::uint32_t k = da + 2; k <= n; ++k) order.push_back(k);
      Trace rot = permute_atoms(cur, {}, order);
      for (RuleInstance& s : rot.steps) emit(std::move(s));
      continue;
    }
    if (r.pos.empty() && r.kind == RuleKind::PiPlus && ga > 0) {
      // Same for a duplicated child: bubble it rightward past a's children.
      emit(pi_plus({}, ga + r.i));
      for (std::uint32_t k = 1; k <= ga; ++k) emit(sigma({}, k, k + 1));
      continue;
    }
    if (r.pos.empty()) {
      switch (r.kind) {
        case RuleKind::RhoPlus:
        case RuleKind::RhoMinus:
          r.i += da;
          break;
        case RuleKind::Sigma:
        case RuleKind::J:
          r.i += ga;
          r.j += ga;
          break;
        case RuleKind::PiPlus:
        case RuleKind::PiMinus:
        case RuleKind::Lambda:
          r.i += ga;
          break;
        case RuleKind::Four:
          r.i += ga;  // j indexes the grandchild list, unaffected
          break;
      }
    } else {
      r.pos[0] += ga;
    }
    emit(std::move(r));
  }
  // `cur` tracked every emitted step, so the endpoint needs no second replay.
  if (cur != sum(a, tr_end))
    throw ReplayMismatch("lift_sum_right: endpoint differs from the expected tree");
  return out;
}

}  // namespace

Trace lift_sum_right(const Trace& tr, const ModalTree& a) {
  return lift_right_known(tr, a, trace_endpoint(tr));
}

Trace sum_swap(const ModalTree& a, const ModalTree& b) {
  ModalTree t = sum(a, b);
  auto na = static_cast<std::uint32_t>(a.atoms.size());
  auto nb = static_cast<std::uint32_t>(b.atoms.size());
  auto ma = static_cast<std::uint32_t>(a.children.size());
  auto mb = static_cast<std::uint32_t>(b.children.size());

  Trace tr{t, {}};
  if (na + nb > 0) {
    std::vector<std::uint32_t> order;
    order.reserve(na + nb);
    for (std::uint32_t k = 1; k <= nb; ++k) order.push_back(na + k);
    for (std::uint32_t k = 1; k <= na; ++k) order.push_back(k);
    Trace atoms_tr = permute_atoms(t, {}, order);
    tr.steps = std::move(atoms_tr.steps);
  }
  // Walk each b-child left past the remaining a-children by adjacent swaps.
  for (std::uint32_t d = 0; d < mb; ++d) {
    // b's d-th child starts at position ma + d + 1 and has d swapped b-children
    // in front of it at positions 1..d? No: previously moved b-children occupy
    // positions 1..d, a-children occupy d+1..d+ma, so it walks to position d+1.
    for (std::uint32_t k = ma + d; k >= d + 1; --k) tr.steps.push_back(sigma({}, k, k + 1));
  }
  validate(tr, sum(b, a), "sum_swap");
  return tr;
}

Trace pair_traces(const Trace& tr2, const Trace& tr3) {
  if (tr2.initial != tr3.initial)
    throw ReplayMismatch("pair_traces: the two traces start from different trees");
  const ModalTree& t = tr2.initial;
  ModalTree u = trace_endpoint(tr2);
  ModalTree v = trace_endpoint(tr3);
  // Every piece validates its own endpoint, so the junctions reduce to tree
  // equalities and the composite needs no whole-run replay.
  Trace out = duplicate_self(t);
  splice_known(out, sum(t, t), lift_left_known(tr2, t, u), "pair_traces");
  splice_known(out, sum(u, t), sum_swap(u, t), "pair_traces");
  splice_known(out, sum(t, u), lift_left_known(tr3, u, v), "pair_traces");
  splice_known(out, sum(v, u), sum_swap(v, u), "pair_traces");
  return out;  // ends at sum(u, v) by sum_swap's validated postcondition
}

Trace sum_traces(const Trace& tr1, const Trace& tr2) {
  ModalTree e1 = trace_endpoint(tr1);
  ModalTree e2 = trace_endpoint(tr2);
  Trace out = lift_left_known(tr1, tr2.initial, e1);
  splice_known(out, sum(e1, tr2.initial), lift_right_known(tr2, e1, e2), "sum_traces");
  return out;  // ends at sum(e1, e2) by the lift's validated postcondition
}

}  // namespace trc
