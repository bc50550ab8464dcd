#include "trc/normalize.hpp"

#include <algorithm>

#include "trc/align.hpp"

namespace trc {

Trace to_trace(const NormalTrace& nt) {
  Trace tr;
  tr.initial = nt.initial;
  for (const auto* part :
       {&nt.replicative, &nt.modal, &nt.decreasing, &nt.atomic, &nt.structural})
    tr.steps.insert(tr.steps.end(), part->begin(), part->end());
  return tr;
}

NormalTrace split_stages(const Trace& tr) {
  NormalTrace nt;
  nt.initial = tr.initial;
  Stage prev = Stage::Replicative;
  for (const RuleInstance& r : tr.steps) {
    Stage s = stage_of(r.kind);
    if (s < prev)
      throw SideConditionViolated("split_stages: steps are not stage-ordered at " +
                                  print_instance(r));
    prev = s;
    switch (s) {
      case Stage::Replicative: nt.replicative.push_back(r); break;
      case Stage::Modal: nt.modal.push_back(r); break;
      case Stage::Decreasing: nt.decreasing.push_back(r); break;
      case Stage::Atomic: nt.atomic.push_back(r); break;
      case Stage::Structural: nt.structural.push_back(r); break;
    }
  }
  return nt;
}

bool is_normal(const std::vector<RuleInstance>& steps) {
  for (std::size_t k = 1; k < steps.size(); ++k)
    if (stage_of(steps[k - 1].kind) > stage_of(steps[k].kind)) return false;
  return true;
}

bool is_normal(const Trace& tr) { return is_normal(tr.steps); }

namespace {

bool starts_with(const Position& k, const Position& p) {
  return k.size() >= p.size() && std::equal(p.begin(), p.end(), k.begin());
}

std::uint32_t transpose(std::uint32_t c, std::uint32_t a, std::uint32_t b) {
  if (c == a) return b;
  if (c == b) return a;
  return c;
}

// Images of the pre-tree node address k after applying r to base: the node
// can stay put, move, fork into two copies, or disappear.
std::vector<Position> forward_positions(const ModalTree& base, const RuleInstance& r,
                                        const Position& k) {
  const Position& p = r.pos;
  if (!(k.size() > p.size() && starts_with(k, p))) return {k};
  std::size_t n = p.size();
  std::uint32_t c = k[n];
  switch (r.kind) {
    case RuleKind::RhoPlus:
    case RuleKind::RhoMinus:
    case RuleKind::Lambda:
      return {k};
    case RuleKind::Sigma: {
      Position out = k;
      out[n] = transpose(c, r.i, r.j);
      return {out};
    }
    case RuleKind::PiPlus: {
      if (c == r.i) {
        Position front = k;
        front[n] = 1;
        Position shifted = k;
        shifted[n] = c + 1;
        return {front, shifted};
      }
      Position out = k;
      out[n] = c + 1;
      return {out};
    }
    case RuleKind::PiMinus: {
      if (c == r.i) return {};
      Position out = k;
      if (c > r.i) out[n] = c - 1;
      return {out};
    }
    case RuleKind::Four: {
      if (c != r.i) return {k};
      if (k.size() == n + 1) return {};  // the collapsed node's own lists are dropped
      if (k[n + 1] != r.j) return {};    // sibling branches of the kept grandchild too
      Position out(k.begin(), k.begin() + n + 1);
      out.insert(out.end(), k.begin() + n + 2, k.end());
      return {out};
    }
    case RuleKind::J: {
      Position pi = p;
      pi.push_back(r.i);
      auto g = static_cast<std::uint32_t>(subtree_at(base, pi).children.size());
      std::uint32_t ip = r.i - (r.i > r.j ? 1 : 0);
      Position out;
      if (c == r.j) {
        out.assign(p.begin(), p.end());
        out.push_back(ip);
        out.push_back(g + 1);
        out.insert(out.end(), k.begin() + n + 1, k.end());
      } else if (c == r.i) {
        out = k;
        out[n] = ip;
      } else {
        out = k;
        out[n] = c - (c > r.j ? 1 : 0);
      }
      return {out};
    }
  }
  return {k};
}

// r1 = Sigma(Q, a, b), r2 = mu of any lower stage. The swap is pulled
// through mu: mu is re-addressed onto the unswapped tree, and whatever of the
// swap survives mu is reissued as Sigma steps afterwards.
std::vector<RuleInstance> swap_after_sigma(const ModalTree& t0, const RuleInstance& sg,
                                           const RuleInstance& mu, const ModalTree& t2) {
  const Position& q = sg.pos;
  RuleInstance m = mu;
  if (m.pos.size() > q.size() && starts_with(m.pos, q))
    m.pos[q.size()] = transpose(m.pos[q.size()], sg.i, sg.j);
  if (mu.pos == q) {
    switch (m.kind) {
      case RuleKind::PiPlus:
      case RuleKind::PiMinus:
      case RuleKind::Lambda:
      case RuleKind::Four:
        m.i = transpose(m.i, sg.i, sg.j);
        break;
      case RuleKind::J:
        m.i = transpose(m.i, sg.i, sg.j);
        m.j = transpose(m.j, sg.i, sg.j);
        break;
      default:
        break;  // atom indices are untouched by a child swap
    }
  }
  if (m.kind == RuleKind::Four) {
    // the grandchild index lives one node below the rule position
    Position pd = m.pos;
    pd.push_back(m.i);
    if (pd == q) m.j = transpose(m.j, sg.i, sg.j);
  }
  std::vector<RuleInstance> out{m};
  for (RuleInstance& s : sigma_diff(apply(t0, m), t2)) out.push_back(std::move(s));
  return out;
}

// r1 = RhoPlus/RhoMinus, r2 = mu of a lower stage. An atom edit commutes with
// everything: mu goes first verbatim and the edit is replayed at every image
// of its node (which a duplication forks and a deletion may drop).
std::vector<RuleInstance> swap_after_rho(const ModalTree& t0, const RuleInstance& rho,
                                         const RuleInstance& mu) {
  std::vector<RuleInstance> out{mu};
  for (const Position& img : forward_positions(t0, mu, rho.pos)) {
    RuleInstance c = rho;
    c.pos = img;
    out.push_back(std::move(c));
  }
  return out;
}

// r1 = PiMinus/Four, r2 = Lambda/J. The modal step moves first; the three
// collisions where the modal step touches the collapsed edge get their own
// shapes, everything else is plain re-addressing.
std::vector<RuleInstance> swap_decreasing_modal(const ModalTree& t0, const RuleInstance& dl,
                                                const RuleInstance& th) {
  const Position& p = dl.pos;
  if (dl.kind == RuleKind::Four) {
    std::uint32_t d = dl.i, e = dl.j;
    if (th.kind == RuleKind::Lambda && th.pos == p && th.i == d) {
      // lowering the collapsed edge: lower both collapsing edges first
      Position pd = p;
      pd.push_back(d);
      return {lambda(p, d, th.beta), lambda(pd, e, th.beta), four(p, d, e)};
    }
    if (th.kind == RuleKind::J && th.pos == p && th.j == d) {
      // the collapsed edge is the one being moved: move it whole, collapse inside
      std::uint32_t recv = th.i;
      std::uint32_t recv_after = recv - (recv > d ? 1 : 0);
      Position pr = p;
      pr.push_back(recv);
      auto g = static_cast<std::uint32_t>(subtree_at(t0, pr).children.size());
      Position pra = p;
      pra.push_back(recv_after);
      return {j_rule(p, recv, d), four(pra, g + 1, e)};
    }
    if (th.kind == RuleKind::J && th.pos == p && th.i == d) {
      // the collapsed edge is the receiver: append outside, pass inward, collapse
      std::uint32_t mov = th.j;
      std::uint32_t d_after = d - (d > mov ? 1 : 0);
      Position pd = p;
      pd.push_back(d);
      auto g = static_cast<std::uint32_t>(subtree_at(t0, pd).children.size());
      Position pda = p;
      pda.push_back(d_after);
      return {j_rule(p, d, mov), j_rule(pda, e, g + 1), four(p, d_after, e)};
    }
  }

  RuleInstance thp = th;  // the modal step, pulled back before the deletion
  if (dl.kind == RuleKind::PiMinus) {
    std::uint32_t dd = dl.i;
    if (thp.pos.size() > p.size() && starts_with(thp.pos, p)) {
      if (thp.pos[p.size()] >= dd) thp.pos[p.size()] += 1;
    } else if (thp.pos == p) {
      if (thp.i >= dd) thp.i += 1;
      if (thp.kind == RuleKind::J && thp.j >= dd) thp.j += 1;
    }
  } else {  // Four(p, d, e): addresses under the merged slot gain the e hop
    if (thp.pos.size() > p.size() && starts_with(thp.pos, p) && thp.pos[p.size()] == dl.i)
      thp.pos.insert(thp.pos.begin() + static_cast<std::ptrdiff_t>(p.size()) + 1, dl.j);
  }

  RuleInstance ds = dl;
  if (thp.kind == RuleKind::J) {
    ds.pos = forward_positions(t0, thp, p).at(0);
    if (p == thp.pos) ds.i -= (ds.i > thp.j ? 1 : 0);
  }
  return {thp, ds};
}

// r1 = PiMinus/Four, r2 = PiPlus. The duplication is pulled back before the
// deletion; the deletion is then replayed at each image, and duplicating the
// very child being collapsed collapses both copies.
std::vector<RuleInstance> swap_decreasing_replicative(const ModalTree& t0, const RuleInstance& dl,
                                                      const RuleInstance& pp) {
  const Position& p = dl.pos;
  RuleInstance p2 = pp;
  if (dl.kind == RuleKind::PiMinus) {
    std::uint32_t dd = dl.i;
    if (p2.pos.size() > p.size() && starts_with(p2.pos, p)) {
      if (p2.pos[p.size()] >= dd) p2.pos[p.size()] += 1;
    } else if (p2.pos == p) {
      if (p2.i >= dd) p2.i += 1;
    }
  } else {
    if (p2.pos.size() > p.size() && starts_with(p2.pos, p) && p2.pos[p.size()] == dl.i)
      p2.pos.insert(p2.pos.begin() + static_cast<std::ptrdiff_t>(p.size()) + 1, dl.j);
  }

  std::vector<RuleInstance> out{p2};
  if (p2.pos == p) {
    // the duplication shifts every slot of the deleted/merged child's node
    if (dl.kind == RuleKind::Four && p2.i == dl.i) {
      out.push_back(four(p, 1, dl.j));
      out.push_back(four(p, dl.i + 1, dl.j));
    } else if (dl.kind == RuleKind::Four) {
      out.push_back(four(p, dl.i + 1, dl.j));
    } else {
      out.push_back(pi_minus(p, dl.i + 1));
    }
  } else {
    for (const Position& img : forward_positions(t0, p2, p)) {
      RuleInstance c = dl;
      c.pos = img;
      out.push_back(std::move(c));
    }
  }
  return out;
}

// r1 = Lambda/J, r2 = PiPlus. A lowering is replayed at every image of its
// edge; a merge being duplicated (or its appended edge) needs the bespoke
// shapes, other duplications commute by re-addressing.
std::vector<RuleInstance> swap_modal_replicative(const ModalTree& t0, const RuleInstance& th,
                                                 const RuleInstance& pp) {
  const Position& p = th.pos;
  if (th.kind == RuleKind::Lambda) {
    std::uint32_t c = th.i;
    std::vector<RuleInstance> out{pp};
    if (pp.pos == p) {
      if (pp.i == c) {
        out.push_back(lambda(p, 1, th.beta));
        out.push_back(lambda(p, c + 1, th.beta));
      } else {
        out.push_back(lambda(p, c + 1, th.beta));
      }
    } else {
      for (const Position& img : forward_positions(t0, pp, p))
        out.push_back(lambda(img, c, th.beta));
    }
    return out;
  }

  // th = J(p, recv, mov)
  std::uint32_t recv = th.i, mov = th.j;
  std::uint32_t recv_after = recv - (recv > mov ? 1 : 0);
  Position p_recv = p;
  p_recv.push_back(recv);
  auto g = static_cast<std::uint32_t>(subtree_at(t0, p_recv).children.size());
  Position p_recv_after = p;
  p_recv_after.push_back(recv_after);

  if (pp.pos == p && pp.i == recv_after) {
    // duplicating the merged child: duplicate both ingredients, merge twice
    return {pi_plus(p, recv), pi_plus(p, mov + 1), j_rule(p, 2, 1),
            j_rule(p, recv + 1, mov + 1)};
  }
  if (pp.pos == p_recv_after && pp.i == g + 1) {
    // duplicating the appended edge: merge a spare copy in, rotate it home
    std::vector<RuleInstance> out{pi_plus(p, mov), j_rule(p, recv + 1, mov + 1),
                                  j_rule(p, recv_after + 1, 1)};
    for (std::uint32_t k = g + 1; k >= 1; --k) out.push_back(sigma(p_recv_after, k, k + 1));
    return out;
  }
  if (pp.pos == p) {
    // some other sibling: account for the un-erased moved slot
    return {pi_plus(p, pp.i + (pp.i >= mov ? 1 : 0)), j_rule(p, recv + 1, mov + 1)};
  }

  RuleInstance p2 = pp;
  if (pp.pos.size() > p.size() && starts_with(pp.pos, p)) {
    std::uint32_t c0 = pp.pos[p.size()];
    if (c0 == recv_after) {
      if (pp.pos.size() > p.size() + 1) {
        Position rebuilt = p;
        if (pp.pos[p.size() + 1] == g + 1) {
          rebuilt.push_back(mov);  // inside the moved subtree
          rebuilt.insert(rebuilt.end(), pp.pos.begin() + static_cast<std::ptrdiff_t>(p.size()) + 2,
                         pp.pos.end());
        } else {
          rebuilt.push_back(recv);  // inside the receiver's original part
          rebuilt.insert(rebuilt.end(), pp.pos.begin() + static_cast<std::ptrdiff_t>(p.size()) + 1,
                         pp.pos.end());
        }
        p2.pos = std::move(rebuilt);
      } else {
        p2.pos = p_recv;  // the merged node itself, duplicating a kept child
      }
    } else {
      p2.pos[p.size()] = c0 + (c0 >= mov ? 1 : 0);
    }
  }
  std::vector<RuleInstance> out{p2};
  for (const Position& img : forward_positions(t0, p2, p)) out.push_back(j_rule(img, recv, mov));
  return out;
}

}  // namespace

std::vector<RuleInstance> swap_adjacent(const ModalTree& t, const RuleInstance& r1,
                                        const RuleInstance& r2) {
  Stage s1 = stage_of(r1.kind);
  Stage s2 = stage_of(r2.kind);
  if (!(s1 > s2))
    throw NotAnInversion("swap_adjacent: " + print_instance(r1) + " then " + print_instance(r2) +
                         " is already stage-ordered");
  ModalTree t1 = apply(t, r1);
  ModalTree t2 = apply(t1, r2);

  std::vector<RuleInstance> out;
  if (s1 == Stage::Structural) {
    out = swap_after_sigma(t, r1, r2, t2);
  } else if (s1 == Stage::Atomic) {
    out = swap_after_rho(t, r1, r2);
  } else if (s1 == Stage::Decreasing) {
    out = s2 == Stage::Modal ? swap_decreasing_modal(t, r1, r2)
                             : swap_decreasing_replicative(t, r1, r2);
  } else {  // Modal over Replicative
    out = swap_modal_replicative(t, r1, r2);
  }

  ModalTree cur = t;
  try {
    for (const RuleInstance& r : out) cur = apply(cur, r);
  } catch (const Error& e) {
    throw ReplayMismatch(std::string("swap_adjacent: replacement fails to replay: ") + e.what());
  }
  if (cur != t2) throw ReplayMismatch("swap_adjacent: replacement ends at the wrong tree");
  return out;
}

std::vector<RuleInstance> pi_plus_reorder(const ModalTree& t, std::vector<RuleInstance> steps) {
  for (const RuleInstance& s : steps)
    if (s.kind != RuleKind::PiPlus)
      throw SideConditionViolated("pi_plus_reorder: only PiPlus steps allowed, got " +
                                  print_instance(s));
  ModalTree target = trace_endpoint(Trace{t, steps});

  std::vector<RuleInstance> out;
  for (const RuleInstance& s : steps) {
    out.push_back(s);
    std::size_t j = out.size() - 1;
    while (j > 0 && out[j - 1].pos.size() > out[j].pos.size()) {
      RuleInstance deep = out[j - 1];
      RuleInstance shallow = out[j];
      const Position& pa = deep.pos;
      const Position& pb = shallow.pos;
      std::vector<RuleInstance> repl;
      if (!starts_with(pa, pb)) {
        repl = {shallow, deep};  // independent branches commute verbatim
      } else {
        std::uint32_t l = pa[pb.size()];
        Position rest(pa.begin() + static_cast<std::ptrdiff_t>(pb.size()) + 1, pa.end());
        Position shifted = pb;
        shifted.push_back(l + 1);
        shifted.insert(shifted.end(), rest.begin(), rest.end());
        if (l != shallow.i) {
          repl = {shallow, pi_plus(shifted, deep.i)};
        } else {
          // the shallow duplication copies the deep one's branch: replay in both
          Position front = pb;
          front.push_back(1);
          front.insert(front.end(), rest.begin(), rest.end());
          repl = {shallow, pi_plus(shifted, deep.i), pi_plus(front, deep.i)};
        }
      }
      out.erase(out.begin() + static_cast<std::ptrdiff_t>(j) - 1,
                out.begin() + static_cast<std::ptrdiff_t>(j) + 1);
      out.insert(out.begin() + static_cast<std::ptrdiff_t>(j) - 1, repl.begin(), repl.end());
      j -= 1;
    }
  }

  ModalTree cur = t;
  for (const RuleInstance& r : out) cur = apply(cur, r);
  if (cur != target) throw ReplayMismatch("pi_plus_reorder: replay misses the original endpoint");
  return out;
}

std::vector<RuleInstance> pi_plus_width_swap(const ModalTree& t, const RuleInstance& a,
                                             const RuleInstance& b) {
  if (a.kind != RuleKind::PiPlus || b.kind != RuleKind::PiPlus)
    throw SideConditionViolated("pi_plus_width_swap: both steps must be PiPlus");
  if (a.pos != b.pos)
    throw SideConditionViolated("pi_plus_width_swap: steps must target the same node");
  if (!(b.i > 1) || b.i == a.i + 1)
    throw SideConditionViolated(
        "pi_plus_width_swap: needs 1 < second index and second != first + 1, got " +
        std::to_string(a.i) + " then " + std::to_string(b.i));
  ModalTree t2 = apply(apply(t, a), b);
  std::vector<RuleInstance> out{pi_plus(a.pos, b.i - 1), pi_plus(a.pos, a.i + 1),
                                sigma(a.pos, 1, 2)};
  ModalTree cur = t;
  for (const RuleInstance& r : out) cur = apply(cur, r);
  if (cur != t2) throw ReplayMismatch("pi_plus_width_swap: replacement ends at the wrong tree");
  return out;
}

NormalizeResult normalize(const Trace& tr, const NormalizeOptions& opts) {
  NormalizeResult res;
  std::vector<RuleInstance> out;
  std::vector<ModalTree> trees{tr.initial};  // trees[k] is the tree before out[k]

  for (const RuleInstance& s : tr.steps) {
    out.push_back(s);
    trees.push_back(apply(trees.back(), s));
    for (;;) {
      std::size_t k = 0;
      bool found = false;
      for (std::size_t x = out.size(); x >= 2; --x) {
        if (stage_of(out[x - 2].kind) > stage_of(out[x - 1].kind)) {
          k = x - 2;
          found = true;
          break;
        }
      }
      if (!found) break;
      if (res.swaps_used >= opts.max_swaps) {
        res.status = NormalizeStatus::SwapBudgetExhausted;
        return res;
      }
      ++res.swaps_used;
      std::vector<RuleInstance> repl = swap_adjacent(trees[k], out[k], out[k + 1]);
      out.erase(out.begin() + static_cast<std::ptrdiff_t>(k),
                out.begin() + static_cast<std::ptrdiff_t>(k) + 2);
      out.insert(out.begin() + static_cast<std::ptrdiff_t>(k), repl.begin(), repl.end());
      trees.resize(k + 1);
      for (std::size_t x = k; x < out.size(); ++x) trees.push_back(apply(trees.back(), out[x]));
    }
  }

  if (!is_normal(out)) throw ReplayMismatch("normalize: bubbling ended on an unordered sequence");
  if (trees.back() != trace_endpoint(tr)) throw ReplayMismatch("normalize: endpoint drifted");
  res.normal = split_stages(Trace{tr.initial, std::move(out)});
  res.status = NormalizeStatus::Ok;
  return res;
}

}  // namespace trc
