#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "trc/embed.hpp"
#include "trc/macros.hpp"
#include "trc/random.hpp"
#include "trc/rewrite.hpp"

using namespace trc;

namespace {

ModalTree node(std::vector<std::string> atoms, std::vector<Edge> children) {
  ModalTree t;
  t.atoms = std::move(atoms);
  t.children = std::move(children);
  return t;
}

std::set<std::string> atom_names(const ModalTree& t) {
  std::vector<std::string> all = atom_multiset(t);
  return {all.begin(), all.end()};
}

void collect_labels(const ModalTree& t, std::set<Label>& out) {
  for (const Edge& e : t.children) {
    out.insert(e.label);
    collect_labels(e.child, out);
  }
}

std::uint64_t total_atoms(const ModalTree& t) { return atom_multiset(t).size(); }

struct Sampler {
  std::mt19937_64 gen{2718};
  RandomTreeParams params;
  Sampler() {
    params.max_nodes = 9;
    params.max_atoms_per_node = 2;
    params.num_atom_names = 2;
    params.max_label = 3;
  }
  ModalTree tree() { return random_tree(gen, params); }
};

}  // namespace

TEST_CASE("duplicating and deleting atoms") {
  ModalTree t = leaf({"p", "q", "r"});
  CHECK(apply(t, rho_plus({}, 2)) == leaf({"q", "p", "q", "r"}));
  CHECK(apply(t, rho_minus({}, 1)) == leaf({"q", "r"}));
  CHECK_THROWS_AS(apply(t, rho_plus({}, 4)), IndexOutOfRange);
  CHECK_THROWS_AS(apply(t, rho_minus({}, 0)), IndexOutOfRange);
  CHECK_THROWS_AS(apply(t, rho_plus({1}, 1)), InvalidPosition);
}

TEST_CASE("swapping, duplicating and deleting children") {
  ModalTree t = node({}, {{0, leaf({"a"})}, {1, leaf({"b"})}, {2, leaf({"c"})}});
  ModalTree swapped = apply(t, sigma({}, 1, 3));
  CHECK(swapped.children[0].label == 2);
  CHECK(swapped.children[2].label == 0);
  CHECK(apply(swapped, sigma({}, 1, 3)) == t);  // self-inverse
  CHECK_THROWS_AS(apply(t, sigma({}, 2, 2)), SideConditionViolated);

  ModalTree dup = apply(t, pi_plus({}, 2));
  REQUIRE(dup.children.size() == 4);
  CHECK(dup.children[0] == t.children[1]);  // copy lands at the front
  CHECK(dup.children[2] == t.children[1]);  // original now one slot later
  CHECK(apply(dup, pi_minus({}, 1)) == t);  // deleting the copy undoes it

  CHECK(apply(t, pi_minus({}, 2)) == node({}, {{0, leaf({"a"})}, {2, leaf({"c"})}}));
}

TEST_CASE("collapsing a repeated label keeps only the promoted grandchild") {
  // the inner node's atoms and remaining children are discarded in the same step
  ModalTree inner = node({"x"}, {{0, leaf({"s1"})}, {1, leaf({"s2"})}});
  ModalTree t = node({"r"}, {{1, inner}});
  ModalTree got = apply(t, four({}, 1, 2));
  CHECK(got == node({"r"}, {{1, leaf({"s2"})}}));

  // labels must match between the edge and the promoted grandchild's edge
  CHECK_THROWS_AS(apply(t, four({}, 1, 1)), SideConditionViolated);
  CHECK_THROWS_AS(apply(t, four({}, 1, 3)), IndexOutOfRange);
}

TEST_CASE("lowering a label") {
  ModalTree t = node({}, {{3, leaf({"p"})}});
  CHECK(apply(t, lambda({}, 1, 0)) == node({}, {{0, leaf({"p"})}}));
  CHECK(apply(t, lambda({}, 1, 2)) == node({}, {{2, leaf({"p"})}}));
  CHECK_THROWS_AS(apply(t, lambda({}, 1, 3)), SideConditionViolated);  // not strictly lower
  CHECK_THROWS_AS(apply(t, lambda({}, 1, 9)), SideConditionViolated);
}

TEST_CASE("moving an edge under a higher-labeled sibling") {
  ModalTree t = node({}, {{2, node({"a"}, {{0, leaf()}})}, {1, leaf({"b"})}});
  ModalTree got = apply(t, j_rule({}, 1, 2));
  // the moved edge lands at the END of the receiver's child list
  CHECK(got == node({}, {{2, node({"a"}, {{0, leaf()}, {1, leaf({"b"})}})}}));
  // receiver's label must exceed the moved child's
  CHECK_THROWS_AS(apply(t, j_rule({}, 2, 1)), SideConditionViolated);
  CHECK_THROWS_AS(apply(t, j_rule({}, 1, 1)), SideConditionViolated);
}

TEST_CASE("the three completeness-proof transformations replay exactly") {
  // collapse: <1><1>p to <1>p
  ModalTree t4 = to_tree(parse("<1><1>p"));
  CHECK(apply(t4, four({}, 1, 1)) == to_tree(parse("<1>p")));

  // lower: <1>p to <0>p
  CHECK(apply(to_tree(parse("<1>p")), lambda({}, 1, 0)) == to_tree(parse("<0>p")));

  // merge: <1>p & <0>q to <1>(p & <0>q)
  CHECK(apply(to_tree(parse("<1>p & <0>q")), j_rule({}, 1, 2)) ==
        to_tree(parse("<1>(p & <0>q)")));
}

TEST_CASE("rule application is local: only the addressed branch changes") {
  Sampler s;
  for (int n = 0; n < 200; ++n) {
    ModalTree t = s.tree();
    std::vector<RuleInstance> insts = enumerate_instances(t);
    if (insts.empty()) continue;
    const RuleInstance& r = insts[uniform_u64(s.gen, 0, insts.size() - 1)];
    ModalTree u = apply(t, r);
    ModalTree expected = replace_at(t, r.pos, apply(subtree_at(t, r.pos), RuleInstance{r.kind, {}, r.i, r.j, r.beta}));
    CHECK(u == expected);
  }
}

TEST_CASE("enumeration lists exactly the applicable instances in fixed order") {
  CHECK(enumerate_instances(leaf()).empty());
  CHECK(enumerate_instances(leaf({"p"})) ==
        std::vector<RuleInstance>{rho_plus({}, 1), rho_minus({}, 1)});

  // two children with labels 2 > 0: sigma both orders collapse to i<j once,
  // pi on each, no four (no grandchildren), lambda on the nonzero label
  // twice (0 and label-1), one J move
  ModalTree t = node({}, {{2, leaf()}, {0, leaf()}});
  std::vector<RuleInstance> want{
      sigma({}, 1, 2),  pi_plus({}, 1),  pi_plus({}, 2),    pi_minus({}, 1),
      pi_minus({}, 2),  lambda({}, 1, 0), lambda({}, 1, 1), j_rule({}, 1, 2),
  };
  CHECK(enumerate_instances(t) == want);

  Sampler s;
  for (int n = 0; n < 150; ++n) {
    ModalTree t2 = s.tree();
    for (const RuleInstance& r : enumerate_instances(t2)) {
      CHECK(applicable(t2, r));
      CHECK_NOTHROW(apply(t2, r));
    }
  }
}

TEST_CASE("applicable mirrors apply on perturbed instances") {
  Sampler s;
  for (int n = 0; n < 300; ++n) {
    ModalTree t = s.tree();
    std::vector<RuleInstance> insts = enumerate_instances(t);
    if (insts.empty()) continue;
    RuleInstance r = insts[uniform_u64(s.gen, 0, insts.size() - 1)];
    // perturb an index or the position to cover invalid instances too
    switch (uniform_u64(s.gen, 0, 3)) {
      case 0: r.i += static_cast<std::uint32_t>(uniform_u64(s.gen, 0, 3)); break;
      case 1: r.j += static_cast<std::uint32_t>(uniform_u64(s.gen, 0, 3)); break;
      case 2: r.pos.push_back(static_cast<std::uint32_t>(uniform_u64(s.gen, 1, 3))); break;
      default: break;
    }
    bool ok;
    try {
      apply(t, r);
      ok = true;
    } catch (const Error&) {
      ok = false;
    }
    CHECK(applicable(t, r) == ok);
  }
}

TEST_CASE("no rule introduces atom names or edge labels") {
  Sampler s;
  for (int n = 0; n < 300; ++n) {
    ModalTree t = s.tree();
    for (const RuleInstance& r : enumerate_instances(t)) {
      ModalTree u = apply(t, r);
      std::set<std::string> before = atom_names(t), after = atom_names(u);
      CHECK(std::includes(before.begin(), before.end(), after.begin(), after.end()));
      std::set<Label> lb, la;
      collect_labels(t, lb);
      collect_labels(u, la);
      if (r.kind == RuleKind::Lambda) {
        // lowering may introduce the new lower label; the maximum never grows
        if (!la.empty()) CHECK(*la.rbegin() <= *lb.rbegin());
      } else {
        CHECK(std::includes(lb.begin(), lb.end(), la.begin(), la.end()));
      }
    }
  }
}

TEST_CASE("per-rule size and label measures") {
  Sampler s;
  for (int n = 0; n < 300; ++n) {
    ModalTree t = s.tree();
    for (const RuleInstance& r : enumerate_instances(t)) {
      ModalTree u = apply(t, r);
      switch (r.kind) {
        case RuleKind::J:
          CHECK(node_count(u) == node_count(t));
          CHECK(total_atoms(u) == total_atoms(t));
          break;
        case RuleKind::PiMinus:
        case RuleKind::Four:
          CHECK(node_count(u) < node_count(t));
          break;
        case RuleKind::RhoMinus:
          CHECK(total_atoms(u) == total_atoms(t) - 1);
          break;
        case RuleKind::RhoPlus:
          CHECK(total_atoms(u) == total_atoms(t) + 1);
          break;
        case RuleKind::Lambda: {
          const ModalTree& pn = subtree_at(t, r.pos);
          const ModalTree& un = subtree_at(u, r.pos);
          CHECK(un.children[r.i - 1].label < pn.children[r.i - 1].label);
          break;
        }
        case RuleKind::Sigma:
          CHECK(canonical_form(u) == canonical_form(t));
          break;
        default:
          break;
      }
    }
  }
}

TEST_CASE("structural rules are invertible by emitted traces") {
  Sampler s;
  for (int n = 0; n < 200; ++n) {
    ModalTree t = s.tree();
    for (const RuleInstance& r : enumerate_instances(t)) {
      ModalTree u = apply(t, r);
      if (r.kind == RuleKind::Sigma) {
        CHECK(apply(u, r) == t);
      } else if (r.kind == RuleKind::RhoPlus) {
        CHECK(apply(u, rho_minus(r.pos, 1)) == t);
      } else if (r.kind == RuleKind::PiPlus) {
        CHECK(apply(u, pi_minus(r.pos, 1)) == t);
      }
    }
  }
}

TEST_CASE("trace replay and concatenation") {
  ModalTree t = to_tree(parse("<1><1>p"));
  Trace empty{t, {}};
  CHECK(apply_trace(empty) == std::vector<ModalTree>{t});
  CHECK(trace_endpoint(empty) == t);

  Trace one{t, {four({}, 1, 1)}};
  std::vector<ModalTree> mids = apply_trace(one);
  REQUIRE(mids.size() == 2);
  CHECK(mids[1] == to_tree(parse("<1>p")));

  Trace two{to_tree(parse("<1>p")), {lambda({}, 1, 0)}};
  Trace joined = concat(one, two);
  CHECK(trace_endpoint(joined) == to_tree(parse("<0>p")));
  CHECK(joined.steps.size() == 2);

  Trace wrong{to_tree(parse("<1>q")), {}};
  CHECK_THROWS_AS(concat(one, wrong), ReplayMismatch);

  Trace broken{t, {four({}, 1, 1), four({}, 1, 1)}};
  CHECK_THROWS_AS(apply_trace(broken), Error);  // second step no longer applies
}

TEST_CASE("shifting instances into a context") {
  CHECK(shift_instance(lambda({}, 1, 0), {2}) == lambda({2}, 1, 0));
  CHECK(shift_instance(j_rule({1}, 1, 2), {3, 1}) == j_rule({3, 1, 1}, 1, 2));

  Sampler s;
  for (int n = 0; n < 200; ++n) {
    ModalTree t = s.tree();
    std::vector<Position> ps = positions(t);
    Position k = ps[uniform_u64(s.gen, 0, ps.size() - 1)];
    ModalTree sub = subtree_at(t, k);
    std::vector<RuleInstance> insts = enumerate_instances(sub);
    if (insts.empty()) continue;
    const RuleInstance& r = insts[uniform_u64(s.gen, 0, insts.size() - 1)];
    CHECK(apply(t, shift_instance(r, k)) == replace_at(t, k, apply(sub, r)));
  }
}

TEST_CASE("atom permutation macro reaches any arrangement") {
  std::mt19937_64 gen(17);
  Sampler s;
  for (int n = 0; n < 200; ++n) {
    ModalTree t = s.tree();
    std::vector<Position> ps = positions(t);
    Position p = ps[uniform_u64(gen, 0, ps.size() - 1)];
    std::size_t cnt = subtree_at(t, p).atoms.size();
    std::vector<std::uint32_t> order(cnt);
    for (std::size_t k = 0; k < cnt; ++k) order[k] = static_cast<std::uint32_t>(k + 1);
    std::shuffle(order.begin(), order.end(), gen);

    Trace tr = permute_atoms(t, p, order);
    CHECK(tr.initial == t);
    ModalTree end = trace_endpoint(tr);
    const ModalTree& before = subtree_at(t, p);
    const ModalTree& after = subtree_at(end, p);
    REQUIRE(after.atoms.size() == cnt);
    for (std::size_t k = 0; k < cnt; ++k) CHECK(after.atoms[k] == before.atoms[order[k] - 1]);
    CHECK(replace_at(end, p, before) == t);  // everything else untouched
  }
}

TEST_CASE("sum macros end at their stated trees") {
  Sampler s;
  for (int n = 0; n < 100; ++n) {
    ModalTree a = s.tree();
    ModalTree b = s.tree();

    Trace d = duplicate_self(a);
    CHECK(d.initial == a);
    CHECK(trace_endpoint(d) == sum(a, a));

    CHECK(trace_endpoint(weaken_to_left(a, b)) == a);
    CHECK(trace_endpoint(weaken_to_right(a, b)) == b);
    CHECK(trace_endpoint(sum_swap(a, b)) == sum(b, a));

    Trace ra = random_trace(s.gen, a, 3);
    Trace rb = random_trace(s.gen, b, 3);

    Trace ll = lift_sum_left(ra, b);
    CHECK(ll.initial == sum(a, b));
    CHECK(trace_endpoint(ll) == sum(trace_endpoint(ra), b));

    Trace lr = lift_sum_right(rb, a);
    CHECK(lr.initial == sum(a, b));
    CHECK(trace_endpoint(lr) == sum(a, trace_endpoint(rb)));

    Trace st = sum_traces(ra, rb);
    CHECK(st.initial == sum(a, b));
    CHECK(trace_endpoint(st) == sum(trace_endpoint(ra), trace_endpoint(rb)));
  }
}

TEST_CASE("pairing two traces from a shared start") {
  Sampler s;
  for (int n = 0; n < 100; ++n) {
    ModalTree t = s.tree();
    Trace tr2 = random_trace(s.gen, t, 3);
    Trace tr3 = random_trace(s.gen, t, 3);
    Trace paired = pair_traces(tr2, tr3);
    CHECK(paired.initial == t);
    CHECK(trace_endpoint(paired) == sum(trace_endpoint(tr2), trace_endpoint(tr3)));
  }
}

TEST_CASE("duplicate_self on an atom-only node uses only atom duplications") {
  Trace d = duplicate_self(leaf({"p"}));
  CHECK(trace_endpoint(d) == leaf({"p", "p"}));
  for (const RuleInstance& r : d.steps) CHECK(r.kind == RuleKind::RhoPlus);
}

TEST_CASE("rule names round-trip") {
  for (RuleKind k : {RuleKind::RhoPlus, RuleKind::RhoMinus, RuleKind::Sigma, RuleKind::PiPlus,
                     RuleKind::PiMinus, RuleKind::Four, RuleKind::Lambda, RuleKind::J}) {
    CHECK(rule_kind_from_name(rule_name(k)) == k);
  }
  CHECK_THROWS_AS(rule_kind_from_name("Quux"), ParseError);
}
