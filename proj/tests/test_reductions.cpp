#include <doctest.h>

#include "polysync/io.hpp"
#include "polysync/reductions.hpp"
#include "support.hpp"

using namespace polysync;
using namespace testsupport;

namespace {

Automaton unary_cycle(int n) {
  Automaton a = new_automaton(Kind::Dcsa, alphabet_of(1), n, {});
  for (int q = 0; q < n; ++q) a.add_transition(q, 0, (q + 1) % n);
  return a;
}

Automaton unary_identity(int n) {
  Automaton a = new_automaton(Kind::Dcsa, alphabet_of(1), n, {});
  for (int q = 0; q < n; ++q) a.add_transition(q, 0, q);
  return a;
}

SetTransporterInstance inst_of(Automaton a, std::vector<int> s, std::vector<int> t) {
  SetTransporterInstance inst{std::move(a), {}, {}};
  inst.source = StateSet(inst.aut.n_states);
  inst.target = StateSet(inst.aut.n_states);
  for (int q : s) inst.source.set(q);
  for (int q : t) inst.target.set(q);
  return inst;
}

bool transports(const SetTransporterInstance& inst, const Word& w) {
  StateSet img = step(inst.aut, inst.source, w);
  return (img & ~inst.target).none();
}

// intersection nonemptiness by product-tuple search, independent of the
// library's reductions
bool brute_intersection_nonempty(const std::vector<Automaton>& dfas) {
  std::vector<int> start;
  for (const auto& d : dfas) start.push_back(*d.initial);
  std::set<std::vector<int>> seen{start};
  std::vector<std::vector<int>> queue{start};
  auto all_final = [&](const std::vector<int>& tup) {
    for (size_t i = 0; i < dfas.size(); ++i)
      if (!dfas[i].finals.test(tup[i])) return false;
    return true;
  };
  for (size_t i = 0; i < queue.size(); ++i) {
    if (all_final(queue[i])) return true;
    for (int x = 0; x < dfas[0].alphabet.size(); ++x) {
      std::vector<int> next;
      for (size_t j = 0; j < dfas.size(); ++j) next.push_back(dfas[j].dnext(queue[i][j], x));
      if (seen.insert(next).second) queue.push_back(next);
    }
  }
  return false;
}

Alphabet ab() { return alphabet_of(2); }

HardnessTriple triple_bab() {
  return {parse_word(ab(), "b"), parse_word(ab(), "a"), single_word_automaton(ab(), {1})};
}

}  // namespace

TEST_CASE("transporter: source inside target means the empty word") {
  auto inst = inst_of(unary_cycle(4), {1, 2}, {0, 1, 2});
  auto w = set_transporter_bruteforce(inst);
  REQUIRE(w.has_value());
  CHECK(w->empty());
}

TEST_CASE("transporter on the five-cycle: shift by two") {
  auto inst = inst_of(unary_cycle(5), {0, 1}, {2, 3});
  auto w = set_transporter_bruteforce(inst);
  REQUIRE(w.has_value());
  CHECK(*w == Word{0, 0});
}

TEST_CASE("transporter words replay correctly on random unary instances") {
  Rng rng(89);
  for (int i = 0; i < 200; ++i) {
    int n = 2 + rng.below(7);
    Automaton a = random_dcsa(rng, n, 1);
    auto inst = inst_of(std::move(a), {}, {});
    for (int q = 0; q < n; ++q) {
      if (rng.coin()) inst.source.set(q);
      if (rng.coin()) inst.target.set(q);
    }
    if (inst.source.none() || inst.target.none()) continue;
    auto w = set_transporter_bruteforce(inst);
    if (w) CHECK(transports(inst, *w));
  }
}

TEST_CASE("disjointify rejects instances the empty word answers") {
  CHECK_THROWS_AS(disjointify(inst_of(unary_cycle(3), {1}, {1, 2})), Error);
}

TEST_CASE("disjointify preserves answers and witnesses") {
  Rng rng(97);
  int compared = 0;
  for (int i = 0; i < 300; ++i) {
    int n = 2 + rng.below(5);
    auto inst = inst_of(random_dcsa(rng, n, 1 + rng.below(2)), {}, {});
    for (int q = 0; q < n; ++q) {
      if (rng.coin()) inst.source.set(q);
      if (rng.below(3) == 0) inst.target.set(q);
    }
    if (inst.source.none() || inst.target.none()) continue;
    if ((inst.source & ~inst.target).none()) continue;  // S inside T
    ++compared;
    auto dis = disjointify(inst);
    CHECK((dis.source & dis.target).none());
    auto w1 = set_transporter_bruteforce(inst);
    auto w2 = set_transporter_bruteforce(dis);
    CHECK(w1.has_value() == w2.has_value());
    if (w1) {
      CHECK_FALSE(w1->empty());
      // witnesses transfer verbatim in both directions
      CHECK(transports(dis, *w1));
      CHECK(transports(inst, *w2));
    }
  }
  CHECK(compared > 100);
}

TEST_CASE("two cyclic counters: transport answers 0 or 6 depending on finals") {
  // both accept epsilon: shortest common word is empty
  Automaton m2 = unary_cycle(2);
  m2.kind = Kind::Dcsa;
  m2.initial = 0;
  m2.finals.set(0);
  Automaton m3 = unary_cycle(3);
  m3.initial = 0;
  m3.finals.set(0);
  auto inst = intersection_to_settransporter({m2, m3});
  auto w = set_transporter_bruteforce(inst);
  REQUIRE(w.has_value());
  CHECK(w->empty());

  // a^2 (a^2)* instead of (a^2)*: epsilon gone, next common length is 6
  Automaton even_pos = parse_automaton(
      "kind: dcsa\nalphabet: a\nstates: e0 e1 e2\ninitial: e0\nfinal: e2\n"
      "trans: e0 a e1\ntrans: e1 a e2\ntrans: e2 a e1\n");
  auto inst6 = intersection_to_settransporter({even_pos, m3});
  auto w6 = set_transporter_bruteforce(inst6);
  REQUIRE(w6.has_value());
  CHECK(w6->size() == 6);
}

TEST_CASE("a single automaton reduces to nonemptiness") {
  Automaton m3 = unary_cycle(3);
  m3.initial = 1;
  m3.finals.set(0);
  auto inst = intersection_to_settransporter({m3});
  CHECK(inst.source.count() == 1);
  CHECK(set_transporter_bruteforce(inst).has_value() == !is_empty(m3));
}

TEST_CASE("reduction round trips preserve the answer") {
  Rng rng(101);
  for (int i = 0; i < 200; ++i) {
    int n = 2 + rng.below(4);
    auto inst = inst_of(random_dcsa(rng, n, 1), {}, {});
    for (int q = 0; q < n; ++q) {
      if (rng.coin()) inst.source.set(q);
      if (rng.below(3) == 0) inst.target.set(q);
    }
    if (inst.source.none() || inst.target.none()) continue;
    bool answer = set_transporter_bruteforce(inst).has_value();

    auto dfas = settransporter_to_intersection(inst);
    CHECK(dfas.size() == inst.source.count());
    CHECK(brute_intersection_nonempty(dfas) == answer);

    auto back = intersection_to_settransporter(dfas);
    CHECK(set_transporter_bruteforce(back).has_value() == answer);
  }
}

TEST_CASE("exhaustive unary instances through both reductions") {
  for (int n = 2; n <= 3; ++n) {
    std::vector<int> delta(n, 0);
    while (true) {
      Automaton a = new_automaton(Kind::Dcsa, alphabet_of(1), n, {});
      for (int q = 0; q < n; ++q) a.add_transition(q, 0, delta[q]);
      for (unsigned smask = 1; smask < (1u << n); ++smask)
        for (unsigned tmask = 1; tmask < (1u << n); ++tmask) {
          auto inst = inst_of(a, {}, {});
          for (int q = 0; q < n; ++q) {
            if (smask & (1u << q)) inst.source.set(q);
            if (tmask & (1u << q)) inst.target.set(q);
          }
          bool answer = set_transporter_bruteforce(inst).has_value();
          CHECK(brute_intersection_nonempty(settransporter_to_intersection(inst)) == answer);
          if ((inst.source & ~inst.target).any())
            CHECK(set_transporter_bruteforce(disjointify(inst)).has_value() == answer);
        }
      int i = 0;
      for (; i < n; ++i) {
        if (++delta[i] < n) break;
        delta[i] = 0;
      }
      if (i == n) break;
    }
  }
}

TEST_CASE("hardness conditions for the worked triples") {
  CHECK(check_np_hard_criterion(triple_bab()));

  // u=aa, v=ba, U = aaa*a (all a-words of length at least three)
  Automaton tail = parse_automaton(
      "kind: pdfa\nalphabet: a b\nstates: s1 s2 s3 s4\ninitial: s1\nfinal: s4\n"
      "trans: s1 a s2\ntrans: s2 a s3\ntrans: s3 a s4\ntrans: s4 a s4\n");
  CHECK(check_np_hard_criterion({parse_word(ab(), "aa"), parse_word(ab(), "ba"), tail}));

  // u=a is a factor of a*
  CHECK_FALSE(check_np_hard_criterion(
      {parse_word(ab(), "a"), parse_word(ab(), "a"), single_word_automaton(ab(), {1})}));

  // empty tail language
  Automaton empty = new_automaton(Kind::Pdfa, ab(), 1, {});
  empty.initial = 0;
  CHECK_THROWS_AS(check_np_hard_criterion({parse_word(ab(), "b"), parse_word(ab(), "a"), empty}),
                  Error);
}

TEST_CASE("gadget state count and completeness") {
  auto inst = inst_of(unary_cycle(5), {0}, {2});
  Automaton g = build_hardness_gadget(inst, triple_bab(), parse_word(ab(), "b"));
  CHECK(g.n_states == 5 * 1 * 1 + 1);
  CHECK(g.is_complete());

  Automaton tail3 = parse_automaton(
      "kind: pdfa\nalphabet: a b\nstates: s1 s2 s3 s4\ninitial: s1\nfinal: s4\n"
      "trans: s1 a s2\ntrans: s2 a s3\ntrans: s3 a s4\ntrans: s4 a s4\n");
  HardnessTriple t2{parse_word(ab(), "aa"), parse_word(ab(), "ba"), tail3};
  Automaton g2 = build_hardness_gadget(inst_of(unary_cycle(3), {0}, {2}), t2,
                                       parse_word(ab(), "aaa"));
  CHECK(g2.n_states == 3 * 2 * 2 + 1);
  CHECK(g2.is_complete());
}

TEST_CASE("gadget of a yes instance synchronizes under the constraint, a no instance does not") {
  Automaton constraint = build_uvw_constraint(ab(), {1}, {0}, {1});  // b a* b
  auto yes = inst_of(unary_cycle(5), {0}, {2});
  REQUIRE(set_transporter_bruteforce(yes).has_value());
  Automaton g_yes = build_hardness_gadget(yes, triple_bab(), {1});
  CHECK(oracle(g_yes, constraint).decision);

  auto no = inst_of(unary_identity(2), {0}, {1});
  REQUIRE_FALSE(set_transporter_bruteforce(no).has_value());
  Automaton g_no = build_hardness_gadget(no, triple_bab(), {1});
  CHECK_FALSE(oracle(g_no, constraint).decision);
}

TEST_CASE("transporter witnesses expand to synchronizing constraint words") {
  Rng rng(103);
  int expanded = 0;
  for (int i = 0; i < 120 && expanded < 25; ++i) {
    int n = 2 + rng.below(4);
    auto inst = inst_of(random_dcsa(rng, n, 1), {}, {});
    do {
      inst.source.reset();
      inst.target.reset();
      for (int q = 0; q < n; ++q) switch (rng.below(3)) {
          case 0: inst.source.set(q); break;
          case 1: inst.target.set(q); break;
          default: break;
        }
    } while (inst.source.none() || inst.target.none());
    auto am = set_transporter_bruteforce(inst);
    if (!am) continue;
    ++expanded;
    Automaton g = build_hardness_gadget(inst, triple_bab(), {1});
    // one unary step corresponds to one v^{|u|} block
    Word word{1};  // u = b
    for (size_t k = 0; k < am->size(); ++k) word.push_back(0);
    word.push_back(1);  // w = b
    StateSet img = step(g, g.all_states(), word);
    CHECK(img.count() == 1);
    Automaton constraint = build_uvw_constraint(ab(), {1}, {0}, {1});
    CHECK(constraint.accepts(word));
  }
  CHECK(expanded == 25);
}

TEST_CASE("states reach the gadget trap exactly by deviating mid-block from a target copy") {
  auto inst = inst_of(unary_cycle(3), {0}, {2});
  Automaton tail3 = parse_automaton(
      "kind: pdfa\nalphabet: a b\nstates: s1 s2 s3 s4\ninitial: s1\nfinal: s4\n"
      "trans: s1 a s2\ntrans: s2 a s3\ntrans: s3 a s4\ntrans: s4 a s4\n");
  HardnessTriple t{parse_word(ab(), "aa"), parse_word(ab(), "ba"), tail3};
  Word w3 = parse_word(ab(), "aaa");
  Automaton g = build_hardness_gadget(inst, t, w3);
  const int nq = inst.aut.n_states;
  const Word block = parse_word(ab(), "baba");  // v^{|u|}
  const int n = static_cast<int>(block.size());
  const int trap = g.n_states - 1;

  auto collapsed_in_target = [&](int state) {
    return state != trap && inst.target.test(state % nq);
  };
  auto deviates = [&](int layer, const Word& y) {
    for (size_t j = 0; j < y.size() && layer + static_cast<int>(j) < n; ++j) {
      if (y[j] != block[layer + j]) return true;  // earlier symbols matched
    }
    return false;
  };

  int bound = 2 * n + static_cast<int>(w3.size()) + 2;
  auto words = all_words(2, bound > 12 ? 12 : bound);
  for (int q = 0; q < trap; ++q) {
    for (const auto& w : words) {
      bool lhs = g.dstep(q, w) == trap;
      bool rhs = false;
      for (size_t cut = 0; cut <= w.size() && !rhs; ++cut) {
        Word x(w.begin(), w.begin() + cut), y(w.begin() + cut, w.end());
        int r = g.dstep(q, x);
        if (r == trap || !collapsed_in_target(r)) continue;
        if (deviates(r / nq, y)) rhs = true;
      }
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("search and oracle agree on gadget instances") {
  Rng rng(113);
  Automaton constraint = build_uvw_constraint(ab(), {1}, {0}, {1});
  for (int i = 0; i < 40; ++i) {
    int n = 2 + rng.below(4);
    auto inst = inst_of(random_dcsa(rng, n, 1), {}, {});
    do {
      inst.source.reset();
      inst.target.reset();
      for (int q = 0; q < n; ++q) switch (rng.below(3)) {
          case 0: inst.source.set(q); break;
          case 1: inst.target.set(q); break;
          default: break;
        }
    } while (inst.source.none() || inst.target.none());
    Automaton g = build_hardness_gadget(inst, triple_bab(), {1});
    ConstrSyncResult via_oracle = oracle(g, constraint);
    ConstrSyncResult via_search = solve(g, constraint);
    CHECK(via_search.decision == via_oracle.decision);
    CHECK(via_search.decision == set_transporter_bruteforce(inst).has_value());
    if (via_search.decision) CHECK(verify_wcode(g, constraint, *via_search.witness));
  }
}

TEST_CASE("gadget construction validates its inputs") {
  auto disjoint = inst_of(unary_cycle(4), {0}, {2});
  // overlapping source and target
  CHECK_THROWS_AS(build_hardness_gadget(inst_of(unary_cycle(4), {0, 2}, {2}), triple_bab(), {1}),
                  Error);
  // binary instance automaton
  Rng rng(107);
  auto binary = inst_of(random_dcsa(rng, 3, 2), {0}, {1});
  CHECK_THROWS_AS(build_hardness_gadget(binary, triple_bab(), {1}), Error);
  // w outside the tail language
  CHECK_THROWS_AS(build_hardness_gadget(disjoint, triple_bab(), {0}), Error);
  // failing triple
  HardnessTriple bad{parse_word(ab(), "a"), parse_word(ab(), "a"),
                     single_word_automaton(ab(), {1})};
  CHECK_THROWS_AS(build_hardness_gadget(disjoint, bad, {1}), Error);
}

TEST_CASE("equivalence batches agree and reports are stable") {
  BatchReport r = gadget_equivalence_batch(30, 4, {1}, {0}, {1}, ab(), 7);
  CHECK(r.count == 30);
  CHECK(r.all_agree());
  std::string text = r.to_text();
  CHECK(text.find("agreement 30/30") != std::string::npos);
  CHECK(text.find("seed: 7") != std::string::npos);
  // same seed, same text
  CHECK(gadget_equivalence_batch(30, 4, {1}, {0}, {1}, ab(), 7).to_text() == text);

  BatchReport empty = gadget_equivalence_batch(0, 4, {1}, {0}, {1}, ab(), 1);
  CHECK(empty.to_text().find("agreement 0/0") != std::string::npos);

  CHECK_THROWS_AS(gadget_equivalence_batch(5, 4, {0}, {0}, {1}, ab(), 1), Error);
}

TEST_CASE("instance files round trip") {
  auto inst = inst_of(unary_cycle(3), {0}, {2});
  std::string text = format_instance(inst);
  auto back = parse_instance(text);
  CHECK(back.source == inst.source);
  CHECK(back.target == inst.target);
  CHECK(format_instance(back) == text);
  CHECK_THROWS_AS(parse_instance("kind: dcsa\nalphabet: a\nstates: q\ntrans: q a q\nS: z\nT: q\n"),
                  Error);
}

TEST_CASE("constraint classification") {
  Automaton fig1 = parse_automaton(
      "kind: pdfa\nalphabet: a b\nstates: q1 q2 q3 q4 q5 q6\ninitial: q1\nfinal: q6\n"
      "trans: q1 b q2\ntrans: q2 a q3\ntrans: q3 a q4\ntrans: q3 b q6\ntrans: q4 b q5\n"
      "trans: q5 a q3\n");
  CHECK(classify_constraint(fig1).cls == ConstraintClass::poly_time);

  Automaton bastarb = parse_automaton(
      "kind: pdfa\nalphabet: a b\nstates: q1 q2 q3\ninitial: q1\nfinal: q3\n"
      "trans: q1 b q2\ntrans: q2 a q2\ntrans: q2 b q3\n");
  Classification c = classify_constraint(bastarb);
  CHECK(c.cls == ConstraintClass::np_complete);

  // same language, different presentation: the concatenation-built automaton
  // enters the loop state only after reading one a
  Automaton built = build_uvw_constraint(ab(), {1}, {0}, {1});
  CHECK(classify_constraint(built).cls == ConstraintClass::np_complete);

  // aa(ba)* aaa*a, built by concatenation
  Automaton left = parse_automaton(
      "kind: pdfa\nalphabet: a b\nstates: q1 q2 q3 q4\ninitial: q1\nfinal: q3\n"
      "trans: q1 a q2\ntrans: q2 a q3\ntrans: q3 b q4\ntrans: q4 a q3\n");
  Automaton right = parse_automaton(
      "kind: pdfa\nalphabet: a b\nstates: s1 s2 s3 s4\ninitial: s1\nfinal: s4\n"
      "trans: s1 a s2\ntrans: s2 a s3\ntrans: s3 a s4\ntrans: s4 a s4\n");
  CHECK(classify_constraint(concat_pc(left, right)).cls == ConstraintClass::np_complete);

  // b a*: polycyclic, but neither criterion fires
  Automaton ba_star = parse_automaton(
      "kind: pdfa\nalphabet: a b\nstates: q1 q2\ninitial: q1\nfinal: q2\n"
      "trans: q1 b q2\ntrans: q2 a q2\n");
  CHECK(classify_constraint(ba_star).cls == ConstraintClass::unknown);

  // not polycyclic
  Automaton full = parse_automaton(
      "kind: dcsa\nalphabet: a b\nstates: q\ninitial: q\nfinal: q\ntrans: q a q\ntrans: q b q\n");
  CHECK(classify_constraint(full).cls == ConstraintClass::unknown);
}
