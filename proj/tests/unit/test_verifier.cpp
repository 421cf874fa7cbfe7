#include "doctest.h"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace rbr;
using namespace rbr::testing;

namespace {

const RegisterSeq kF1{{1, 0}, {1, 1}, {0, 0}, {0, 1}, {1, 2}, {0, 2}};
// alpha1 eta2 beta1 theta2 epsilon1
const RegisterSeq kF2{{1, 0}, {2, 0}, {1, 1}, {2, 1}, {1, 2}};

StateSet targets(const Protocol& p, const char* q) { return p.state_set(p.copies_of(q)); }

}  // namespace

TEST_CASE("synchronisation") {
  CHECK(synchronise(kF1, kF2, 3, 1, 1) == 4);
  CHECK(synchronise(kF1, kF2, 2, 1, 1) == 1);
  CHECK(synchronise(kF1, kF2, 0, 1, 1) == 0);
  RegisterSeq old{{0, 0}, {0, 1}, {1, 0}};
  CHECK(synchronise(old, {{1, 0}}, 0, 1, 1) == 2);
  CHECK_THROWS_AS(synchronise(kF1, {{1, 1}}, 1, 1, 1), std::logic_error);
}

TEST_CASE("initial window states") {
  CHECK(initial_sequences(1).size() == 2);
  CHECK(initial_sequences(2).size() == 5);
  Protocol p = gen_fig1();
  WindowModel model(p);
  auto init = model.initial_states();
  REQUIRE(init.size() == 2);
  for (const auto& w : init) {
    CHECK(w.round == 0);
    CHECK(w.current().S.front().contains(p.init));
  }
}

TEST_CASE("window successors of fig1") {
  Protocol p = gen_fig1();
  WindowModel model(p);
  auto w = model.step(nullptr, {{0, 0}});
  REQUIRE(w);
  StateSet expect = p.state_set({p.state("q0"), p.state("q1")});
  CHECK(w->full() == expect);
  CHECK(next_sequences(w->current().F, 0, 1, 1).size() == count_window_successors(1, 1));
  CHECK(model.successors(*w).size() == 3);
  CHECK(next_sequences({{0, 0}, {1, 0}}, 1, 1, 2).size() == count_window_successors(1, 2));
}

TEST_CASE("a first write without an enabled writer is rejected") {
  Protocol p = gen_fig1();
  WindowModel model(p);
  auto blank = model.step(nullptr, {});
  REQUIRE(blank);
  CHECK(!blank->full().contains(p.state("q1")));
  ProtocolBuilder b("nowrite", 1, 0, {"a"});
  b.init("q0").add("q0", "q1", {Action::read(0, 0, b.sym("a"))});
  Protocol r = b.build();
  CHECK(!WindowModel(r).step(nullptr, {{0, 0}}));
}

TEST_CASE("canonical keys forget absolute rounds") {
  Protocol p = desugar(gen_counter(2));
  WindowModel model(p);
  auto w = model.step(nullptr, {{0, 0}});
  REQUIRE(w);
  auto a = model.step(&*w, {{1, 0}});
  REQUIRE(a);
  auto b = model.step(&*a, {{2, 0}});
  auto c = model.step(&*b, {{3, 0}});
  REQUIRE(c);
  CHECK(canonical_key(*b, 0) != canonical_key(*w, 0));
  CHECK(canonical_key(*b, 0)[0] == 1);
  CHECK(canonical_key(*c, 0)[0] == 1);
}

TEST_CASE("verdicts") {
  Protocol c3 = desugar(gen_counter(3));
  auto r = verify(c3, targets(c3, "qE"));
  CHECK(r.verdict == Verdict::Unsafe);
  CHECK(r.round == std::optional<int>(4));
  REQUIRE(r.witness);
  CHECK(r.witness->F.size() == 5);

  Protocol f = gen_fig1();
  CHECK(verify(f, f.state("qE")).verdict == Verdict::Safe);
  auto q4 = verify(f, f.state("q4"));
  CHECK(q4.verdict == Verdict::Unsafe);
  CHECK(q4.round == std::optional<int>(1));

  Protocol a = desugar(gen_aspnes("A0"));
  CHECK(verify(a, targets(a, "R1")).verdict == Verdict::Safe);
  CHECK(verify(a, targets(a, "R0")).verdict == Verdict::Unsafe);
  CHECK(verify(f, f.init).round == std::optional<int>(0));
}

TEST_CASE("round bound and node budget") {
  Protocol c = desugar(gen_counter(4));
  VerifyOptions opt;
  opt.max_rounds = 3;
  CHECK(verify(c, targets(c, "qE"), opt).verdict == Verdict::Inconclusive);
  opt.max_rounds = 8;
  CHECK(verify(c, targets(c, "qE"), opt).verdict == Verdict::Unsafe);
  Protocol f = gen_fig1();
  opt.max_rounds = 10;
  CHECK(verify(f, f.state("qE"), opt).verdict == Verdict::Safe);
  VerifyOptions tiny;
  tiny.node_budget = 3;
  CHECK_THROWS_AS(verify(c, targets(c, "qE"), tiny), ResourceLimit);
}

TEST_CASE("parallel expansion gives the same answer") {
  Protocol a = desugar(gen_aspnes_agreement());
  VerifyOptions seq, par;
  par.jobs = 4;
  auto x = verify(a, targets(a, "qF"), seq);
  auto y = verify(a, targets(a, "qF"), par);
  CHECK(x.verdict == y.verdict);
  CHECK(x.nodes == y.nodes);
  Protocol c = desugar(gen_counter(5));
  CHECK(verify(c, targets(c, "qE"), par).round == std::optional<int>(16));
}

TEST_CASE("witness round trip and replay") {
  Protocol c = desugar(gen_counter(2));
  auto t = targets(c, "qE");
  auto r = verify(c, t);
  REQUIRE(r.witness);
  std::string text = format_witness(*r.witness);
  CHECK(text.rfind("UNSAFE round=2\nF[0] = ", 0) == 0);
  auto w = parse_witness(text);
  CHECK(w.round == 2);
  CHECK(w.F == r.witness->F);
  CHECK(replay_witness(c, t, w).confirmed);

  WitnessFamily cut = w;
  cut.F[1].clear();
  auto bad = replay_witness(c, t, cut);
  CHECK(!bad.confirmed);
  CHECK(!bad.reason.empty());

  WitnessFamily init{0, {{}}};
  CHECK(replay_witness(c, c.state_set({c.init}), init).confirmed);
  CHECK(!replay_witness(c, t, init).confirmed);
  CHECK_THROWS_AS(parse_witness("SAFE\n"), std::invalid_argument);
}

TEST_CASE("verifier agrees with the bounded abstract oracle") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 60; ++i) {
    Protocol p = random_protocol(rng, 5, 2, 1, 2, 10);
    StateSet t = p.state_set({*p.error});
    auto v = verify(p, t);
    auto b = bounded_abstract_reach(p, 4, t);
    CAPTURE(print_protocol(p));
    if (b.covered) {
      CHECK(v.verdict == Verdict::Unsafe);
      CHECK(*v.round <= b.covered->round);
    }
    if (v.verdict == Verdict::Unsafe && *v.round <= 4) {
      CHECK(bounded_abstract_reach(p, *v.round, t).covered);
      CHECK(replay_witness(p, t, *v.witness).confirmed);
    }
    if (v.verdict == Verdict::Safe) CHECK(!b.covered);
  }
}
