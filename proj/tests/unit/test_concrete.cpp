#include <set>

#include "doctest.h"
#include "fixtures.hpp"

using namespace rbr;
using namespace rbr::testing;

TEST_CASE("initial configurations") {
  Protocol p = gen_fig1();
  auto c = initial_concrete(p, 2);
  CHECK(c.counts == std::map<Location, int>{{loc(p, "q0", 0), 2}});
  CHECK(c.regs.empty());
  CHECK(initial_concrete(p, 1).process_count() == 1);
  CHECK_THROWS_AS(initial_concrete(p, 0), std::invalid_argument);
}

TEST_CASE("enabled moves") {
  Protocol p = gen_fig1();
  auto moves = enabled_moves(p, initial_concrete(p, 1), 2);
  CHECK(std::set<Move>(moves.begin(), moves.end()) == std::set<Move>{{kLoop, 0}, {kWriteA0, 0}, {kIncr02, 0}});
  CHECK(enabled_moves(p, initial_concrete(p, 1), 0).size() == 1);

  ConcreteConfig c;
  c.counts[loc(p, "q3", 1)] = 1;
  c.regs[{1, 0}] = p.symbol("a");
  moves = enabled_moves(p, c);
  CHECK(std::count(moves.begin(), moves.end(), Move{kReadBlank, 1}) == 1);

  ConcreteConfig dead;
  dead.counts[loc(p, "q1", 0)] = 2;
  CHECK(enabled_moves(p, dead).empty());
}

TEST_CASE("single steps") {
  Protocol p = gen_fig1();
  auto c = apply_move(p, initial_concrete(p, 1), {kIncr02, 0});
  CHECK(c.counts == std::map<Location, int>{{loc(p, "q2", 1), 1}});
  CHECK(c.regs.empty());
  c = apply_move(p, c, {kWriteA2, 1});
  CHECK(c.counts == std::map<Location, int>{{loc(p, "q3", 1), 1}});
  CHECK(c.value({1, 0}) == p.symbol("a"));
  CHECK(c.value({0, 0}) == kBlank);
  CHECK(c.value({-1, 0}) == kBlank);

  ConcreteConfig q2;
  q2.counts[loc(p, "q2", 1)] = 1;
  CHECK_THROWS_AS(apply_move(p, q2, {kReadA, 1}), MoveNotEnabled);
  CHECK_THROWS_AS(apply_move(p, q2, {kWriteB, 1}), MoveNotEnabled);
}

TEST_CASE("replay") {
  Protocol p = gen_fig1();
  auto g1 = replay(p, fig1_rho1(p));
  CHECK(g1.size() == 4);
  CHECK(g1.back().count(loc(p, "q4", 1)) == 1);
  auto g2 = final_config(p, fig1_rho2(p));
  CHECK(g2.counts == std::map<Location, int>{{loc(p, "q1", 0), 1}, {loc(p, "q6", 1), 1}});
  CHECK(g2.value({0, 0}) == p.symbol("a"));
  ConcreteExecution bad = fig1_rho1(p);
  std::swap(bad.schedule[0], bad.schedule[1]);
  CHECK_THROWS_AS(replay(p, bad), MoveNotEnabled);
}

TEST_CASE("copycat on the empty execution") {
  Protocol p = gen_fig1();
  ConcreteExecution e{initial_concrete(p, 1), {}};
  auto x = copycat_extend(p, e, loc(p, "q0", 0), 3);
  CHECK(x.initial.count(loc(p, "q0", 0)) == 4);
  CHECK(final_config(p, x).counts == std::map<Location, int>{{loc(p, "q0", 0), 4}});
}

TEST_CASE("copycat on the two sample executions") {
  Protocol p = gen_fig1();
  auto x1 = copycat_extend(p, fig1_rho1(p), loc(p, "q4", 1), 2);
  auto c1 = final_config(p, x1);
  CHECK(c1.count(loc(p, "q4", 1)) == 3);
  CHECK(c1.value({1, 0}) == p.symbol("a"));

  auto rho2 = fig1_rho2(p);
  auto x2 = copycat_extend(p, rho2, loc(p, "q6", 1), 1);
  auto c2 = final_config(p, x2);
  CHECK(c2.count(loc(p, "q6", 1)) == 2);
  CHECK(c2.regs == final_config(p, rho2).regs);

  CHECK_THROWS_AS(copycat_extend(p, rho2, loc(p, "q4", 1), 1), std::invalid_argument);
}

TEST_CASE("rewrite_register") {
  Protocol p = gen_fig1();
  ConcreteExecution e = fig1_rho1(p);
  e.schedule.push_back({kWriteB, 1});
  CHECK(final_config(p, e).value({1, 0}) == p.symbol("b"));
  auto r = rewrite_register(p, e, {1, 0});
  auto c = final_config(p, r);
  CHECK(c.value({1, 0}) == p.symbol("a"));
  for (const auto& [l, n] : final_config(p, e).counts) CHECK(c.count(l) >= 1);

  ConcreteExecution last{initial_concrete(p, 1), {{kIncr02, 0}, {kWriteA2, 1}}};
  auto r2 = rewrite_register(p, last, {1, 0});
  CHECK(r2.schedule.size() > last.schedule.size());
  CHECK(r2.initial.process_count() == 2);
  CHECK(final_config(p, r2).regs == final_config(p, last).regs);
  CHECK(r2.schedule.back().transition == kWriteA2);

  CHECK_THROWS_AS(rewrite_register(p, last, {0, 0}), std::invalid_argument);
}

TEST_CASE("random executions") {
  Protocol p = gen_fig1();
  CHECK(random_execution(p, 1, 0, 7).schedule.empty());
  auto e = random_execution(p, 2, 5, 1);
  CHECK(e.schedule.size() == 5);
  CHECK_NOTHROW(replay(p, e));
  CHECK(random_execution(p, 2, 5, 1).schedule == e.schedule);
  auto capped = random_execution(p, 3, 50, 4, 2);
  for (const auto& [l, n] : final_config(p, capped).counts) CHECK(l.round <= 2);
}

TEST_CASE("active rounds") {
  Protocol p = gen_fig1();
  CHECK(active_rounds(p, {initial_concrete(p, 1), {}}) == 0);
  CHECK(active_rounds(p, fig1_rho1(p)) <= 1);
  for (std::uint64_t seed = 0; seed < 20; ++seed)
    CHECK(active_rounds(p, random_execution(p, 1, 8, seed)) <= 1);
  CHECK(active_rounds(p, fig1_rho2(p)) == 1);
}

TEST_CASE("drift needs many active rounds") {
  Protocol p = desugar(gen_drift(2));
  auto targets = p.state_set(p.copies_of("qE"));
  std::optional<ConcreteExecution> w;
  for (int n = 1; n <= 4 && !w; ++n) w = concrete_search(p, n, 4, targets).witness;
  REQUIRE(w);
  CHECK_NOTHROW(replay(p, *w));
  CHECK(active_rounds(p, *w) >= 2);
}

TEST_CASE("trace format") {
  Protocol p = gen_fig1();
  CHECK(format_trace(p, fig1_rho1(p)) ==
        "init n=1\n0: q0 -incr-> q2\n1: q2 -write a-> q3\n1: q3 -read[-1] _-> q4\n");
}

TEST_CASE("concrete search") {
  Protocol p = gen_fig1();
  StateSet q6(p.states.size());
  q6.insert(p.state("q6"));
  CHECK(!concrete_search(p, 1, 2, q6).witness);
  auto r = concrete_search(p, 2, 2, q6);
  REQUIRE(r.witness);
  CHECK(r.witness->schedule.size() == 4);
  StateSet err(p.states.size());
  err.insert(p.state("qE"));
  auto e = concrete_search(p, 3, 2, err);
  CHECK(!e.witness);
  CHECK(e.exhausted);
}
