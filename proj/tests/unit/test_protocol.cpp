#include <algorithm>

#include "doctest.h"
#include "oracles.hpp"

using namespace rbr;

namespace {

const char* kFig1 = R"(name fig1
registers 1
visibility 1
alphabet a b
init q0
error qE
# one register, two symbols
q0 -> q0 : incr
q0 -> q1 : write a
q0 -> q2 : incr
q2 -> q3 : write a
q3 -> q4 : read[-1] _
q2 -> q5 : read[-1] a
q5 -> q6 : read[0] _
q4 -> q4 : write b
q6 -> qE : read[0] b
)";

const char* kAspnes = R"(name aspnes_A0
registers 2
visibility 1
alphabet T
init A0
error R1
A0 -> C0 : read[0][0] T
A0 -> B0 : read[0][0] _
B0 -> C0 : read[0][1] _
B0 -> C1 : read[0][1] T
C0 -> W0 : write[0] T
W0 -> E0 [k=0] : nop
W0 -> E0 : read[-1][1] T
E0 -> A0 : incr
W0 -> R0 [k>0] : read[-1][1] _
A1 -> C1 : read[0][1] T
A1 -> B1 : read[0][1] _
B1 -> C1 : read[0][0] _
B1 -> C0 : read[0][0] T
C1 -> W1 : write[1] T
W1 -> E1 k=0 : nop
W1 -> E1 : read[-1][0] T
E1 -> A1 : incr
W1 -> R1 [k>0] : read[-1][0] _
)";

bool has_kind(const std::vector<Violation>& v, const std::string& kind) {
  return std::any_of(v.begin(), v.end(), [&](const Violation& x) { return x.kind == kind; });
}

}  // namespace

TEST_CASE("parse the incompatibility protocol") {
  Protocol p = parse_protocol(kFig1);
  CHECK(p.registers == 1);
  CHECK(p.visibility == 1);
  CHECK(p.states.size() == 8);
  CHECK(p.transitions.size() == 9);
  CHECK(p.symbols == std::vector<std::string>{"_", "a", "b"});
  CHECK(p.states[p.init] == "q0");
  CHECK(p.states[*p.error] == "qE");
  CHECK(validate(p).empty());
  CHECK(p.desugared());
  CHECK(p == gen_fig1());
}

TEST_CASE("empty transition relation") {
  Protocol p = parse_protocol("name x\nregisters 1\nvisibility 0\nalphabet a\ninit q0\n");
  CHECK(p.states.size() == 1);
  CHECK(p.transitions.empty());
  CHECK(!p.error);
}

TEST_CASE("parse the noisy consensus protocol") {
  Protocol p = parse_protocol(kAspnes);
  CHECK(p.states.size() == 12);
  CHECK(p.registers == 2);
  CHECK(p.visibility == 1);
  int zero = 0, positive = 0;
  for (const auto& t : p.transitions) {
    zero += t.guard == Guard::RoundZero;
    positive += t.guard == Guard::RoundPositive;
    if (t.guard != Guard::None) CHECK(p.states[t.source][0] == 'W');
  }
  CHECK(zero == 2);
  CHECK(positive == 2);
  CHECK(p == gen_aspnes("A0"));
}

TEST_CASE("parse errors carry line numbers") {
  auto line_of = [](const std::string& text) {
    try {
      parse_protocol(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return -1;
  };
  const std::string head = "registers 1\nvisibility 1\nalphabet a\ninit q0\n";
  CHECK(line_of(head + "q0 -> q1 : read[-2] a\n") == 5);
  CHECK(line_of(head + "q0 -> q1 : write _\n") == 5);
  CHECK(line_of(head + "q0 -> q1 : write c\n") == 5);
  CHECK(line_of(head + "q0 -> q1 : write[1] a\n") == 5);
  CHECK(line_of(head + "q0 -> q1 : jump\n") == 5);
  CHECK(line_of(head + "q0 -> q1 [k=1] : nop\n") == 5);
  CHECK(line_of("registers 1\nvisibility 0\nalphabet a\n") > 0);
  CHECK_THROWS_AS(parse_protocol(head + "bogus 3\n"), ParseError);
}

TEST_CASE("validate") {
  CHECK(validate(gen_fig1()).empty());
  Protocol p = gen_fig1();
  p.transitions[4].actions[0].offset = 2;
  CHECK(has_kind(validate(p), "offset-exceeds-visibility"));
  p = gen_fig1();
  p.transitions[1].actions[0].symbol = kBlank;
  CHECK(has_kind(validate(p), "write-of-initial-value"));
  p = gen_fig1();
  p.transitions[1].actions[0].reg = 3;
  CHECK(has_kind(validate(p), "register-out-of-range"));
  CHECK_THROWS_AS(require_valid(p), ProtocolError);
}

TEST_CASE("print/parse round trip") {
  std::vector<Protocol> all{gen_fig1(),        gen_counter(3), gen_cutoff(2), gen_drift(2),
                            gen_aspnes("A1"), gen_aspnes_agreement()};
  QbfFormula f;
  f.var_count = 2;
  f.clauses.push_back({Literal{0, false}, Literal{1, true}, Literal{1, false}});
  all.push_back(gen_qbf(f));
  for (const auto& p : all) {
    CAPTURE(p.name);
    std::string text = print_protocol(p);
    Protocol q = parse_protocol(text);
    CHECK(q == p);
    CHECK(print_protocol(q) == text);
    Protocol d = desugar(p);
    CHECK(parse_protocol(print_protocol(d)) == d);
  }
}

TEST_CASE("desugar is the identity on atomic protocols") {
  Protocol p = gen_fig1();
  Protocol d = desugar(p);
  CHECK(d == p);
  CHECK(d.states.size() == p.states.size());
}

TEST_CASE("desugar splits multi-action labels") {
  Protocol p = parse_protocol("registers 1\nvisibility 0\nalphabet a\ninit q0\nq0 -> q1 : read[0] _; write a; incr\n");
  Protocol d = desugar(p);
  CHECK(d.states.size() == p.states.size() + 2);
  CHECK(d.transitions.size() == 3);
  CHECK(d.desugared());
  int fresh = 0;
  for (StateId q = 0; q < d.states.size(); ++q) fresh += !d.original_name(q).has_value();
  CHECK(fresh == 2);
  CHECK(desugar(d) == d);
}

TEST_CASE("desugar is idempotent") {
  for (const auto& p : {gen_counter(2), gen_aspnes("A0"), gen_aspnes_agreement(), gen_drift(1)}) {
    Protocol d = desugar(p);
    CHECK(d.desugared());
    CHECK(desugar(d) == d);
  }
}

TEST_CASE("guard copies keep both phases of the error state") {
  Protocol d = desugar(gen_aspnes("A0"));
  CHECK(d.copies_of("R1").size() == 2);
  CHECK(d.copies_of("A0").size() == 2);
  CHECK(d.copies_of("nosuch").empty());
  CHECK(d.original_name(d.init) == std::optional<std::string>("A0"));
}

TEST_CASE("desugared Aspnes matches the guarded semantics up to round 3") {
  for (const char* pref : {"A0", "A1"}) {
    Protocol p = gen_aspnes(pref);
    auto expected = testing::guarded_abstract_reach(p, 3);
    Protocol d = desugar(p);
    auto reach = bounded_abstract_reach(d, 3);
    std::set<std::pair<std::string, int>> got;
    for (const auto& l : reach.coverable)
      if (auto n = d.original_name(l.state)) got.insert({*n, l.round});
    CHECK(got == expected);
    CHECK(expected.count({"R0", 1}) == (std::string(pref) == "A0"));
    CHECK(!expected.count({"R0", 0}));
  }
}

TEST_CASE("action and location formatting") {
  Protocol p = gen_aspnes("A0");
  CHECK(action_to_string(p, Action::read(1, 1, p.symbol("T"))) == "read[-1][1] T");
  CHECK(action_to_string(p, Action::write(0, p.symbol("T"))) == "write[0] T");
  Protocol f = gen_fig1();
  CHECK(action_to_string(f, Action::read(1, 0, kBlank)) == "read[-1] _");
  CHECK(location_to_string(f, {f.state("q4"), 1}) == "(q4,1)");
  CHECK(register_to_string({3, 1}) == "r3.1");
}

TEST_CASE("state sets") {
  StateSet s(130);
  CHECK(s.empty());
  CHECK(s.insert(129));
  CHECK(!s.insert(129));
  s.insert(3);
  CHECK(s.count() == 2);
  CHECK(s.elements() == std::vector<StateId>{3, 129});
  StateSet t(130);
  t.insert(3);
  CHECK(t.subset_of(s));
  CHECK(!s.subset_of(t));
  CHECK(t.insert_all(s));
  CHECK(t == s);
  s.erase(3);
  CHECK(!s.contains(3));
}
