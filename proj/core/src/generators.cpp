#include "rbr/generators.hpp"

#include <stdexcept>

namespace rbr {
namespace {

std::string idx(const std::string& base, int i) { return base + "_" + std::to_string(i); }

std::vector<std::string> counter_alphabet(int m, bool with_a) {
  std::vector<std::string> alpha;
  if (with_a) alpha.push_back("a");
  for (int i = 1; i <= m + 1; ++i) {
    alpha.push_back(idx("move", i));
    alpha.push_back(idx("wait", i));
  }
  return alpha;
}

std::string bit(int i, int b) { return "q" + std::to_string(i) + "_" + std::to_string(b); }

// Bit gadgets of the counter, entered from q0 by silent moves.
void add_bits(ProtocolBuilder& b, int m) {
  auto rd = [&](const std::string& x) { return Action::read(0, 0, b.sym(x)); };
  auto wr = [&](const std::string& x) { return Action::write(0, b.sym(x)); };
  for (int i = 1; i <= m; ++i) {
    b.add("q0", bit(i, 0), {Action::nop()});
    std::string move = idx("move", i), wait = idx("wait", i);
    std::string next_move = idx("move", i + 1), next_wait = idx("wait", i + 1);
    std::string one = i < m ? bit(i, 1) : "qE";
    if (i > 1) b.add(bit(i, 0), bit(i, 0), {rd(wait), wr(next_wait), Action::incr()});
    b.add(bit(i, 0), one, {rd(move), wr(next_wait), Action::incr()});
    if (i == m) break;
    b.add(one, bit(i, 0), {rd(move), wr(next_move), Action::incr()});
    if (i > 1) b.add(one, one, {rd(wait), wr(next_wait), Action::incr()});
  }
}

void check_m(int m) {
  if (m < 1) throw std::invalid_argument("generator: m must be >= 1");
}

}  // namespace

Protocol gen_fig1() {
  ProtocolBuilder b("fig1", 1, 1, {"a", "b"});
  b.init("q0").error("qE");
  SymbolId a = b.sym("a"), bb = b.sym("b");
  b.add("q0", "q0", {Action::incr()});
  b.add("q0", "q1", {Action::write(0, a)});
  b.add("q0", "q2", {Action::incr()});
  b.add("q2", "q3", {Action::write(0, a)});
  b.add("q3", "q4", {Action::read(1, 0, kBlank)});
  b.add("q2", "q5", {Action::read(1, 0, a)});
  b.add("q5", "q6", {Action::read(0, 0, kBlank)});
  b.add("q4", "q4", {Action::write(0, bb)});
  b.add("q6", "qE", {Action::read(0, 0, bb)});
  return b.build();
}

Protocol gen_counter(int m) {
  check_m(m);
  ProtocolBuilder b("counter" + std::to_string(m), 1, 0, counter_alphabet(m, false));
  b.init("q0").error("qE");
  b.add("q0", "qtick", {Action::nop()});
  b.add("qtick", "qtick", {Action::write(0, b.sym("move_1")), Action::incr()});
  add_bits(b, m);
  return b.build();
}

Protocol gen_cutoff(int m) {
  check_m(m);
  ProtocolBuilder b("cutoff" + std::to_string(m), 1, 0, counter_alphabet(m, false));
  b.init("q0").error("qE");
  b.add("q0", "qtick", {Action::nop()});
  b.add("qtick", "qtick", {Action::incr()});
  b.add("qtick", "qsink", {Action::write(0, b.sym("move_1"))});
  add_bits(b, m);
  return b.build();
}

Protocol gen_drift(int m) {
  check_m(m);
  ProtocolBuilder b("drift" + std::to_string(m), 1, 1, counter_alphabet(m, true));
  b.init("q0").error("qE");
  SymbolId move1 = b.sym("move_1");
  b.add("q0", "qtick", {Action::incr()});
  b.add("qtick", "qtick", {Action::incr()});
  b.add("qtick", "qB", {Action::write(0, b.sym("a"))});
  b.add("qB", "qC", {Action::read(1, 0, kBlank)});
  b.add("qC", "qD", {Action::read(1, 0, move1)});
  b.add("qD", "qtick", {Action::write(0, move1)});
  b.add("q0", "qA", {Action::write(0, move1)});
  add_bits(b, m);
  return b.build();
}

namespace {

void add_aspnes(ProtocolBuilder& b) {
  SymbolId top = b.sym("T");
  for (int p = 0; p <= 1; ++p) {
    int o = 1 - p;
    auto s = [](const char* n, int i) { return std::string(n) + std::to_string(i); };
    b.add(s("A", p), s("C", p), {Action::read(0, p, top)});
    b.add(s("A", p), s("B", p), {Action::read(0, p, kBlank)});
    b.add(s("B", p), s("C", p), {Action::read(0, o, kBlank)});
    b.add(s("B", p), s("C", o), {Action::read(0, o, top)});
    b.add(s("C", p), s("W", p), {Action::write(p, top)});
    b.add(s("W", p), s("E", p), {Action::nop()}, Guard::RoundZero);
    b.add(s("W", p), s("E", p), {Action::read(1, o, top)});
    b.add(s("E", p), s("A", p), {Action::incr()});
    b.add(s("W", p), s("R", p), {Action::read(1, o, kBlank)}, Guard::RoundPositive);
  }
}

}  // namespace

Protocol gen_aspnes(const std::string& init_pref) {
  if (init_pref != "A0" && init_pref != "A1")
    throw std::invalid_argument("gen_aspnes: initial preference must be A0 or A1");
  ProtocolBuilder b("aspnes_" + init_pref, 2, 1, {"T"});
  b.init(init_pref).error(init_pref == "A0" ? "R1" : "R0");
  add_aspnes(b);
  return b.build();
}

Protocol gen_aspnes_agreement() {
  ProtocolBuilder b("aspnes_agreement", 2, 1, {"T", "b"});
  b.init("q0").error("qF");
  b.add("q0", "A0", {Action::nop()});
  b.add("q0", "A1", {Action::nop()});
  add_aspnes(b);
  SymbolId bb = b.sym("b");
  b.add("R0", "R0", {Action::incr()});
  b.add("R1", "R1", {Action::incr()});
  b.add("R0", "R0", {Action::write(0, bb)});
  b.add("R1", "qF", {Action::read(0, 0, bb)});
  return b.build();
}

}  // namespace rbr
