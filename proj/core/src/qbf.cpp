#include "rbr/qbf.hpp"

#include <sstream>
#include <stdexcept>

namespace rbr {

std::string flag_name(Flag f) {
  switch (f) {
    case Flag::Yes:
      return "yes";
    case Flag::No:
      return "no";
    case Flag::Wait:
      return "wait";
  }
  return "?";
}

namespace {

void check_formula(const QbfFormula& f) {
  if (f.var_count < 1) throw std::invalid_argument("qbf: need at least one variable");
  for (const auto& c : f.clauses)
    for (const auto& l : c)
      if (l.var < 0 || l.var >= f.var_count) throw std::invalid_argument("qbf: literal out of range");
}

bool holds(const Literal& l, const Valuation& nu) { return nu[static_cast<std::size_t>(l.var)] != l.negated; }

}  // namespace

bool satisfies(const QbfFormula& f, const Valuation& nu) {
  for (const auto& c : f.clauses)
    if (!holds(c[0], nu) && !holds(c[1], nu) && !holds(c[2], nu)) return false;
  return true;
}

NextResult qbf_next(const QbfFormula& f, const Valuation& nu) {
  check_formula(f);
  if (nu.size() != static_cast<std::size_t>(f.var_count)) throw std::invalid_argument("qbf_next: valuation size");
  NextResult r{nu, {satisfies(f, nu) ? Flag::Yes : Flag::No}};
  for (int i = 0; i < f.var_count; ++i) {
    auto x = static_cast<std::size_t>(i);
    Flag bi = r.b.back();
    Flag out;
    if (bi == Flag::Wait) {
      out = Flag::Wait;
    } else {
      // Existential: yes settles, no tries x=1. Universal: the dual.
      Flag settle = i % 2 == 0 ? Flag::Yes : Flag::No;
      if (bi == settle) {
        r.next[x] = false;
        out = settle;
      } else if (!nu[x]) {
        r.next[x] = true;
        out = Flag::Wait;
      } else {
        r.next[x] = false;
        out = bi;
      }
    }
    r.b.push_back(out);
  }
  return r;
}

namespace {

bool eval(const QbfFormula& f, Valuation& nu, int i) {
  if (i < 0) return satisfies(f, nu);
  auto x = static_cast<std::size_t>(i);
  nu[x] = false;
  bool lo = eval(f, nu, i - 1);
  if (i % 2 == 0 && lo) return true;
  if (i % 2 == 1 && !lo) return false;
  nu[x] = true;
  return eval(f, nu, i - 1);
}

}  // namespace

bool qbf_validity_brute(const QbfFormula& f) {
  check_formula(f);
  if (f.var_count > 20) throw std::invalid_argument("qbf_validity_brute: too many variables");
  Valuation nu(static_cast<std::size_t>(f.var_count), false);
  return eval(f, nu, f.var_count - 1);
}

QbfFormula parse_qdimacs(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  int vars = -1, nclauses = -1;
  std::vector<std::pair<char, int>> prefix;
  std::vector<std::vector<int>> raw;
  int lineno = 0;
  auto fail = [&](const std::string& msg) {
    throw std::invalid_argument("qdimacs line " + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string head;
    if (!(ls >> head) || head == "c") continue;
    if (head == "p") {
      std::string cnf;
      if (!(ls >> cnf >> vars >> nclauses) || cnf != "cnf" || vars < 1 || nclauses < 0) fail("bad problem line");
      continue;
    }
    if (vars < 0) fail("missing 'p cnf' line");
    if (head == "a" || head == "e") {
      if (!raw.empty()) fail("quantifier after clauses");
      int v;
      while (ls >> v && v != 0) {
        if (v < 1 || v > vars) fail("variable out of range");
        prefix.emplace_back(head[0], v);
      }
      continue;
    }
    std::vector<int> lits;
    int v = std::stoi(head);
    while (v != 0) {
      if (v < -vars || v > vars) fail("literal out of range");
      lits.push_back(v);
      if (!(ls >> v)) fail("clause not terminated by 0");
    }
    if (lits.size() != 3) fail("clauses must have exactly 3 literals");
    raw.push_back(lits);
  }
  if (vars < 0) throw std::invalid_argument("qdimacs: missing 'p cnf' line");
  if (static_cast<int>(prefix.size()) != vars)
    throw std::invalid_argument("qdimacs: every variable must be quantified exactly once");
  if (nclauses >= 0 && static_cast<int>(raw.size()) != nclauses)
    throw std::invalid_argument("qdimacs: clause count does not match header");
  // Outermost first; position j maps to x_{n-1-j}, whose parity fixes the
  // quantifier.
  std::vector<int> index(static_cast<std::size_t>(vars) + 1, -1);
  for (std::size_t j = 0; j < prefix.size(); ++j) {
    int xi = vars - 1 - static_cast<int>(j);
    char want = xi % 2 == 0 ? 'e' : 'a';
    if (prefix[j].first != want)
      throw std::invalid_argument("qdimacs: non-alternating prefix (innermost must be 'e')");
    if (index[static_cast<std::size_t>(prefix[j].second)] != -1)
      throw std::invalid_argument("qdimacs: variable quantified twice");
    index[static_cast<std::size_t>(prefix[j].second)] = xi;
  }
  QbfFormula f;
  f.var_count = vars;
  for (const auto& c : raw) {
    Clause cl;
    for (std::size_t k = 0; k < 3; ++k)
      cl[k] = {index[static_cast<std::size_t>(std::abs(c[k]))], c[k] < 0};
    f.clauses.push_back(cl);
  }
  return f;
}

std::string format_qdimacs(const QbfFormula& f) {
  check_formula(f);
  // x_i is written as variable i+1.
  std::ostringstream os;
  os << "p cnf " << f.var_count << " " << f.clauses.size() << "\n";
  for (int i = f.var_count - 1; i >= 0; --i) os << (i % 2 == 0 ? "e " : "a ") << i + 1 << " 0\n";
  for (const auto& c : f.clauses) {
    for (const auto& l : c) os << (l.negated ? "-" : "") << l.var + 1 << " ";
    os << "0\n";
  }
  return os.str();
}

namespace {

std::string lit(const Literal& l) { return (l.negated ? "nx" : "x") + std::to_string(l.var); }
std::string var_state(int i, bool value) { return "v" + std::to_string(i) + (value ? "_t" : "_f"); }

}  // namespace

Protocol gen_qbf(const QbfFormula& f) {
  check_formula(f);
  const int n = f.var_count;
  if (n % 2 != 0) throw std::invalid_argument("gen_qbf: need an even number of variables");
  std::vector<std::string> alpha;
  for (int i = 0; i <= n; ++i)
    for (const char* s : {"wait_", "yes_", "no_"}) alpha.push_back(s + std::to_string(i));
  for (int i = 0; i < n; ++i) {
    alpha.push_back("x" + std::to_string(i));
    alpha.push_back("nx" + std::to_string(i));
  }
  ProtocolBuilder b("qbf", 1, 0, alpha);
  b.init("q0").error("qF");
  auto rd = [&](const std::string& x) { return Action::read(0, 0, b.sym(x)); };
  auto wr = [&](const std::string& x) { return Action::write(0, b.sym(x)); };
  auto num = [](const char* s, int i) { return s + std::to_string(i); };

  b.add("q0", "test0", {Action::nop()});
  b.add("q0", "qint", {Action::nop()});
  for (int i = 0; i < n; ++i) b.add("q0", var_state(i, false), {Action::nop()});
  b.add("qint", "qint", {Action::incr()});
  b.add("qint", "qF", {rd(num("yes_", n))});

  // Test gadget: test0 -> test1 -> ... -> qyes, one clause per link.
  const int p = static_cast<int>(f.clauses.size());
  auto test = [&](int j) { return j == p ? std::string("qyes") : num("test", j); };
  if (p == 0) b.add("test0", "qyes", {Action::nop()});
  for (int j = 0; j < p; ++j) {
    const Clause& c = f.clauses[static_cast<std::size_t>(j)];
    for (const auto& l : c) b.add(test(j), test(j + 1), {rd(lit(l))});
    std::vector<Action> all_false;
    for (const auto& l : c) all_false.push_back(rd(lit({l.var, !l.negated})));
    b.add(test(j), "qno", all_false);
  }
  b.add("qyes", "test0", {Action::incr(), wr("yes_0")});
  b.add("qno", "test0", {Action::incr(), wr("no_0")});

  // Variable gadgets. q_F writes not-x_i, q_T writes x_i.
  for (int i = 0; i < n; ++i) {
    std::string F = var_state(i, false), T = var_state(i, true);
    std::string nx = lit({i, true}), x = lit({i, false});
    auto edge = [&](const std::string& from, const std::string& to, const std::string& write_lit,
                    const char* in, const char* out) {
      b.add(from, to, {wr(write_lit), Action::incr(), rd(num(in, i)), wr(num(out, i + 1))});
    };
    edge(F, F, nx, "wait_", "wait_");
    edge(T, T, x, "wait_", "wait_");
    edge(T, F, x, "yes_", "yes_");
    edge(T, F, x, "no_", "no_");
    if (i % 2 == 0) {
      edge(F, F, nx, "yes_", "yes_");
      edge(F, T, nx, "no_", "wait_");
    } else {
      edge(F, F, nx, "no_", "no_");
      edge(F, T, nx, "yes_", "wait_");
    }
  }
  return b.build();
}

QbfFormula random_qbf(std::mt19937_64& rng, int var_count, int clause_count) {
  QbfFormula f;
  f.var_count = var_count;
  std::uniform_int_distribution<int> var(0, var_count - 1), coin(0, 1);
  for (int j = 0; j < clause_count; ++j) {
    Clause c;
    for (auto& l : c) l = {var(rng), coin(rng) == 1};
    f.clauses.push_back(c);
  }
  return f;
}

}  // namespace rbr
