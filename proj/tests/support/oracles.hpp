// Independent reference implementations used by the tests. None of these
// call into the search code they are compared against.
#pragma once

#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "rbr/rbr.hpp"

namespace rbr::testing {

// Abstract reachability directly on a guarded protocol with single-action
// labels: the guard is checked against the round itself. Explores every
// first-write order, saturating the other moves between first writes.
// Returns (original state name, round) pairs with round <= K.
inline std::set<std::pair<std::string, int>> guarded_abstract_reach(const Protocol& p, int K) {
  using Locs = std::set<std::pair<StateId, int>>;
  using Regs = std::set<std::pair<int, int>>;
  auto guard_ok = [](Guard g, int k) {
    return g == Guard::None || (g == Guard::RoundZero && k == 0) || (g == Guard::RoundPositive && k > 0);
  };
  auto writer = [&](const Locs& locs, int round, int reg, SymbolId x) {
    for (const auto& t : p.transitions) {
      const Action& a = t.actions.front();
      if (a.kind == ActionKind::Write && a.reg == reg && a.symbol == x && guard_ok(t.guard, round) &&
          locs.count({t.source, round}) && locs.count({t.target, round}))
        return true;
    }
    return false;
  };
  // Closure under every move except first writes.
  auto close = [&](Locs locs, const Regs& w) {
    for (bool changed = true; changed;) {
      changed = false;
      for (const auto& t : p.transitions) {
        if (t.actions.size() != 1) throw std::logic_error("guarded oracle: single actions only");
        const Action& a = t.actions.front();
        for (int k = 0; k <= K; ++k) {
          if (!locs.count({t.source, k}) || !guard_ok(t.guard, k)) continue;
          int tk = a.kind == ActionKind::Incr ? k + 1 : k;
          if (tk > K || locs.count({t.target, tk})) continue;
          bool ok = false;
          if (a.kind == ActionKind::Incr || a.kind == ActionKind::Nop) ok = true;
          if (a.kind == ActionKind::Write) ok = w.count({k, a.reg}) > 0;
          if (a.kind == ActionKind::Read) {
            int r = k - a.offset;
            if (a.symbol == kBlank)
              ok = !w.count({r, a.reg});
            else
              ok = r >= 0 && w.count({r, a.reg}) && writer(locs, r, a.reg, a.symbol);
          }
          if (ok) {
            locs.insert({t.target, tk});
            changed = true;
          }
        }
      }
    }
    return locs;
  };
  std::set<std::pair<Locs, Regs>> seen;
  std::vector<std::pair<Locs, Regs>> stack{{close({{p.init, 0}}, {}), {}}};
  std::set<std::pair<std::string, int>> out;
  while (!stack.empty()) {
    auto [locs, w] = stack.back();
    stack.pop_back();
    if (!seen.insert({locs, w}).second) continue;
    for (const auto& [q, k] : locs) out.insert({p.states[q], k});
    for (const auto& t : p.transitions) {
      const Action& a = t.actions.front();
      if (a.kind != ActionKind::Write) continue;
      for (int k = 0; k <= K; ++k) {
        if (!locs.count({t.source, k}) || !guard_ok(t.guard, k) || w.count({k, a.reg})) continue;
        Locs l2 = locs;
        l2.insert({t.target, k});
        Regs w2 = w;
        w2.insert({k, a.reg});
        stack.push_back({close(std::move(l2), w2), w2});
      }
    }
  }
  return out;
}

// Number of F_{k+1} candidates: subsequences of the surviving entries stay in
// order, and up to d fresh registers go in as an ordered selection.
// Counted by brute enumeration of merged sequences.
inline std::size_t count_window_successors(std::size_t kept, int d) {
  std::size_t total = 0;
  for (int s = 0; s <= d; ++s) {
    std::size_t perms = 1;
    for (int i = 0; i < s; ++i) perms *= static_cast<std::size_t>(d - i);
    // Count binary words with `kept` zeros and s ones.
    std::size_t words = 0;
    std::size_t len = kept + static_cast<std::size_t>(s);
    for (std::size_t mask = 0; mask < (std::size_t{1} << len); ++mask)
      if (static_cast<std::size_t>(__builtin_popcountll(mask)) == static_cast<std::size_t>(s)) ++words;
    total += perms * words;
  }
  return total;
}

// Bit states of the counter protocol coverable at round k <= 2^(m-1):
// q<i>_0 when k mod 2^i < 2^(i-1), else q<i>_1 (qE for the top bit).
inline std::set<std::string> counter_bit_states(int m, int k) {
  std::set<std::string> out;
  for (int i = 1; i <= m; ++i) {
    int r = k % (1 << i);
    bool one = r >= (1 << (i - 1));
    if (i == m)
      out.insert(one ? "qE" : "q" + std::to_string(i) + "_0");
    else
      out.insert("q" + std::to_string(i) + "_" + (one ? "1" : "0"));
  }
  return out;
}

// Random valid atomic protocol within the given limits. State 0 is init and
// the last state is the error.
inline Protocol random_protocol(std::mt19937_64& rng, int max_states, int max_d, int max_v, int max_alpha,
                                int max_transitions) {
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  Protocol p;
  p.name = "random";
  p.registers = pick(1, max_d);
  p.visibility = pick(0, max_v);
  int nalpha = pick(1, max_alpha);
  for (int i = 0; i < nalpha; ++i) p.intern_symbol(std::string(1, static_cast<char>('a' + i)));
  int nq = pick(2, max_states);
  for (int i = 0; i < nq; ++i) p.intern_state("s" + std::to_string(i));
  p.init = 0;
  p.error = static_cast<StateId>(nq - 1);
  int nt = pick(1, max_transitions);
  for (int i = 0; i < nt; ++i) {
    Transition t;
    t.source = static_cast<StateId>(pick(0, nq - 1));
    t.target = static_cast<StateId>(pick(0, nq - 1));
    int kind = pick(0, 9);
    Action a;
    if (kind < 2)
      a = Action::incr();
    else if (kind < 3)
      a = Action::nop();
    else if (kind < 6)
      a = Action::write(pick(0, p.registers - 1), static_cast<SymbolId>(pick(1, nalpha)));
    else
      a = Action::read(pick(0, p.visibility), pick(0, p.registers - 1), static_cast<SymbolId>(pick(0, nalpha)));
    t.actions = {a};
    p.transitions.push_back(t);
  }
  return p;
}

// Checks the reduction protocol of f round by round against iterated
// qbf_next, for rounds 0..K: the writable flags at round k are the b_j of
// next(nu_{k-1}), the writable literals encode nu_k, and the test gadget
// ends in qyes exactly when nu_k satisfies f. Returns the first mismatch.
inline std::optional<std::string> qbf_trace_mismatch(const QbfFormula& f, int K) {
  Protocol p = desugar(gen_qbf(f));
  auto sat = round_saturation_reach(p, K);
  const int n = f.var_count;
  Valuation nu(static_cast<std::size_t>(n), false);
  for (int k = 0; k <= K; ++k) {
    const auto& round = sat.rounds[static_cast<std::size_t>(k)];
    std::set<std::string> got, expect;
    for (auto x : round.writable) got.insert(p.symbols[x]);
    if (k > 0) {
      auto r = qbf_next(f, nu);
      for (int j = 0; j <= n; ++j) {
        Flag b = r.b[static_cast<std::size_t>(j)];
        if (j > 0 || b != Flag::Wait) expect.insert(flag_name(b) + "_" + std::to_string(j));
      }
      nu = r.next;
    }
    for (int x = 0; x < n; ++x) expect.insert((nu[static_cast<std::size_t>(x)] ? "x" : "nx") + std::to_string(x));
    std::set<std::string> states;
    for (auto q : round.states.elements())
      if (auto name = p.original_name(q)) states.insert(*name);
    bool sat_k = satisfies(f, nu);
    std::string where = "round " + std::to_string(k) + " of\n" + format_qdimacs(f);
    if (got != expect) return "writable symbols differ at " + where;
    if (states.count("qyes") != static_cast<std::size_t>(sat_k) || states.count("qno") == static_cast<std::size_t>(sat_k))
      return "test gadget outcome differs at " + where;
  }
  return std::nullopt;
}

}  // namespace rbr::testing
