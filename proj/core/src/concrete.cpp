#include "rbr/concrete.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <unordered_map>

namespace rbr {

Location move_source(const Protocol& p, const Move& m) {
  return {p.transitions.at(m.transition).source, m.round};
}

Location move_target(const Protocol& p, const Move& m) {
  const auto& t = p.transitions.at(m.transition);
  return {t.target, m.round + (t.action().kind == ActionKind::Incr ? 1 : 0)};
}

std::string move_to_string(const Protocol& p, const Move& m) {
  const auto& t = p.transitions.at(m.transition);
  return std::to_string(m.round) + ": " + p.states[t.source] + " -" + action_to_string(p, t.action()) +
         "-> " + p.states[t.target];
}

int ConcreteConfig::process_count() const {
  int n = 0;
  for (const auto& [l, c] : counts) n += c;
  return n;
}

int ConcreteConfig::count(const Location& l) const {
  auto it = counts.find(l);
  return it == counts.end() ? 0 : it->second;
}

SymbolId ConcreteConfig::value(const RegisterRef& r) const {
  auto it = regs.find(r);
  return it == regs.end() ? kBlank : it->second;
}

ConcreteConfig initial_concrete(const Protocol& p, int n) {
  if (n < 1) throw std::invalid_argument("initial_concrete: need at least one process");
  ConcreteConfig c;
  c.counts[{p.init, 0}] = n;
  return c;
}

bool move_enabled(const Protocol& p, const ConcreteConfig& c, const Move& m) {
  if (m.transition >= p.transitions.size() || m.round < 0) return false;
  if (c.count(move_source(p, m)) == 0) return false;
  const Action& a = p.transitions[m.transition].action();
  if (a.kind == ActionKind::Read) return c.value({m.round - a.offset, a.reg}) == a.symbol;
  return true;
}

std::vector<Move> enabled_moves(const Protocol& p, const ConcreteConfig& c, int round_cap) {
  std::vector<Move> out;
  for (const auto& [l, n] : c.counts) {
    for (std::size_t i = 0; i < p.transitions.size(); ++i) {
      const auto& t = p.transitions[i];
      if (t.source != l.state) continue;
      Move m{i, l.round};
      if (move_target(p, m).round > round_cap) continue;
      if (move_enabled(p, c, m)) out.push_back(m);
    }
  }
  return out;
}

void apply_move_in_place(const Protocol& p, ConcreteConfig& c, const Move& m) {
  if (!move_enabled(p, c, m)) throw MoveNotEnabled("move not enabled: " + move_to_string(p, m));
  Location src = move_source(p, m);
  if (--c.counts[src] == 0) c.counts.erase(src);
  ++c.counts[move_target(p, m)];
  const Action& a = p.transitions[m.transition].action();
  if (a.kind == ActionKind::Write) c.regs[{m.round, a.reg}] = a.symbol;
}

ConcreteConfig apply_move(const Protocol& p, const ConcreteConfig& c, const Move& m) {
  ConcreteConfig next = c;
  apply_move_in_place(p, next, m);
  return next;
}

std::vector<ConcreteConfig> replay(const Protocol& p, const ConcreteExecution& e) {
  require_atomic(p, "replay");
  std::vector<ConcreteConfig> out{e.initial};
  out.reserve(e.schedule.size() + 1);
  for (const auto& m : e.schedule) out.push_back(apply_move(p, out.back(), m));
  return out;
}

ConcreteConfig final_config(const Protocol& p, const ConcreteExecution& e) {
  ConcreteConfig c = e.initial;
  for (const auto& m : e.schedule) apply_move_in_place(p, c, m);
  return c;
}

namespace {

ConcreteExecution copycat_rec(const Protocol& p, const ConcreteConfig& initial,
                              const std::vector<Move>& s, std::size_t len, const Location& target,
                              int n) {
  if (initial.count(target) > 0) {
    ConcreteExecution e{initial, {s.begin(), s.begin() + static_cast<std::ptrdiff_t>(len)}};
    e.initial.counts[target] += n;
    return e;
  }
  std::size_t i = len;
  while (i > 0 && move_target(p, s[i - 1]) != target) --i;
  if (i == 0) throw std::invalid_argument("copycat_extend: target never produced");
  const Move& m = s[i - 1];
  ConcreteExecution e = copycat_rec(p, initial, s, i - 1, move_source(p, m), n);
  for (int k = 0; k <= n; ++k) e.schedule.push_back(m);
  e.schedule.insert(e.schedule.end(), s.begin() + static_cast<std::ptrdiff_t>(i),
                    s.begin() + static_cast<std::ptrdiff_t>(len));
  return e;
}

}  // namespace

ConcreteExecution copycat_extend(const Protocol& p, const ConcreteExecution& e,
                                 const Location& target, int n) {
  require_atomic(p, "copycat_extend");
  if (n < 0) throw std::invalid_argument("copycat_extend: negative count");
  if (final_config(p, e).count(target) == 0)
    throw std::invalid_argument("copycat_extend: target " + location_to_string(p, target) +
                                " not in final support");
  if (n == 0) return e;
  return copycat_rec(p, e.initial, e.schedule, e.schedule.size(), target, n);
}

ConcreteExecution rewrite_register(const Protocol& p, const ConcreteExecution& e,
                                   const RegisterRef& r, std::optional<std::size_t> at) {
  require_atomic(p, "rewrite_register");
  // Index of the write that determines r's value right after step `at`.
  std::optional<std::size_t> writer;
  for (std::size_t i = 0; i < e.schedule.size(); ++i) {
    if (at && i > *at) break;
    const auto& m = e.schedule[i];
    const Action& a = p.transitions[m.transition].action();
    if (a.kind == ActionKind::Write && a.reg == r.id && m.round == r.round) {
      writer = i;
      if (!at) break;
    }
  }
  if (!writer) throw std::invalid_argument("rewrite_register: " + register_to_string(r) + " never written");
  const Move w = e.schedule[*writer];
  ConcreteExecution prefix{e.initial, {e.schedule.begin(), e.schedule.begin() + static_cast<std::ptrdiff_t>(*writer)}};
  ConcreteExecution out = copycat_extend(p, prefix, move_source(p, w), 1);
  out.schedule.insert(out.schedule.end(), e.schedule.begin() + static_cast<std::ptrdiff_t>(*writer),
                      e.schedule.end());
  out.schedule.push_back(w);
  return out;
}

ConcreteExecution random_execution(const Protocol& p, int n, std::size_t steps, std::uint64_t seed,
                                   int round_cap) {
  require_atomic(p, "random_execution");
  std::mt19937_64 rng(seed);
  ConcreteExecution e{initial_concrete(p, n), {}};
  ConcreteConfig c = e.initial;
  for (std::size_t i = 0; i < steps; ++i) {
    auto moves = enabled_moves(p, c, round_cap);
    if (moves.empty()) break;
    std::uniform_int_distribution<std::size_t> pick(0, moves.size() - 1);
    const Move m = moves[pick(rng)];
    apply_move_in_place(p, c, m);
    e.schedule.push_back(m);
  }
  return e;
}

int active_rounds(const Protocol& p, const ConcreteExecution& e) {
  require_atomic(p, "active_rounds");
  // Tokens 0..n-1, each move taken by the smallest token at its source.
  std::vector<Location> token;
  for (const auto& [l, c] : e.initial.counts)
    for (int i = 0; i < c; ++i) token.push_back(l);
  const std::size_t len = e.schedule.size();
  std::vector<std::size_t> mover(len);
  std::vector<std::vector<Location>> positions;  // positions[t][token]
  positions.push_back(token);
  for (std::size_t t = 0; t < len; ++t) {
    Location src = move_source(p, e.schedule[t]);
    auto it = std::find(token.begin(), token.end(), src);
    if (it == token.end()) throw MoveNotEnabled("active_rounds: no process at " + location_to_string(p, src));
    mover[t] = static_cast<std::size_t>(it - token.begin());
    *it = move_target(p, e.schedule[t]);
    positions.push_back(token);
  }
  // last_move[token] = last step index the token performs.
  std::vector<std::ptrdiff_t> last_move(token.size(), -1);
  for (std::size_t t = 0; t < len; ++t) last_move[mover[t]] = static_cast<std::ptrdiff_t>(t);
  int best = 0;
  for (std::size_t t = 0; t <= len; ++t) {
    std::vector<int> rounds;
    for (std::size_t j = 0; j < token.size(); ++j)
      if (last_move[j] >= static_cast<std::ptrdiff_t>(t)) rounds.push_back(positions[t][j].round);
    std::sort(rounds.begin(), rounds.end());
    rounds.erase(std::unique(rounds.begin(), rounds.end()), rounds.end());
    best = std::max(best, static_cast<int>(rounds.size()));
  }
  return best;
}

std::string format_trace(const Protocol& p, const ConcreteExecution& e) {
  std::ostringstream os;
  os << "init n=" << e.initial.process_count() << "\n";
  for (const auto& m : e.schedule) os << move_to_string(p, m) << "\n";
  return os.str();
}

namespace {

std::vector<int> config_key(const ConcreteConfig& c) {
  std::vector<int> k;
  k.reserve(3 * c.counts.size() + 3 * c.regs.size() + 1);
  for (const auto& [l, n] : c.counts) {
    k.push_back(static_cast<int>(l.state));
    k.push_back(l.round);
    k.push_back(n);
  }
  k.push_back(-1);
  for (const auto& [r, x] : c.regs) {
    k.push_back(r.round);
    k.push_back(r.id);
    k.push_back(static_cast<int>(x));
  }
  return k;
}

struct VecHash {
  std::size_t operator()(const std::vector<int>& v) const {
    std::size_t h = 1469598103934665603ull;
    for (int x : v) h = (h ^ static_cast<std::size_t>(x)) * 1099511628211ull;
    return h;
  }
};

bool covers(const ConcreteConfig& c, const StateSet& targets) {
  for (const auto& [l, n] : c.counts)
    if (targets.contains(l.state)) return true;
  return false;
}

}  // namespace

ConcreteSearchResult concrete_search(const Protocol& p, int n, int round_cap, const StateSet& targets,
                                     std::size_t node_budget) {
  require_atomic(p, "concrete_search");
  ConcreteSearchResult res;
  struct Node {
    ConcreteConfig config;
    std::size_t parent;
    Move move;
  };
  std::vector<Node> nodes;
  std::unordered_map<std::vector<int>, std::size_t, VecHash> seen;
  nodes.push_back({initial_concrete(p, n), 0, {}});
  seen.emplace(config_key(nodes[0].config), 0);
  auto witness = [&](std::size_t i) {
    ConcreteExecution e{nodes[0].config, {}};
    while (i != 0) {
      e.schedule.push_back(nodes[i].move);
      i = nodes[i].parent;
    }
    std::reverse(e.schedule.begin(), e.schedule.end());
    return e;
  };
  for (std::size_t head = 0; head < nodes.size(); ++head) {
    ++res.explored;
    if (covers(nodes[head].config, targets)) {
      res.witness = witness(head);
      res.exhausted = true;
      return res;
    }
    for (const Move& m : enabled_moves(p, nodes[head].config, round_cap)) {
      ConcreteConfig next = apply_move(p, nodes[head].config, m);
      auto [it, fresh] = seen.emplace(config_key(next), nodes.size());
      if (!fresh) continue;
      if (nodes.size() >= node_budget) return res;
      nodes.push_back({std::move(next), head, m});
    }
  }
  res.exhausted = true;
  return res;
}

}  // namespace rbr
