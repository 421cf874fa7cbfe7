#include "rbr/abstract.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <unordered_map>

namespace rbr {

AbstractConfig initial_abstract(const Protocol& p) {
  AbstractConfig s;
  s.locs.insert({p.init, 0});
  return s;
}

namespace {

bool writer_pair(const Protocol& p, const std::set<Location>& locs, int round, int reg, SymbolId x) {
  for (const auto& t : p.transitions) {
    const Action& a = t.action();
    if (a.kind == ActionKind::Write && a.reg == reg && a.symbol == x && locs.count({t.source, round}) &&
        locs.count({t.target, round}))
      return true;
  }
  return false;
}

}  // namespace

std::optional<std::string> abstract_rejection(const Protocol& p, const AbstractConfig& s, const Move& m) {
  if (m.transition >= p.transitions.size()) return "unknown-transition";
  if (!s.locs.count(move_source(p, m))) return "source-not-covered";
  const Action& a = p.transitions[m.transition].action();
  if (a.kind != ActionKind::Read) return std::nullopt;
  RegisterRef r{m.round - a.offset, a.reg};
  if (a.symbol == kBlank) {
    if (s.written.count(r)) return "read-blank-of-written-register";
    return std::nullopt;
  }
  if (!s.written.count(r)) return "read-of-unwritten-register";
  if (!writer_pair(p, s.locs, r.round, r.id, a.symbol)) return "read-without-writer";
  return std::nullopt;
}

void abstract_step_in_place(const Protocol& p, AbstractConfig& s, const Move& m) {
  if (auto why = abstract_rejection(p, s, m))
    throw MoveNotEnabled("abstract move not enabled (" + *why + "): " + move_to_string(p, m));
  s.locs.insert(move_target(p, m));
  const Action& a = p.transitions[m.transition].action();
  if (a.kind == ActionKind::Write) s.written.insert({m.round, a.reg});
}

AbstractConfig abstract_step(const Protocol& p, const AbstractConfig& s, const Move& m) {
  AbstractConfig next = s;
  abstract_step_in_place(p, next, m);
  return next;
}

std::vector<AbstractConfig> abstract_replay(const Protocol& p, const AbstractExecution& x) {
  require_atomic(p, "abstract_replay");
  std::vector<AbstractConfig> out{initial_abstract(p)};
  for (const auto& m : x.schedule) out.push_back(abstract_step(p, out.back(), m));
  return out;
}

AbstractConfig abstract_final(const Protocol& p, const AbstractExecution& x) {
  require_atomic(p, "abstract_final");
  AbstractConfig s = initial_abstract(p);
  for (const auto& m : x.schedule) abstract_step_in_place(p, s, m);
  return s;
}

AbstractExecution lift(const Protocol& p, const ConcreteExecution& e) {
  require_atomic(p, "lift");
  if (e.initial.counts.size() != 1 || e.initial.counts.begin()->first != Location{p.init, 0} ||
      !e.initial.regs.empty())
    throw std::invalid_argument("lift: execution must start in an initial configuration");
  AbstractExecution x{e.schedule};
  abstract_final(p, x);  // throws if some step is not abstractly enabled
  return x;
}

ConcreteExecution concretize(const Protocol& p, const AbstractExecution& x) {
  require_atomic(p, "concretize");
  ConcreteExecution e{initial_concrete(p, 1), {}};
  ConcreteConfig c = e.initial;
  AbstractConfig s = initial_abstract(p);
  auto ensure = [&](const Location& l, int need) {
    int have = c.count(l);
    if (have >= need) return;
    e = copycat_extend(p, e, l, need - have);
    c = final_config(p, e);
  };
  auto apply = [&](const Move& m) {
    apply_move_in_place(p, c, m);
    e.schedule.push_back(m);
  };
  for (const auto& m : x.schedule) {
    if (auto why = abstract_rejection(p, s, m))
      throw MoveNotEnabled("concretize: abstract move not enabled (" + *why + "): " + move_to_string(p, m));
    const Action& a = p.transitions[m.transition].action();
    if (a.kind == ActionKind::Read && a.symbol != kBlank) {
      int r = m.round - a.offset;
      std::optional<std::size_t> w;
      for (std::size_t i = 0; i < p.transitions.size() && !w; ++i) {
        const auto& t = p.transitions[i];
        const Action& b = t.action();
        if (b.kind == ActionKind::Write && b.reg == a.reg && b.symbol == a.symbol &&
            s.locs.count({t.source, r}) && s.locs.count({t.target, r}))
          w = i;
      }
      ensure({p.transitions[*w].source, r}, 2);
      apply({*w, r});
    }
    ensure(move_source(p, m), 2);
    apply(m);
    abstract_step_in_place(p, s, m);
  }
  return e;
}

AbstractExecution slice_execution(const Protocol& p, const AbstractExecution& x, const Location& target) {
  require_atomic(p, "slice_execution");
  const auto& s = x.schedule;
  std::map<Location, std::size_t> producer;
  std::map<RegisterRef, std::size_t> first_write;
  std::vector<std::vector<std::size_t>> deps(s.size());
  const Location origin{p.init, 0};
  AbstractConfig cur = initial_abstract(p);
  auto need_loc = [&](std::size_t i, const Location& l) {
    if (l == origin) return;
    deps[i].push_back(producer.at(l));
  };
  for (std::size_t i = 0; i < s.size(); ++i) {
    const Move& m = s[i];
    const Action& a = p.transitions[m.transition].action();
    need_loc(i, move_source(p, m));
    if (a.kind == ActionKind::Read && a.symbol != kBlank) {
      RegisterRef r{m.round - a.offset, a.reg};
      deps[i].push_back(first_write.at(r));
      for (const auto& t : p.transitions) {
        const Action& b = t.action();
        if (b.kind == ActionKind::Write && b.reg == a.reg && b.symbol == a.symbol &&
            cur.locs.count({t.source, r.round}) && cur.locs.count({t.target, r.round})) {
          need_loc(i, {t.source, r.round});
          need_loc(i, {t.target, r.round});
          break;
        }
      }
    }
    abstract_step_in_place(p, cur, m);
    producer.emplace(move_target(p, m), i);
    if (a.kind == ActionKind::Write) first_write.emplace(RegisterRef{m.round, a.reg}, i);
  }
  if (target == origin) return {};
  auto it = producer.find(target);
  if (it == producer.end()) throw std::invalid_argument("slice_execution: target not covered");
  std::vector<bool> keep(s.size(), false);
  std::vector<std::size_t> stack{it->second};
  while (!stack.empty()) {
    std::size_t i = stack.back();
    stack.pop_back();
    if (keep[i]) continue;
    keep[i] = true;
    for (auto d : deps[i]) stack.push_back(d);
  }
  AbstractExecution out;
  for (std::size_t i = 0; i < s.size(); ++i)
    if (keep[i]) out.schedule.push_back(s[i]);
  return out;
}

namespace {

// Per-state outgoing atomic transitions.
std::vector<std::vector<std::size_t>> outgoing(const Protocol& p) {
  std::vector<std::vector<std::size_t>> out(p.states.size());
  for (std::size_t i = 0; i < p.transitions.size(); ++i) out[p.transitions[i].source].push_back(i);
  return out;
}

// Applies every enabled move with target round <= K that is not a first
// write, until nothing changes. Applied moves are appended to `log`.
void saturate(const Protocol& p, const std::vector<std::vector<std::size_t>>& out, AbstractConfig& s, int K,
              std::vector<Move>& log) {
  // A read can become enabled by a later location, so rescan until stable.
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<Location> all(s.locs.begin(), s.locs.end());
    for (const auto& l : all) {
      for (auto ti : out[l.state]) {
        Move m{ti, l.round};
        Location tgt = move_target(p, m);
        if (tgt.round > K || s.locs.count(tgt)) continue;
        const Action& a = p.transitions[ti].action();
        if (a.kind == ActionKind::Write && !s.written.count({l.round, a.reg})) continue;
        if (abstract_rejection(p, s, m)) continue;
        s.locs.insert(tgt);
        log.push_back(m);
        changed = true;
      }
    }
  }
}

std::vector<int> abstract_key(const AbstractConfig& s) {
  std::vector<int> k;
  k.reserve(2 * (s.locs.size() + s.written.size()) + 1);
  for (const auto& w : s.written) {
    k.push_back(w.round);
    k.push_back(w.id);
  }
  k.push_back(-1);
  for (const auto& l : s.locs) {
    k.push_back(static_cast<int>(l.state));
    k.push_back(l.round);
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

struct MacroNode {
  AbstractConfig config;
  std::size_t parent;
  std::vector<Move> moves;  // moves from the parent's configuration
};

// Breadth-first search over saturated configurations, branching on first
// writes. `visit` returns true to stop.
template <class Visit>
void explore(const Protocol& p, int K, std::size_t budget, std::vector<MacroNode>& nodes, Visit visit) {
  auto out = outgoing(p);
  std::unordered_map<std::vector<int>, std::size_t, VecHash> seen;
  MacroNode root{initial_abstract(p), 0, {}};
  saturate(p, out, root.config, K, root.moves);
  seen.emplace(abstract_key(root.config), 0);
  nodes.push_back(std::move(root));
  for (std::size_t head = 0; head < nodes.size(); ++head) {
    if (visit(head)) return;
    std::vector<Move> first_writes;
    for (const auto& l : nodes[head].config.locs)
      for (auto ti : out[l.state]) {
        const Action& a = p.transitions[ti].action();
        if (a.kind == ActionKind::Write && !nodes[head].config.written.count({l.round, a.reg}))
          first_writes.push_back({ti, l.round});
      }
    for (const Move& m : first_writes) {
      MacroNode child{nodes[head].config, head, {m}};
      abstract_step_in_place(p, child.config, m);
      saturate(p, out, child.config, K, child.moves);
      auto [it, fresh] = seen.emplace(abstract_key(child.config), nodes.size());
      if (!fresh) continue;
      if (nodes.size() >= budget) throw ResourceLimit("abstract search: node budget exceeded");
      nodes.push_back(std::move(child));
    }
  }
}

}  // namespace

AbstractReach bounded_abstract_reach(const Protocol& p, int K, const std::optional<StateSet>& targets,
                                     std::size_t node_budget) {
  require_atomic(p, "bounded_abstract_reach");
  AbstractReach res;
  std::vector<MacroNode> nodes;
  explore(p, K, node_budget, nodes, [&](std::size_t i) {
    ++res.explored;
    const auto& locs = nodes[i].config.locs;
    res.coverable.insert(locs.begin(), locs.end());
    if (!targets) return false;
    std::optional<Location> hit;
    for (const auto& l : locs)
      if (targets->contains(l.state) && (!hit || l.round < hit->round)) hit = l;
    if (!hit) return false;
    std::vector<std::size_t> path;
    for (std::size_t j = i; j != 0; j = nodes[j].parent) path.push_back(j);
    path.push_back(0);
    AbstractExecution x;
    for (auto it = path.rbegin(); it != path.rend(); ++it)
      x.schedule.insert(x.schedule.end(), nodes[*it].moves.begin(), nodes[*it].moves.end());
    res.witness = slice_execution(p, x, *hit);
    res.covered = hit;
    return true;
  });
  return res;
}

bool bounded_compatible(const Protocol& p, const Location& a, const Location& b, int K, std::size_t node_budget) {
  require_atomic(p, "bounded_compatible");
  bool found = false;
  std::vector<MacroNode> nodes;
  explore(p, K, node_budget, nodes, [&](std::size_t i) {
    const auto& locs = nodes[i].config.locs;
    found = locs.count(a) && locs.count(b);
    return found;
  });
  return found;
}

SaturationReach round_saturation_reach(const Protocol& p, int K, const std::optional<StateSet>& targets) {
  require_atomic(p, "round_saturation_reach");
  if (p.registers != 1 || p.visibility != 0)
    throw std::invalid_argument("round_saturation_reach: needs one register per round and visibility 0");
  const std::size_t nq = p.states.size();
  SaturationReach res;
  StateSet prev(nq);
  for (int k = 0; k <= K; ++k) {
    // Phase 1: register still blank; blank reads and nops only.
    StateSet blank(nq);
    if (k == 0) {
      blank.insert(p.init);
    } else {
      for (const auto& t : p.transitions)
        if (t.action().kind == ActionKind::Incr && prev.contains(t.source)) blank.insert(t.target);
    }
    for (bool changed = true; changed;) {
      changed = false;
      for (const auto& t : p.transitions) {
        const Action& a = t.action();
        bool ok = a.kind == ActionKind::Nop || (a.kind == ActionKind::Read && a.symbol == kBlank);
        if (ok && blank.contains(t.source)) changed |= blank.insert(t.target);
      }
    }
    // Phase 2: register written; writes, nops and reads of writable symbols.
    StateSet full = blank;
    std::vector<bool> writable(p.symbols.size(), false);
    bool feasible = false;
    for (const auto& t : p.transitions)
      feasible |= t.action().kind == ActionKind::Write && blank.contains(t.source);
    if (feasible) {
      for (bool changed = true; changed;) {
        changed = false;
        for (const auto& t : p.transitions) {
          if (!full.contains(t.source)) continue;
          const Action& a = t.action();
          if (a.kind == ActionKind::Write) {
            changed |= !writable[a.symbol];
            writable[a.symbol] = true;
            changed |= full.insert(t.target);
          } else if (a.kind == ActionKind::Nop ||
                     (a.kind == ActionKind::Read && a.symbol != kBlank && writable[a.symbol])) {
            changed |= full.insert(t.target);
          }
        }
      }
    }
    SaturationRound r{k, full, {}};
    for (SymbolId x = 1; x < writable.size(); ++x)
      if (writable[x]) r.writable.push_back(x);
    if (targets && !res.covered_round) {
      for (auto q : full.elements())
        if (targets->contains(q)) res.covered_round = k;
    }
    res.rounds.push_back(std::move(r));
    prev = std::move(full);
  }
  return res;
}

std::string format_saturation(const Protocol& p, const SaturationReach& r) {
  std::ostringstream os;
  for (const auto& round : r.rounds) {
    std::set<std::string> names;
    for (auto q : round.states.elements())
      if (auto n = p.original_name(q)) names.insert(*n);
    os << "round " << round.round << ": states = {";
    bool first = true;
    for (const auto& n : names) {
      os << (first ? "" : ", ") << n;
      first = false;
    }
    os << "}; writable = {";
    for (std::size_t i = 0; i < round.writable.size(); ++i)
      os << (i ? ", " : "") << p.symbols[round.writable[i]];
    os << "}\n";
  }
  return os.str();
}

}  // namespace rbr
