#include "rbr/desugar.hpp"

#include <string>

namespace rbr {
namespace {

std::string fresh_name(const Protocol& p, std::string base) {
  while (p.find_state(base)) base += "'";
  return base;
}

struct Link {
  StateId source;
  StateId target;
  Guard guard;
  Action action;
};

}  // namespace

Protocol desugar(const Protocol& p) {
  require_valid(p);
  if (p.desugared()) return p;

  // Step 1: split multi-action labels.
  Protocol split = p;
  split.transitions.clear();
  if (split.origin.empty())
    for (const auto& s : p.states) split.origin.emplace_back(s);
  std::vector<Link> links;
  bool guarded = false;
  for (std::size_t i = 0; i < p.transitions.size(); ++i) {
    const auto& t = p.transitions[i];
    guarded |= t.guard != Guard::None;
    StateId cur = t.source;
    for (std::size_t j = 0; j < t.actions.size(); ++j) {
      StateId next = t.target;
      if (j + 1 < t.actions.size()) {
        next = split.intern_state(
            fresh_name(split, p.states[t.source] + "$" + std::to_string(i) + "." + std::to_string(j + 1)));
        split.origin.emplace_back(std::nullopt);
      }
      links.push_back({cur, next, j == 0 ? t.guard : Guard::None, t.actions[j]});
      cur = next;
    }
  }

  if (!guarded) {
    for (const auto& l : links) split.transitions.push_back({l.source, l.target, Guard::None, {l.action}});
    require_valid(split);
    return split;
  }

  // Step 2: phase copies.
  Protocol out;
  out.name = p.name;
  out.registers = p.registers;
  out.visibility = p.visibility;
  out.symbols = p.symbols;
  // Copies are interned lazily so that isolated copies are dropped.
  std::vector<std::optional<StateId>> zero(split.states.size()), plus(split.states.size());
  auto copy = [&](StateId q, bool positive) {
    auto& slot = positive ? plus[q] : zero[q];
    if (!slot) {
      slot = out.intern_state(fresh_name(split, split.states[q] + (positive ? "@+" : "@0")));
      out.origin.push_back(split.origin[q]);
    }
    return *slot;
  };

  out.init = copy(split.init, false);
  if (split.error) out.error = copy(*split.error, false);
  for (const auto& l : links) {
    bool incr = l.action.kind == ActionKind::Incr;
    if (l.guard != Guard::RoundPositive)
      out.transitions.push_back({copy(l.source, false), copy(l.target, incr), Guard::None, {l.action}});
    if (l.guard != Guard::RoundZero)
      out.transitions.push_back({copy(l.source, true), copy(l.target, true), Guard::None, {l.action}});
  }
  if (split.error) copy(*split.error, true);
  require_valid(out);
  return out;
}

}  // namespace rbr
