#include "rbr/protocol.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

namespace rbr {

std::optional<StateId> Protocol::find_state(std::string_view n) const {
  for (std::size_t i = 0; i < states.size(); ++i)
    if (states[i] == n) return static_cast<StateId>(i);
  return std::nullopt;
}

std::optional<SymbolId> Protocol::find_symbol(std::string_view n) const {
  for (std::size_t i = 0; i < symbols.size(); ++i)
    if (symbols[i] == n) return static_cast<SymbolId>(i);
  return std::nullopt;
}

StateId Protocol::state(std::string_view n) const {
  if (auto q = find_state(n)) return *q;
  throw ProtocolError("unknown state '" + std::string(n) + "'");
}

SymbolId Protocol::symbol(std::string_view n) const {
  if (auto x = find_symbol(n)) return *x;
  throw ProtocolError("unknown symbol '" + std::string(n) + "'");
}

StateId Protocol::intern_state(std::string_view n) {
  if (auto q = find_state(n)) return *q;
  states.emplace_back(n);
  return static_cast<StateId>(states.size() - 1);
}

SymbolId Protocol::intern_symbol(std::string_view n) {
  if (auto x = find_symbol(n)) return *x;
  symbols.emplace_back(n);
  return static_cast<SymbolId>(symbols.size() - 1);
}

bool Protocol::desugared() const {
  return std::all_of(transitions.begin(), transitions.end(),
                     [](const Transition& t) { return t.atomic(); });
}

std::size_t Protocol::size() const {
  return states.size() + symbols.size() + transitions.size() +
         static_cast<std::size_t>(visibility) + static_cast<std::size_t>(registers);
}

std::optional<std::string> Protocol::original_name(StateId q) const {
  if (origin.empty()) return states.at(q);
  return origin.at(q);
}

std::vector<StateId> Protocol::copies_of(std::string_view n) const {
  std::vector<StateId> out;
  for (StateId q = 0; q < states.size(); ++q) {
    auto o = original_name(q);
    if (o && *o == n) out.push_back(q);
  }
  return out;
}

StateSet Protocol::state_set(const std::vector<StateId>& qs) const {
  StateSet s(states.size());
  for (auto q : qs) s.insert(q);
  return s;
}

namespace {

using NamedTransition =
    std::tuple<std::string, std::string, Guard, std::vector<std::tuple<int, int, int, std::string>>>;

std::vector<NamedTransition> named(const Protocol& p) {
  std::vector<NamedTransition> out;
  for (const auto& t : p.transitions) {
    std::vector<std::tuple<int, int, int, std::string>> acts;
    for (const auto& a : t.actions)
      acts.emplace_back(static_cast<int>(a.kind), a.offset, a.reg, p.symbols.at(a.symbol));
    out.emplace_back(p.states.at(t.source), p.states.at(t.target), t.guard, std::move(acts));
  }
  return out;
}

std::optional<std::string> error_name(const Protocol& p) {
  if (!p.error) return std::nullopt;
  return p.states.at(*p.error);
}

}  // namespace

bool operator==(const Protocol& a, const Protocol& b) {
  if (a.name != b.name || a.registers != b.registers || a.visibility != b.visibility) return false;
  if (a.symbols != b.symbols) return false;
  if (std::set<std::string>(a.states.begin(), a.states.end()) !=
      std::set<std::string>(b.states.begin(), b.states.end()))
    return false;
  if (a.states.at(a.init) != b.states.at(b.init)) return false;
  if (error_name(a) != error_name(b)) return false;
  return named(a) == named(b);
}

std::string register_to_string(const RegisterRef& r) {
  return "r" + std::to_string(r.round) + "." + std::to_string(r.id);
}

std::string action_to_string(const Protocol& p, const Action& a) {
  auto reg = [&](int r) { return p.registers == 1 ? std::string() : "[" + std::to_string(r) + "]"; };
  switch (a.kind) {
    case ActionKind::Incr:
      return "incr";
    case ActionKind::Nop:
      return "nop";
    case ActionKind::Read:
      return "read[-" + std::to_string(a.offset) + "]" + reg(a.reg) + " " + p.symbols.at(a.symbol);
    case ActionKind::Write:
      return "write" + reg(a.reg) + " " + p.symbols.at(a.symbol);
  }
  return "?";
}

std::string location_to_string(const Protocol& p, const Location& l) {
  return "(" + p.states.at(l.state) + "," + std::to_string(l.round) + ")";
}

std::vector<Violation> validate(const Protocol& p) {
  std::vector<Violation> out;
  auto add = [&](std::string kind, std::string detail) {
    out.push_back({std::move(kind), std::move(detail)});
  };
  if (p.registers < 1) add("no-registers", "registers per round must be >= 1");
  if (p.visibility < 0) add("negative-visibility", "visibility must be >= 0");
  if (p.symbols.empty() || p.symbols[0] != "_") add("bad-alphabet", "symbol 0 must be '_'");
  {
    std::set<std::string> seen;
    for (const auto& s : p.symbols)
      if (!seen.insert(s).second) add("duplicate-symbol", s);
  }
  {
    std::set<std::string> seen;
    for (const auto& s : p.states)
      if (!seen.insert(s).second) add("duplicate-state", s);
  }
  if (p.states.empty() || p.init >= p.states.size()) add("missing-init", "no initial state");
  if (p.error && *p.error >= p.states.size()) add("bad-error", "error state out of range");
  if (!p.origin.empty() && p.origin.size() != p.states.size())
    add("bad-origin", "origin tags do not cover all states");

  for (std::size_t i = 0; i < p.transitions.size(); ++i) {
    const auto& t = p.transitions[i];
    std::string where = "transition " + std::to_string(i);
    if (t.source >= p.states.size() || t.target >= p.states.size()) {
      add("bad-state", where);
      continue;
    }
    where += " (" + p.states[t.source] + " -> " + p.states[t.target] + ")";
    if (t.actions.empty()) add("empty-label", where);
    for (const auto& a : t.actions) {
      if (a.symbol >= p.symbols.size()) {
        add("unknown-symbol", where);
        continue;
      }
      if (a.kind == ActionKind::Read || a.kind == ActionKind::Write) {
        if (a.reg < 0 || a.reg >= p.registers)
          add("register-out-of-range", where + ": register " + std::to_string(a.reg));
      }
      if (a.kind == ActionKind::Read && (a.offset < 0 || a.offset > p.visibility))
        add("offset-exceeds-visibility", where + ": offset " + std::to_string(a.offset));
      if (a.kind == ActionKind::Write && a.symbol == kBlank)
        add("write-of-initial-value", where);
    }
  }
  return out;
}

void require_valid(const Protocol& p) {
  auto v = validate(p);
  if (v.empty()) return;
  std::ostringstream os;
  os << "invalid protocol:";
  for (const auto& x : v) os << " " << x.kind << " [" << x.detail << "]";
  throw ProtocolError(os.str());
}

void require_atomic(const Protocol& p, const char* who) {
  require_valid(p);
  if (!p.desugared())
    throw std::invalid_argument(std::string(who) + ": protocol must be desugared first");
}

ProtocolBuilder::ProtocolBuilder(std::string name, int registers, int visibility,
                                 const std::vector<std::string>& alphabet) {
  p_.name = std::move(name);
  p_.registers = registers;
  p_.visibility = visibility;
  for (const auto& x : alphabet) p_.intern_symbol(x);
}

ProtocolBuilder& ProtocolBuilder::init(std::string_view q) {
  p_.init = p_.intern_state(q);
  has_init_ = true;
  return *this;
}

ProtocolBuilder& ProtocolBuilder::error(std::string_view q) {
  p_.error = p_.intern_state(q);
  return *this;
}

ProtocolBuilder& ProtocolBuilder::add(std::string_view from, std::string_view to,
                                      std::vector<Action> actions, Guard g) {
  Transition t;
  t.source = p_.intern_state(from);
  t.target = p_.intern_state(to);
  t.guard = g;
  t.actions = std::move(actions);
  p_.transitions.push_back(std::move(t));
  return *this;
}

Protocol ProtocolBuilder::build() const {
  if (!has_init_) throw ProtocolError("builder: missing init");
  require_valid(p_);
  return p_;
}

}  // namespace rbr
