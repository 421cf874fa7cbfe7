#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "rbr/state_set.hpp"

namespace rbr {

using SymbolId = std::uint32_t;

// Symbol 0 is the initial register value, spelled "_".
inline constexpr SymbolId kBlank = 0;

enum class ActionKind : std::uint8_t { Incr, Nop, Read, Write };

struct Action {
  ActionKind kind = ActionKind::Nop;
  int offset = 0;  // read only: reads register of round k - offset
  int reg = 0;     // read/write
  SymbolId symbol = kBlank;

  static Action incr() { return {ActionKind::Incr, 0, 0, kBlank}; }
  static Action nop() { return {ActionKind::Nop, 0, 0, kBlank}; }
  static Action read(int offset, int reg, SymbolId x) { return {ActionKind::Read, offset, reg, x}; }
  static Action write(int reg, SymbolId x) { return {ActionKind::Write, 0, reg, x}; }

  friend bool operator==(const Action&, const Action&) = default;
};

enum class Guard : std::uint8_t { None, RoundZero, RoundPositive };

struct Transition {
  StateId source = 0;
  StateId target = 0;
  Guard guard = Guard::None;
  std::vector<Action> actions;

  // Atomic transitions carry exactly one action and no guard.
  bool atomic() const { return guard == Guard::None && actions.size() == 1; }
  const Action& action() const { return actions.front(); }
};

struct RegisterRef {
  int round = 0;
  int id = 0;
  auto operator<=>(const RegisterRef&) const = default;
};

struct Location {
  StateId state = 0;
  int round = 0;
  auto operator<=>(const Location&) const = default;
};

class ProtocolError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when a search exceeds its node budget.
class ResourceLimit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Violation {
  std::string kind;  // e.g. "offset-exceeds-visibility"
  std::string detail;
};

struct Protocol {
  std::string name = "protocol";
  int registers = 1;
  int visibility = 0;
  std::vector<std::string> symbols{"_"};
  std::vector<std::string> states;
  StateId init = 0;
  std::optional<StateId> error;
  std::vector<Transition> transitions;
  // Filled by desugar: name of the original state a state was copied from,
  // empty for fresh intermediate states. Not part of equality.
  std::vector<std::optional<std::string>> origin;

  std::size_t state_count() const { return states.size(); }
  std::size_t symbol_count() const { return symbols.size(); }
  std::optional<StateId> find_state(std::string_view n) const;
  std::optional<SymbolId> find_symbol(std::string_view n) const;
  StateId state(std::string_view n) const;  // throws if unknown
  SymbolId symbol(std::string_view n) const;  // throws if unknown
  StateId intern_state(std::string_view n);
  SymbolId intern_symbol(std::string_view n);

  // True when every transition is atomic (the fragment the semantics use).
  bool desugared() const;
  // |Q| + |D| + |T| + v + d
  std::size_t size() const;

  // Name of q in the original protocol (itself unless desugared).
  std::optional<std::string> original_name(StateId q) const;
  // All states whose original name is n.
  std::vector<StateId> copies_of(std::string_view n) const;
  StateSet state_set(const std::vector<StateId>& qs) const;
};

// Structural equality by names; ignores origin tags and state numbering.
bool operator==(const Protocol& a, const Protocol& b);

std::vector<Violation> validate(const Protocol& p);
// Throws ProtocolError listing the violations, if any.
void require_valid(const Protocol& p);
// Throws std::invalid_argument unless p is valid and desugared.
void require_atomic(const Protocol& p, const char* who);

std::string action_to_string(const Protocol& p, const Action& a);
std::string location_to_string(const Protocol& p, const Location& l);
std::string register_to_string(const RegisterRef& r);

// Builder used by generators and tests.
class ProtocolBuilder {
 public:
  ProtocolBuilder(std::string name, int registers, int visibility,
                  const std::vector<std::string>& alphabet);
  ProtocolBuilder& init(std::string_view q);
  ProtocolBuilder& error(std::string_view q);
  ProtocolBuilder& add(std::string_view from, std::string_view to, std::vector<Action> actions,
                       Guard g = Guard::None);
  SymbolId sym(std::string_view x) const { return p_.symbol(x); }
  Protocol build() const;

 private:
  Protocol p_;
  bool has_init_ = false;
};

}  // namespace rbr
