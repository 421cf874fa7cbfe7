#include "rbr/dsl.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

namespace rbr {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    if (j > i) out.emplace_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '@' ||
         c == '+' || c == '$' || c == '\'';
}

bool is_ident(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!ident_char(c)) return false;
  return true;
}

int to_int(std::string_view s, int line, const char* what) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw ParseError(line, std::string("expected integer for ") + what + ", got '" +
                               std::string(s) + "'");
  return v;
}

struct Line {
  int number;
  std::string text;
};

class Parser {
 public:
  explicit Parser(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string raw;
    int n = 0;
    while (std::getline(in, raw)) {
      ++n;
      auto hash = raw.find('#');
      if (hash != std::string::npos) raw.resize(hash);
      auto t = trim(raw);
      if (!t.empty()) lines_.push_back({n, std::string(t)});
    }
    last_line_ = n;
  }

  Protocol run() {
    std::vector<const Line*> edges;
    std::optional<std::pair<int, std::string>> init, error;
    bool have_alphabet = false;
    for (const auto& l : lines_) {
      if (l.text.find("->") != std::string::npos) {
        edges.push_back(&l);
        continue;
      }
      auto tok = split_ws(l.text);
      const std::string& kw = tok[0];
      auto one = [&]() -> const std::string& {
        if (tok.size() != 2) throw ParseError(l.number, "'" + kw + "' takes exactly one argument");
        return tok[1];
      };
      if (kw == "name") {
        p_.name = one();
      } else if (kw == "registers") {
        p_.registers = to_int(one(), l.number, "registers");
        if (p_.registers < 1) throw ParseError(l.number, "registers must be >= 1");
      } else if (kw == "visibility") {
        p_.visibility = to_int(one(), l.number, "visibility");
        if (p_.visibility < 0) throw ParseError(l.number, "visibility must be >= 0");
      } else if (kw == "alphabet") {
        if (have_alphabet) throw ParseError(l.number, "duplicate alphabet");
        have_alphabet = true;
        for (std::size_t i = 1; i < tok.size(); ++i) {
          if (tok[i] == "_") throw ParseError(l.number, "'_' is implicit and cannot be declared");
          if (!is_ident(tok[i])) throw ParseError(l.number, "bad symbol '" + tok[i] + "'");
          if (p_.find_symbol(tok[i])) throw ParseError(l.number, "duplicate symbol '" + tok[i] + "'");
          p_.intern_symbol(tok[i]);
        }
      } else if (kw == "init") {
        init = {l.number, one()};
      } else if (kw == "error") {
        error = {l.number, one()};
      } else {
        throw ParseError(l.number, "unknown directive '" + kw + "'");
      }
    }
    if (!init) throw ParseError(last_line_, "missing init");
    check_state(init->second, init->first);
    p_.init = p_.intern_state(init->second);
    if (error) {
      check_state(error->second, error->first);
      p_.error = p_.intern_state(error->second);
    }
    for (const Line* l : edges) p_.transitions.push_back(transition(*l));
    return p_;
  }

 private:
  void check_state(const std::string& s, int line) {
    if (!is_ident(s)) throw ParseError(line, "bad state name '" + s + "'");
  }

  Transition transition(const Line& l) {
    auto colon = l.text.find(':');
    if (colon == std::string::npos) throw ParseError(l.number, "expected ':' before actions");
    auto head = split_ws(std::string_view(l.text).substr(0, colon));
    if (head.size() < 3 || head.size() > 4 || head[1] != "->")
      throw ParseError(l.number, "expected '<state> -> <state> [guard] : <actions>'");
    check_state(head[0], l.number);
    check_state(head[2], l.number);
    Transition t;
    t.source = p_.intern_state(head[0]);
    t.target = p_.intern_state(head[2]);
    if (head.size() == 4) {
      std::string g = head[3];
      if (g.size() >= 2 && g.front() == '[' && g.back() == ']') g = g.substr(1, g.size() - 2);
      if (g == "k=0")
        t.guard = Guard::RoundZero;
      else if (g == "k>0")
        t.guard = Guard::RoundPositive;
      else
        throw ParseError(l.number, "unknown guard '" + head[3] + "'");
    }
    std::string_view rest = std::string_view(l.text).substr(colon + 1);
    while (true) {
      auto semi = rest.find(';');
      auto part = trim(rest.substr(0, semi));
      if (part.empty()) throw ParseError(l.number, "empty action");
      t.actions.push_back(action(part, l.number));
      if (semi == std::string_view::npos) break;
      rest.remove_prefix(semi + 1);
    }
    return t;
  }

  // Splits "kw[a][b]" into kw and the bracket contents.
  static std::pair<std::string, std::vector<std::string>> brackets(std::string_view s, int line) {
    std::size_t i = 0;
    while (i < s.size() && s[i] != '[') ++i;
    std::string kw(s.substr(0, i));
    std::vector<std::string> groups;
    while (i < s.size()) {
      if (s[i] != '[') throw ParseError(line, "malformed action '" + std::string(s) + "'");
      auto close = s.find(']', i);
      if (close == std::string_view::npos)
        throw ParseError(line, "unclosed '[' in '" + std::string(s) + "'");
      groups.emplace_back(s.substr(i + 1, close - i - 1));
      i = close + 1;
    }
    return {kw, groups};
  }

  SymbolId symbol(const std::string& s, int line) {
    auto x = p_.find_symbol(s);
    if (!x) throw ParseError(line, "unknown symbol '" + s + "'");
    return *x;
  }

  int reg(const std::vector<std::string>& groups, std::size_t idx, int line) {
    if (groups.size() <= idx) {
      if (p_.registers == 1) return 0;
      throw ParseError(line, "register index required when registers > 1");
    }
    int r = to_int(groups[idx], line, "register");
    if (r < 0 || r >= p_.registers)
      throw ParseError(line, "register " + std::to_string(r) + " out of range (registers = " +
                                 std::to_string(p_.registers) + ")");
    return r;
  }

  Action action(std::string_view text, int line) {
    auto tok = split_ws(text);
    auto [kw, groups] = brackets(tok[0], line);
    if (kw == "incr" || kw == "nop") {
      if (tok.size() != 1 || !groups.empty())
        throw ParseError(line, "'" + kw + "' takes no arguments");
      return kw == "incr" ? Action::incr() : Action::nop();
    }
    if (tok.size() != 2) throw ParseError(line, "'" + kw + "' takes one symbol");
    if (kw == "read") {
      if (groups.empty() || groups.size() > 2)
        throw ParseError(line, "read needs an offset: read[-i][r] x");
      std::string_view off = groups[0];
      if (!off.empty() && off.front() == '-') off.remove_prefix(1);
      else if (off != "0") throw ParseError(line, "read offset must be written -i");
      int i = to_int(off, line, "offset");
      if (i > p_.visibility)
        throw ParseError(line, "offset " + std::to_string(i) + " exceeds visibility " +
                                   std::to_string(p_.visibility));
      int r = reg(groups, 1, line);
      return Action::read(i, r, symbol(tok[1], line));
    }
    if (kw == "write") {
      if (groups.size() > 1) throw ParseError(line, "write takes at most one index");
      int r = reg(groups, 0, line);
      SymbolId x = symbol(tok[1], line);
      if (x == kBlank) throw ParseError(line, "cannot write the initial value '_'");
      return Action::write(r, x);
    }
    throw ParseError(line, "unknown action '" + kw + "'");
  }

  std::vector<Line> lines_;
  int last_line_ = 0;
  Protocol p_;
};

}  // namespace

Protocol parse_protocol(std::string_view text) {
  Protocol p = Parser(text).run();
  require_valid(p);
  return p;
}

Protocol load_protocol(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return parse_protocol(os.str());
}

std::string print_protocol(const Protocol& p) {
  std::ostringstream os;
  os << "name " << p.name << "\n";
  os << "registers " << p.registers << "\n";
  os << "visibility " << p.visibility << "\n";
  os << "alphabet";
  for (std::size_t i = 1; i < p.symbols.size(); ++i) os << " " << p.symbols[i];
  os << "\n";
  os << "init " << p.states.at(p.init) << "\n";
  if (p.error) os << "error " << p.states.at(*p.error) << "\n";
  for (const auto& t : p.transitions) {
    os << p.states.at(t.source) << " -> " << p.states.at(t.target);
    if (t.guard == Guard::RoundZero) os << " [k=0]";
    if (t.guard == Guard::RoundPositive) os << " [k>0]";
    os << " :";
    for (std::size_t i = 0; i < t.actions.size(); ++i)
      os << (i ? "; " : " ") << action_to_string(p, t.actions[i]);
    os << "\n";
  }
  return os.str();
}

}  // namespace rbr
