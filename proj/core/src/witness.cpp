#include "rbr/witness.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "rbr/fwo.hpp"

namespace rbr {

std::string format_witness(const WitnessFamily& w) {
  std::ostringstream os;
  os << "UNSAFE round=" << w.round << "\n";
  for (std::size_t r = 0; r < w.F.size(); ++r) {
    os << "F[" << r << "] =";
    for (const auto& e : w.F[r]) os << " " << register_to_string(e);
    os << "\n";
  }
  return os.str();
}

WitnessFamily parse_witness(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  WitnessFamily w;
  if (!std::getline(in, line) || line.rfind("UNSAFE round=", 0) != 0)
    throw std::invalid_argument("witness: expected 'UNSAFE round=<k>'");
  try {
    w.round = std::stoi(line.substr(13));
  } catch (const std::exception&) {
    throw std::invalid_argument("witness: bad round in '" + line + "'");
  }
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::string head = "F[" + std::to_string(w.F.size()) + "] =";
    if (line.rfind(head, 0) != 0) throw std::invalid_argument("witness: expected '" + head + "'");
    w.F.push_back(parse_fwo(line.substr(head.size())));
  }
  if (w.round < 0 || w.F.size() != static_cast<std::size_t>(w.round) + 1)
    throw std::invalid_argument("witness: need exactly round+1 F lines");
  return w;
}

namespace {

RegisterSeq restrict(const RegisterSeq& f, int lo, int hi) {
  RegisterSeq out;
  for (const auto& e : f)
    if (e.round >= lo && e.round <= hi) out.push_back(e);
  return out;
}

// Longest prefix of F_r whose rounds [r+1-v, r] agree with those of f,
// tried from the longest prefix down.
std::size_t match_adjacent(const RegisterSeq& Fr, const RegisterSeq& f, int r, int v) {
  RegisterSeq want = restrict(f, r + 1 - v, r);
  for (std::size_t len = Fr.size() + 1; len-- > 0;) {
    RegisterSeq g(Fr.begin(), Fr.begin() + static_cast<std::ptrdiff_t>(len));
    if (restrict(g, r + 1 - v, r) == want) return len;
  }
  return static_cast<std::size_t>(-1);
}

bool has_prefix(const RegisterSeq& F, std::size_t len, const RegisterRef& reg) {
  return std::find(F.begin(), F.begin() + static_cast<std::ptrdiff_t>(len), reg) !=
         F.begin() + static_cast<std::ptrdiff_t>(len);
}

}  // namespace

ReplayResult replay_witness(const Protocol& p, const StateSet& targets, const WitnessFamily& w) {
  require_atomic(p, "replay_witness");
  const int v = p.visibility;
  const int K = w.round;
  const std::size_t nq = p.states.size();
  auto refuted = [](std::string why) { return ReplayResult{false, std::move(why)}; };
  if (K < 0 || w.F.size() != static_cast<std::size_t>(K) + 1) return refuted("family length does not match round");

  for (int r = 0; r <= K; ++r) {
    const auto& F = w.F[static_cast<std::size_t>(r)];
    std::set<RegisterRef> seen;
    for (const auto& e : F) {
      if (e.round < std::max(0, r - v) || e.round > r || e.id < 0 || e.id >= p.registers)
        return refuted("F[" + std::to_string(r) + "] holds out-of-window register " + register_to_string(e));
      if (!seen.insert(e).second) return refuted("F[" + std::to_string(r) + "] repeats " + register_to_string(e));
    }
    if (r > 0 && restrict(F, r - v, r - 1) != restrict(w.F[static_cast<std::size_t>(r - 1)], r - v, r - 1))
      return refuted("F[" + std::to_string(r) + "] is not an extension of F[" + std::to_string(r - 1) + "]");
  }

  // S[r][i]: states for the prefix of length i of F_r.
  std::vector<std::vector<StateSet>> S;
  for (int k = 0; k <= K; ++k) {
    const auto& F = w.F[static_cast<std::size_t>(k)];
    // matches[j][i]: prefix length in F_{k-j} matched with prefix i of F_k.
    std::vector<std::vector<std::size_t>> matches(static_cast<std::size_t>(std::min(k, v + 1) + 1));
    for (std::size_t i = 0; i <= F.size(); ++i) matches[0].push_back(i);
    for (std::size_t j = 1; j < matches.size(); ++j) {
      int r = k - static_cast<int>(j);
      const auto& upper = w.F[static_cast<std::size_t>(r + 1)];
      for (std::size_t i = 0; i <= F.size(); ++i) {
        std::size_t up = matches[j - 1][i];
        RegisterSeq f(upper.begin(), upper.begin() + static_cast<std::ptrdiff_t>(up));
        std::size_t m = match_adjacent(w.F[static_cast<std::size_t>(r)], f, r, v);
        if (m == static_cast<std::size_t>(-1)) return refuted("no synchronisation at round " + std::to_string(r));
        matches[j].push_back(m);
      }
    }
    std::vector<StateSet> cur;
    for (std::size_t i = 0; i <= F.size(); ++i) {
      StateSet s = i == 0 ? StateSet(nq) : cur[i - 1];
      if (k == 0 && i == 0) s.insert(p.init);
      if (k > 0)
        for (const auto& t : p.transitions)
          if (t.action().kind == ActionKind::Incr &&
              S[static_cast<std::size_t>(k - 1)][matches[1][i]].contains(t.source))
            s.insert(t.target);
      if (i > 0 && F[i - 1].round == k) {
        bool ok = false;
        for (const auto& t : p.transitions)
          ok |= t.action().kind == ActionKind::Write && t.action().reg == F[i - 1].id && s.contains(t.source);
        if (!ok)
          return refuted("first write of " + register_to_string(F[i - 1]) + " not enabled at round " +
                         std::to_string(k));
      }
      for (bool changed = true; changed;) {
        changed = false;
        for (const auto& t : p.transitions) {
          if (!s.contains(t.source) || s.contains(t.target)) continue;
          const Action& a = t.action();
          bool fire = false;
          if (a.kind == ActionKind::Nop) {
            fire = true;
          } else if (a.kind == ActionKind::Write) {
            fire = has_prefix(F, i, {k, a.reg});
          } else if (a.kind == ActionKind::Read) {
            int r = k - a.offset;
            RegisterRef reg{r, a.reg};
            if (r < 0) {
              fire = a.symbol == kBlank;
            } else if (a.symbol == kBlank) {
              fire = !has_prefix(F, i, reg);
            } else if (has_prefix(F, i, reg)) {
              const StateSet& there = a.offset == 0
                                          ? s
                                          : S[static_cast<std::size_t>(r)][matches[static_cast<std::size_t>(a.offset)][i]];
              for (const auto& u : p.transitions) {
                const Action& b = u.action();
                if (b.kind == ActionKind::Write && b.reg == a.reg && b.symbol == a.symbol &&
                    there.contains(u.source) && there.contains(u.target))
                  fire = true;
              }
            }
          }
          if (fire) {
            s.insert(t.target);
            changed = true;
          }
        }
      }
      cur.push_back(std::move(s));
    }
    S.push_back(std::move(cur));
  }
  for (auto q : S.back().back().elements())
    if (targets.contains(q)) return {true, ""};
  return refuted("target not covered at round " + std::to_string(K));
}

}  // namespace rbr
