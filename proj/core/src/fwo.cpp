#include "rbr/fwo.hpp"

#include <algorithm>
#include <charconv>
#include <set>
#include <sstream>

namespace rbr {

namespace {

// Indices of first writes in x, in order.
std::vector<std::size_t> first_write_indices(const Protocol& p, const AbstractExecution& x) {
  std::vector<std::size_t> out;
  std::set<RegisterRef> seen;
  for (std::size_t i = 0; i < x.schedule.size(); ++i) {
    const Move& m = x.schedule[i];
    const Action& a = p.transitions.at(m.transition).action();
    if (a.kind == ActionKind::Write && seen.insert({m.round, a.reg}).second) out.push_back(i);
  }
  return out;
}

RegisterRef written_register(const Protocol& p, const Move& m) {
  return {m.round, p.transitions.at(m.transition).action().reg};
}

}  // namespace

Fwo fwo_of(const Protocol& p, const AbstractExecution& x) {
  require_atomic(p, "fwo_of");
  Fwo w;
  for (auto i : first_write_indices(p, x)) w.push_back(written_register(p, x.schedule[i]));
  return w;
}

Fwo window_projection(const Fwo& w, int k, int v) {
  Fwo out;
  int lo = std::max(0, k - v);
  for (const auto& r : w)
    if (r.round >= lo && r.round <= k) out.push_back(r);
  return out;
}

bool swappable(const Fwo& w, std::size_t i, int v) {
  return i + 1 < w.size() && w[i].round > w[i + 1].round + v;
}

Fwo swap_at(const Fwo& w, std::size_t i, int v) {
  if (!swappable(w, i, v)) throw std::invalid_argument("swap_at: position " + std::to_string(i) + " not swappable");
  Fwo out = w;
  std::swap(out[i], out[i + 1]);
  return out;
}

bool swap_proof(const Fwo& w, int v) {
  for (std::size_t i = 0; i + 1 < w.size(); ++i)
    if (swappable(w, i, v)) return false;
  return true;
}

Fwo swap_normalize(Fwo w, int v) {
  for (std::size_t i = 0; i + 1 < w.size();) {
    if (swappable(w, i, v)) {
      std::swap(w[i], w[i + 1]);
      i = i == 0 ? 0 : i - 1;
    } else {
      ++i;
    }
  }
  return w;
}

AbstractExecution swap_execution(const Protocol& p, const AbstractExecution& x, std::size_t i) {
  require_atomic(p, "swap_execution");
  auto firsts = first_write_indices(p, x);
  Fwo w;
  for (auto j : firsts) w.push_back(written_register(p, x.schedule[j]));
  if (!swappable(w, i, p.visibility))
    throw std::invalid_argument("swap_execution: position " + std::to_string(i) + " not swappable");
  const auto& s = x.schedule;
  std::size_t a = firsts[i], b = firsts[i + 1];
  int k = s[a].round;
  AbstractExecution out;
  out.schedule.assign(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(a));
  std::vector<Move> late;
  for (std::size_t j = a + 1; j < b; ++j) {
    if (s[j].round < k)
      out.schedule.push_back(s[j]);
    else
      late.push_back(s[j]);
  }
  out.schedule.push_back(s[b]);
  out.schedule.push_back(s[a]);
  out.schedule.insert(out.schedule.end(), late.begin(), late.end());
  out.schedule.insert(out.schedule.end(), s.begin() + static_cast<std::ptrdiff_t>(b) + 1, s.end());
  return out;
}

AbstractExecution swap_normalize_execution(const Protocol& p, const AbstractExecution& x) {
  AbstractExecution cur = x;
  while (true) {
    Fwo w = fwo_of(p, cur);
    std::size_t i = 0;
    while (i + 1 < w.size() && !swappable(w, i, p.visibility)) ++i;
    if (i + 1 >= w.size()) return cur;
    cur = swap_execution(p, cur, i);
  }
}

AbstractExecution combine_same_fwo(const Protocol& p, const AbstractExecution& a, const AbstractExecution& b) {
  require_atomic(p, "combine_same_fwo");
  auto fa = first_write_indices(p, a), fb = first_write_indices(p, b);
  if (fwo_of(p, a) != fwo_of(p, b)) throw std::invalid_argument("combine_same_fwo: first-write orders differ");
  // Segment j of an execution runs from its j-th first write (or the start)
  // up to the next one.
  auto segment = [](const AbstractExecution& x, const std::vector<std::size_t>& f, std::size_t j) {
    std::size_t lo = j == 0 ? 0 : f[j - 1];
    std::size_t hi = j < f.size() ? f[j] : x.schedule.size();
    return std::vector<Move>(x.schedule.begin() + static_cast<std::ptrdiff_t>(lo),
                             x.schedule.begin() + static_cast<std::ptrdiff_t>(hi));
  };
  AbstractExecution out;
  for (std::size_t j = 0; j <= fa.size(); ++j) {
    auto sa = segment(a, fa, j), sb = segment(b, fb, j);
    out.schedule.insert(out.schedule.end(), sa.begin(), sa.end());
    out.schedule.insert(out.schedule.end(), sb.begin(), sb.end());
  }
  return out;
}

AbstractExecution combine_same_projections(const Protocol& p, const AbstractExecution& a,
                                           const AbstractExecution& b) {
  require_atomic(p, "combine_same_projections");
  Fwo wa = fwo_of(p, a), wb = fwo_of(p, b);
  int hi = 0;
  for (const auto& r : wa) hi = std::max(hi, r.round);
  for (const auto& r : wb) hi = std::max(hi, r.round);
  for (int k = 0; k <= hi + p.visibility; ++k)
    if (window_projection(wa, k, p.visibility) != window_projection(wb, k, p.visibility))
      throw ProjectionMismatch(k);
  return combine_same_fwo(p, swap_normalize_execution(p, a), swap_normalize_execution(p, b));
}

std::string fwo_to_string(const Fwo& w) {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += " ";
    out += register_to_string(w[i]);
  }
  return out;
}

Fwo parse_fwo(std::string_view text) {
  Fwo w;
  std::istringstream in{std::string(text)};
  std::string tok;
  while (in >> tok) {
    auto dot = tok.find('.');
    if (tok.size() < 4 || tok[0] != 'r' || dot == std::string::npos)
      throw std::invalid_argument("bad register token '" + tok + "'");
    RegisterRef r;
    auto p1 = std::from_chars(tok.data() + 1, tok.data() + dot, r.round);
    auto p2 = std::from_chars(tok.data() + dot + 1, tok.data() + tok.size(), r.id);
    if (p1.ec != std::errc() || p1.ptr != tok.data() + dot || p2.ec != std::errc() ||
        p2.ptr != tok.data() + tok.size() || r.round < 0 || r.id < 0)
      throw std::invalid_argument("bad register token '" + tok + "'");
    w.push_back(r);
  }
  return w;
}

}  // namespace rbr
