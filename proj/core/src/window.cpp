#include "rbr/window.hpp"

#include <algorithm>
#include <stdexcept>

namespace rbr {

std::size_t synchronise(const RegisterSeq& lower, const RegisterSeq& upper, std::size_t len, int r, int v) {
  auto common = [&](const RegisterRef& e) { return e.round >= r + 1 - v && e.round <= r; };
  RegisterSeq target;
  for (std::size_t i = 0; i < len; ++i)
    if (common(upper[i])) target.push_back(upper[i]);
  std::size_t count = 0;
  std::size_t best = target.empty() ? 0 : static_cast<std::size_t>(-1);
  for (std::size_t i = 0; i < lower.size(); ++i) {
    if (common(lower[i])) {
      if (count < target.size() && lower[i] == target[count])
        ++count;
      else
        break;
    }
    if (count == target.size()) best = i + 1;
  }
  if (best == static_cast<std::size_t>(-1))
    throw std::logic_error("synchronise: sequences disagree on their common rounds");
  return best;
}

namespace {

void permutations_of_subsets(int d, std::vector<int>& cur, std::vector<bool>& used,
                             std::vector<std::vector<int>>& out) {
  out.push_back(cur);
  for (int a = 0; a < d; ++a) {
    if (used[a]) continue;
    used[a] = true;
    cur.push_back(a);
    permutations_of_subsets(d, cur, used, out);
    cur.pop_back();
    used[a] = false;
  }
}

std::vector<std::vector<int>> ordered_selections(int d) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::vector<bool> used(static_cast<std::size_t>(d), false);
  permutations_of_subsets(d, cur, used, out);
  return out;
}

// All interleavings of `base` with `fresh` keeping both orders.
void interleave(const RegisterSeq& base, const RegisterSeq& fresh, std::size_t i, std::size_t j,
                RegisterSeq& cur, std::vector<RegisterSeq>& out) {
  if (i == base.size() && j == fresh.size()) {
    out.push_back(cur);
    return;
  }
  if (i < base.size()) {
    cur.push_back(base[i]);
    interleave(base, fresh, i + 1, j, cur, out);
    cur.pop_back();
  }
  if (j < fresh.size()) {
    cur.push_back(fresh[j]);
    interleave(base, fresh, i, j + 1, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<RegisterSeq> next_sequences(const RegisterSeq& Fk, int k, int v, int d) {
  RegisterSeq base;
  for (const auto& e : Fk)
    if (e.round > k - v) base.push_back(e);
  std::vector<RegisterSeq> out;
  for (const auto& sel : ordered_selections(d)) {
    RegisterSeq fresh;
    for (int a : sel) fresh.push_back({k + 1, a});
    RegisterSeq cur;
    interleave(base, fresh, 0, 0, cur, out);
  }
  return out;
}

std::vector<RegisterSeq> initial_sequences(int d) {
  std::vector<RegisterSeq> out;
  for (const auto& sel : ordered_selections(d)) {
    RegisterSeq F;
    for (int a : sel) F.push_back({0, a});
    out.push_back(std::move(F));
  }
  return out;
}

WindowModel::WindowModel(const Protocol& p) : p_(&p) {
  require_atomic(p, "verifier");
  writers_.resize(static_cast<std::size_t>(p.registers) * p.symbols.size());
  for (const auto& t : p.transitions) {
    const Action& a = t.action();
    edges_.push_back({t.source, t.target, a.kind, a.offset, a.reg, a.symbol});
    if (a.kind == ActionKind::Write)
      writers_[static_cast<std::size_t>(a.reg) * p.symbols.size() + a.symbol].emplace_back(t.source, t.target);
  }
}

bool WindowModel::writer_pair(const StateSet& s, int reg, SymbolId x) const {
  for (const auto& [q1, q2] : writers_[static_cast<std::size_t>(reg) * p_->symbols.size() + x])
    if (s.contains(q1) && s.contains(q2)) return true;
  return false;
}

std::optional<WindowState> WindowModel::step(const WindowState* prev, const RegisterSeq& F) const {
  const int v = p_->visibility;
  const int k = prev ? prev->round + 1 : 0;
  const std::size_t nq = p_->states.size();
  const std::size_t len = F.size();

  // match[j][i]: prefix of F_{k-1-j} synchronised with prefix i of F.
  std::size_t depth = prev ? prev->rounds.size() : 0;
  std::vector<std::vector<std::size_t>> match(depth, std::vector<std::size_t>(len + 1));
  for (std::size_t j = 0; j < depth; ++j) {
    const RegisterSeq& upper = j == 0 ? F : prev->rounds[j - 1].F;
    for (std::size_t i = 0; i <= len; ++i) {
      std::size_t up = j == 0 ? i : match[j - 1][i];
      match[j][i] = synchronise(prev->rounds[j].F, upper, up, k - 1 - static_cast<int>(j), v);
    }
  }

  WindowRound cur{F, {}};
  cur.S.reserve(len + 1);
  for (std::size_t i = 0; i <= len; ++i) {
    StateSet s = i == 0 ? StateSet(nq) : cur.S[i - 1];
    if (k == 0 && i == 0) s.insert(p_->init);
    if (prev) {
      const StateSet& below = prev->rounds[0].S[match[0][i]];
      for (const auto& e : edges_)
        if (e.kind == ActionKind::Incr && below.contains(e.source)) s.insert(e.target);
    }
    if (i > 0 && F[i - 1].round == k) {
      int a = F[i - 1].id;
      bool ok = false;
      for (const auto& e : edges_)
        if (e.kind == ActionKind::Write && e.reg == a && s.contains(e.source)) ok = true;
      if (!ok) return std::nullopt;
    }
    auto in_prefix = [&](int round, int reg) {
      for (std::size_t t = 0; t < i; ++t)
        if (F[t].round == round && F[t].id == reg) return true;
      return false;
    };
    for (bool changed = true; changed;) {
      changed = false;
      for (const auto& e : edges_) {
        if (!s.contains(e.source) || s.contains(e.target)) continue;
        bool fire = false;
        switch (e.kind) {
          case ActionKind::Incr:
            break;
          case ActionKind::Nop:
            fire = true;
            break;
          case ActionKind::Write:
            fire = in_prefix(k, e.reg);
            break;
          case ActionKind::Read: {
            int r = k - e.offset;
            if (r < 0) {
              fire = e.symbol == kBlank;
            } else if (e.symbol == kBlank) {
              fire = !in_prefix(r, e.reg);
            } else if (in_prefix(r, e.reg)) {
              const StateSet& there =
                  e.offset == 0 ? s : prev->rounds[static_cast<std::size_t>(e.offset - 1)].S[match[static_cast<std::size_t>(e.offset - 1)][i]];
              fire = writer_pair(there, e.reg, e.symbol);
            }
            break;
          }
        }
        if (fire) {
          s.insert(e.target);
          changed = true;
        }
      }
    }
    cur.S.push_back(std::move(s));
  }

  WindowState next;
  next.round = k;
  next.rounds.push_back(std::move(cur));
  std::size_t keep = static_cast<std::size_t>(std::max(v, 1));
  if (prev)
    for (std::size_t j = 0; j < prev->rounds.size() && next.rounds.size() < keep; ++j)
      next.rounds.push_back(prev->rounds[j]);
  return next;
}

std::vector<WindowState> WindowModel::initial_states() const {
  std::vector<WindowState> out;
  for (const auto& F : initial_sequences(p_->registers))
    if (auto w = step(nullptr, F)) out.push_back(std::move(*w));
  return out;
}

std::vector<WindowState> WindowModel::successors(const WindowState& w) const {
  std::vector<WindowState> out;
  for (const auto& F : next_sequences(w.current().F, w.round, p_->visibility, p_->registers))
    if (auto n = step(&w, F)) out.push_back(std::move(*n));
  return out;
}

WindowKey canonical_key(const WindowState& w, int v) {
  WindowKey key;
  key.push_back(static_cast<std::uint64_t>(std::min(w.round, v + 1)));
  key.push_back(w.rounds.size());
  for (const auto& r : w.rounds) {
    key.push_back(r.F.size());
    for (const auto& e : r.F)
      key.push_back((static_cast<std::uint64_t>(w.round - e.round) << 32) | static_cast<std::uint32_t>(e.id));
    for (const auto& s : r.S) key.insert(key.end(), s.words().begin(), s.words().end());
  }
  return key;
}

std::size_t WindowKeyHash::operator()(const WindowKey& k) const {
  std::uint64_t h = 0x9e3779b97f4a7c15ull ^ k.size();
  for (auto x : k) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    x ^= x >> 31;
    h = (h ^ x) * 0x100000001b3ull + (h << 6) + (h >> 2);
  }
  return static_cast<std::size_t>(h);
}

}  // namespace rbr
