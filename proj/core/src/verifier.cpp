#include "rbr/verifier.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <string>
#include <thread>
#include <unordered_map>

namespace rbr {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Safe:
      return "SAFE";
    case Verdict::Unsafe:
      return "UNSAFE";
    case Verdict::Inconclusive:
      return "INCONCLUSIVE";
  }
  return "?";
}

std::size_t default_node_budget() {
  if (const char* env = std::getenv("RBR_NODE_BUDGET")) {
    try {
      auto n = std::stoull(env);
      if (n > 0) return static_cast<std::size_t>(n);
    } catch (const std::exception&) {
    }
  }
  return 20'000'000;
}

namespace {

struct Node {
  std::size_t parent;
  RegisterSeq F;
};

bool hits(const WindowState& w, const StateSet& targets) {
  for (auto q : w.full().elements())
    if (targets.contains(q)) return true;
  return false;
}

std::vector<std::vector<WindowState>> expand(const WindowModel& model, const std::vector<WindowState>& level,
                                             unsigned jobs) {
  std::vector<std::vector<WindowState>> out(level.size());
  if (jobs <= 1 || level.size() < 2 * jobs) {
    for (std::size_t i = 0; i < level.size(); ++i) out[i] = model.successors(level[i]);
    return out;
  }
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < jobs; ++t)
    pool.emplace_back([&, t] {
      for (std::size_t i = t; i < level.size(); i += jobs) out[i] = model.successors(level[i]);
    });
  for (auto& th : pool) th.join();
  return out;
}

}  // namespace

VerifyResult verify(const Protocol& p, const StateSet& targets, const VerifyOptions& opt) {
  auto start = std::chrono::steady_clock::now();
  WindowModel model(p);
  const int v = p.visibility;
  const std::size_t budget = opt.node_budget ? opt.node_budget : default_node_budget();
  VerifyResult res;

  std::vector<Node> nodes;
  std::unordered_map<WindowKey, std::size_t, WindowKeyHash> seen;
  std::vector<WindowState> level;
  std::vector<std::size_t> level_ids;

  auto finish = [&](Verdict verdict) {
    res.verdict = verdict;
    res.nodes = nodes.size();
    res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return res;
  };
  auto admit = [&](WindowState&& w, std::size_t parent, std::vector<WindowState>& into,
                   std::vector<std::size_t>& ids) {
    auto [it, fresh] = seen.emplace(canonical_key(w, v), nodes.size());
    if (!fresh) return;
    if (nodes.size() >= budget)
      throw ResourceLimit("verifier: node budget of " + std::to_string(budget) + " exceeded");
    nodes.push_back({parent, w.current().F});
    ids.push_back(it->second);
    into.push_back(std::move(w));
  };

  for (auto& w : model.initial_states()) admit(std::move(w), static_cast<std::size_t>(-1), level, level_ids);

  for (int k = 0; !level.empty(); ++k) {
    res.depth = k;
    for (std::size_t i = 0; i < level.size(); ++i) {
      if (!hits(level[i], targets)) continue;
      WitnessFamily wf;
      wf.round = k;
      for (std::size_t n = level_ids[i]; n != static_cast<std::size_t>(-1); n = nodes[n].parent)
        wf.F.push_back(nodes[n].F);
      std::reverse(wf.F.begin(), wf.F.end());
      res.round = k;
      res.witness = std::move(wf);
      return finish(Verdict::Unsafe);
    }
    auto succ = expand(model, level, opt.jobs);
    std::vector<WindowState> next;
    std::vector<std::size_t> next_ids;
    bool bounded = opt.max_rounds && k >= *opt.max_rounds;
    for (std::size_t i = 0; i < succ.size(); ++i) {
      for (auto& w : succ[i]) {
        if (bounded) {
          if (!seen.count(canonical_key(w, v))) return finish(Verdict::Inconclusive);
          continue;
        }
        admit(std::move(w), level_ids[i], next, next_ids);
      }
    }
    level = std::move(next);
    level_ids = std::move(next_ids);
  }
  return finish(Verdict::Safe);
}

VerifyResult verify(const Protocol& p, StateId target, const VerifyOptions& opt) {
  StateSet t(p.states.size());
  t.insert(target);
  return verify(p, t, opt);
}

}  // namespace rbr
