#include "rbr/state_set.hpp"

#include <bit>
#include <stdexcept>

namespace rbr {

StateSet::StateSet(std::size_t universe)
    : universe_(universe), words_((universe + 63) / 64, 0) {}

bool StateSet::insert(StateId q) {
  if (q >= universe_) throw std::out_of_range("StateSet::insert: state out of range");
  std::uint64_t bit = std::uint64_t{1} << (q & 63);
  std::uint64_t& w = words_[q >> 6];
  bool fresh = (w & bit) == 0;
  w |= bit;
  return fresh;
}

void StateSet::erase(StateId q) {
  if (q >= universe_) return;
  words_[q >> 6] &= ~(std::uint64_t{1} << (q & 63));
}

bool StateSet::insert_all(const StateSet& other) {
  if (other.universe_ != universe_) throw std::invalid_argument("StateSet: universe mismatch");
  bool changed = false;
  for (std::size_t i = 0; i < words_.size(); ++i) {
    std::uint64_t merged = words_[i] | other.words_[i];
    changed |= merged != words_[i];
    words_[i] = merged;
  }
  return changed;
}

bool StateSet::empty() const {
  for (auto w : words_)
    if (w) return false;
  return true;
}

std::size_t StateSet::count() const {
  std::size_t n = 0;
  for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

bool StateSet::subset_of(const StateSet& other) const {
  if (other.universe_ != universe_) return false;
  for (std::size_t i = 0; i < words_.size(); ++i)
    if (words_[i] & ~other.words_[i]) return false;
  return true;
}

std::vector<StateId> StateSet::elements() const {
  std::vector<StateId> out;
  for (std::size_t i = 0; i < words_.size(); ++i) {
    std::uint64_t w = words_[i];
    while (w) {
      int b = std::countr_zero(w);
      out.push_back(static_cast<StateId>(i * 64 + static_cast<std::size_t>(b)));
      w &= w - 1;
    }
  }
  return out;
}

}  // namespace rbr
