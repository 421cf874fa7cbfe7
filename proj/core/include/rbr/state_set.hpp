#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace rbr {

using StateId = std::uint32_t;

// Fixed-universe bitset over protocol states.
class StateSet {
 public:
  StateSet() = default;
  explicit StateSet(std::size_t universe);

  std::size_t universe() const { return universe_; }

  bool contains(StateId q) const {
    return q < universe_ && ((words_[q >> 6] >> (q & 63)) & 1u) != 0;
  }
  // Returns true if q was not present.
  bool insert(StateId q);
  void erase(StateId q);
  // Returns true if anything was added.
  bool insert_all(const StateSet& other);

  bool empty() const;
  std::size_t count() const;
  bool subset_of(const StateSet& other) const;
  std::vector<StateId> elements() const;

  const std::vector<std::uint64_t>& words() const { return words_; }

  friend bool operator==(const StateSet& a, const StateSet& b) {
    return a.universe_ == b.universe_ && a.words_ == b.words_;
  }

 private:
  std::size_t universe_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace rbr
