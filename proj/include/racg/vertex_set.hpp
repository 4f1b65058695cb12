#pragma once

#include <boost/dynamic_bitset.hpp>

#include <cstddef>
#include <vector>

namespace racg {

// Set of vertex indices over a fixed carrier graph, stored as a packed
// bitset. All iteration helpers walk indices in ascending order so every
// consumer sees the same deterministic sequence.
using VertexSet = boost::dynamic_bitset<>;

inline std::vector<int> to_indices(const VertexSet& s) {
  std::vector<int> out;
  out.reserve(s.count());
  for (std::size_t v = s.find_first(); v != VertexSet::npos; v = s.find_next(v))
    out.push_back(static_cast<int>(v));
  return out;
}

inline VertexSet from_indices(std::size_t universe, const std::vector<int>& indices) {
  VertexSet s(universe);
  for (int v : indices) s.set(static_cast<std::size_t>(v));
  return s;
}

// Range adapter: `for (int v : bits(s))` visits set bits in ascending order.
class BitRange {
 public:
  class iterator {
   public:
    iterator(const VertexSet* s, std::size_t pos) : s_(s), pos_(pos) {}
    int operator*() const { return static_cast<int>(pos_); }
    iterator& operator++() {
      pos_ = s_->find_next(pos_);
      return *this;
    }
    bool operator!=(const iterator& other) const { return pos_ != other.pos_; }

   private:
    const VertexSet* s_;
    std::size_t pos_;
  };

  explicit BitRange(const VertexSet& s) : s_(&s) {}
  iterator begin() const { return {s_, s_->find_first()}; }
  iterator end() const { return {s_, VertexSet::npos}; }

 private:
  const VertexSet* s_;
};

inline BitRange bits(const VertexSet& s) { return BitRange(s); }

}  // namespace racg
