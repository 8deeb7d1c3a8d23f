#pragma once

#include <cstdint>
#include <initializer_list>
#include <vector>

#include "nangle/sequence.hpp"

namespace testing_support {

using namespace nangle;

/// Element from its code a + q*b (valid for both ring families).
inline RingElement el(const RingPtr& ring, std::uint64_t v) {
  return {static_cast<KElement>(v % ring->q()), static_cast<KElement>(v / ring->q())};
}

inline RMatrix mat(const RingPtr& ring, std::size_t rows, std::size_t cols, std::initializer_list<std::uint64_t> vals) {
  RMatrix m(ring, rows, cols);
  std::size_t i = 0;
  for (auto v : vals) {
    m(i / cols, i % cols) = el(ring, v);
    ++i;
  }
  return m;
}

/// Rank-1 sequence with the given scalar maps.
inline NSequence scalars(const RingPtr& ring, std::initializer_list<std::uint64_t> maps) {
  std::vector<RMatrix> ms;
  for (auto v : maps) ms.push_back(mat(ring, 1, 1, {v}));
  std::vector<std::size_t> ranks(ms.size(), 1);
  return NSequence(ring, std::move(ranks), std::move(ms));
}

inline std::vector<RMatrix> scalar_components(const RingPtr& ring, std::initializer_list<std::uint64_t> vals) {
  std::vector<RMatrix> out;
  for (auto v : vals) out.push_back(mat(ring, 1, 1, {v}));
  return out;
}

}  // namespace testing_support
