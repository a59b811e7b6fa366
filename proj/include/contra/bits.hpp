#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <boost/dynamic_bitset.hpp>

namespace contra {

/// Dense index set over objects or attributes of one context.
using Bits = boost::dynamic_bitset<std::uint64_t>;
using IndexList = std::vector<std::size_t>;

template <class Fn>
inline void for_each_bit(const Bits& b, Fn&& fn) {
  for (auto i = b.find_first(); i != Bits::npos; i = b.find_next(i)) fn(i);
}

inline IndexList to_indices(const Bits& b) {
  IndexList out;
  out.reserve(b.count());
  for_each_bit(b, [&](std::size_t i) { out.push_back(i); });
  return out;
}

inline Bits from_indices(std::size_t size, std::span<const std::size_t> idx) {
  Bits b(size);
  for (auto i : idx) b.set(i);
  return b;
}

inline Bits full_bits(std::size_t size) {
  Bits b(size);
  b.set();
  return b;
}

}  // namespace contra
