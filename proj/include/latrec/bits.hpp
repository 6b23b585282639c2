#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

namespace latrec {

// Node sets are bit masks over dense 0-based node ids. Everything in this
// library is desk-scale, so 64 nodes is a hard ceiling.
using NodeSet = std::uint64_t;

inline constexpr int kMaxNodes = 64;

inline constexpr NodeSet bit(int i) { return NodeSet{1} << i; }

inline constexpr bool contains(NodeSet s, int i) { return (s >> i) & 1u; }

inline constexpr bool subset_of(NodeSet a, NodeSet b) { return (a & ~b) == 0; }

inline constexpr int set_size(NodeSet s) { return std::popcount(s); }

inline constexpr NodeSet full_set(int n) {
  return n >= 64 ? ~NodeSet{0} : (NodeSet{1} << n) - 1;
}

template <typename F>
inline void for_each_node(NodeSet s, F&& f) {
  while (s != 0) {
    const int i = std::countr_zero(s);
    f(i);
    s &= s - 1;
  }
}

inline std::vector<int> set_to_vector(NodeSet s) {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(set_size(s)));
  for_each_node(s, [&](int i) { out.push_back(i); });
  return out;
}

inline NodeSet set_from_vector(const std::vector<int>& v) {
  NodeSet s = 0;
  for (int i : v) s |= bit(i);
  return s;
}

// Member-list lexicographic order; used wherever output determinism matters.
inline bool set_less(NodeSet a, NodeSet b) {
  while (a != 0 && b != 0) {
    const int ia = std::countr_zero(a);
    const int ib = std::countr_zero(b);
    if (ia != ib) return ia < ib;
    a &= a - 1;
    b &= b - 1;
  }
  return a == 0 && b != 0;
}

inline std::string set_to_string(NodeSet s) {
  std::string out = "{";
  bool first = true;
  for_each_node(s, [&](int i) {
    if (!first) out += ",";
    out += std::to_string(i);
    first = false;
  });
  out += "}";
  return out;
}

}  // namespace latrec
