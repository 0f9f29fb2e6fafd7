#pragma once

#include <vector>

#include "loopkit/catalog.hpp"
#include "loopkit/element_set.hpp"
#include "loopkit/loop_table.hpp"
#include "oracles.hpp"

namespace support {

// One representative per isomorphism class of each order in [lo, hi].
inline std::vector<loopkit::LoopTable> classes(std::size_t lo, std::size_t hi) {
  static std::vector<std::vector<loopkit::LoopTable>> by_order(7);
  std::vector<loopkit::LoopTable> view;
  for (std::size_t n = lo; n <= hi; ++n) {
    if (by_order[n].empty()) by_order[n] = loopkit::enumerate_loops(n, true);
    view.insert(view.end(), by_order[n].begin(), by_order[n].end());
  }
  return view;
}

inline loopkit::ElementSet to_set(std::size_t n, const oracle::Set& s) {
  loopkit::ElementSet out(n);
  for (auto e : s) out.insert(e);
  return out;
}

// fig1 and fig2 are normalized in symbol order, so symbol s is index s - 1.
inline loopkit::ElementSet sym(std::size_t n, std::initializer_list<int> symbols) {
  loopkit::ElementSet out(n);
  for (int s : symbols) out.insert(static_cast<loopkit::Element>(s - 1));
  return out;
}

}  // namespace support
