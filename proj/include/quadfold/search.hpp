#pragma once

#include <cmath>

namespace quadfold {

// Largest |h| <= |limit| (same sign as limit) such that ok(x) holds on the
// whole segment [0, h], assuming the set where ok holds is an interval
// containing 0.
template <typename F>
double reach(F&& ok, double limit) {
  if (ok(limit)) return limit;
  double good = 0, bad = limit;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (good + bad);
    if (mid == good || mid == bad) break;
    if (ok(mid)) good = mid;
    else bad = mid;
  }
  return good;
}

}  // namespace quadfold
