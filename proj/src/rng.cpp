#include "ssecut/rng.hpp"

#include <cmath>

namespace ssecut {

double Rng::next_gaussian() {
  if (have_cached_) {
    have_cached_ = false;
    return cached_;
  }
  // Box-Muller on (0,1] uniforms; u1 > 0 so the log is finite.
  double u1 = next_unit_open();
  double u2 = next_unit();
  double r = std::sqrt(-2.0 * std::log(u1));
  double a = 6.283185307179586476925286766559 * u2;
  cached_ = r * std::sin(a);
  have_cached_ = true;
  return r * std::cos(a);
}

}  // namespace ssecut
