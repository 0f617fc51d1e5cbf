#pragma once

#include <limits>

namespace tailinv {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Numerical knobs shared by every module. Defaults are the documented ones;
// callers override individual fields.
struct Tolerances {
  double abs = 1e-9;
  double rel = 1e-8;

  // Supremum search: coarse scan followed by golden-section refinement.
  int scan_points = 128;
  double golden_rel_width = 1e-10;
  int golden_max_iter = 200;

  // Largest lambda probed when looking for the end of an unbounded domain.
  double search_cap = 1e12;

  // Quadrature.
  double quad_rel = 1e-12;
  double quad_tail_rel = 1e-16;
  double quad_window_cap = 1e12;
};

inline const Tolerances& default_tolerances() {
  static const Tolerances t{};
  return t;
}

}  // namespace tailinv
