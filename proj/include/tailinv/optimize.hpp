#pragma once

#include <functional>
#include <vector>

#include "tailinv/config.hpp"

namespace tailinv {

struct Maximum {
  double arg = 0;
  double value = -kInf;
};

// Golden-section search for the maximum of a unimodal function on [a, b],
// stopping when the bracket is narrower than rel_width * max(1, |midpoint|).
Maximum golden_section_maximize(const std::function<double(double)>& g, double a, double b, double rel_width,
                                int max_iter = 200);

// Points on [lo, hi] with spacing growing geometrically away from lo; both
// endpoints included. Works for lo = 0.
std::vector<double> offset_log_spaced(double lo, double hi, int n, double dynamic_range = 1e6);

std::vector<double> linspace(double lo, double hi, int n);
std::vector<double> geomspace(double lo, double hi, int n);

// Coarse scan over the given abscissae, then golden-section refinement around
// the best point (and, when `local_maxima` > 1, around that many of the best
// local maxima of the scan).
Maximum scan_and_refine(const std::function<double(double)>& g, const std::vector<double>& abscissae, double rel_width,
                        int local_maxima = 1, int max_iter = 200);

}  // namespace tailinv
