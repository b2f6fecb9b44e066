#pragma once

#include <cmath>
#include <queue>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "tue/error.hpp"

namespace tue {

struct QuadOptions {
  double abs_tol = 1e-10;
  int max_panels = 1 << 16;
};

struct QuadResult {
  double value = 0.0;
  double err_estimate = 0.0;
  int panels = 0;
};

namespace detail {

struct Panel {
  double a;
  double b;
  double value;
  double err;
  bool operator<(const Panel& other) const { return err < other.err; }
};

template <class F>
Panel gk21_panel(const F& f, double a, double b) {
  double err = 0.0;
  const double value =
      boost::math::quadrature::gauss_kronrod<double, 21>::integrate(f, a, b, 0, 0.0, &err);
  return {a, b, value, err};
}

}  // namespace detail

/// Globally adaptive bisection with a 21-point Gauss–Kronrod rule per panel.
/// The panel with the largest error estimate is split until the summed
/// estimate falls below opts.abs_tol. Throws NumericalError when the panel
/// budget runs out first.
template <class F>
QuadResult integrate(const F& f, double a, double b, const QuadOptions& opts = {}) {
  std::priority_queue<detail::Panel> panels;
  panels.push(detail::gk21_panel(f, a, b));
  double total_err = panels.top().err;
  int count = 1;
  while (total_err > opts.abs_tol) {
    if (count >= opts.max_panels) {
      throw NumericalError("integrate: no convergence on [" + std::to_string(a) + ", " +
                           std::to_string(b) + "] after " + std::to_string(count) +
                           " panels, error estimate " + std::to_string(total_err));
    }
    const detail::Panel worst = panels.top();
    panels.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    const detail::Panel left = detail::gk21_panel(f, worst.a, mid);
    const detail::Panel right = detail::gk21_panel(f, mid, worst.b);
    total_err += left.err + right.err - worst.err;
    panels.push(left);
    panels.push(right);
    ++count;
  }

  // re-sum from scratch to drop the running-update drift
  QuadResult out;
  out.panels = count;
  double comp = 0.0;
  while (!panels.empty()) {
    const detail::Panel& p = panels.top();
    const double y = p.value - comp;
    const double t = out.value + y;
    comp = (t - out.value) - y;
    out.value = t;
    out.err_estimate += p.err;
    panels.pop();
  }
  return out;
}

}  // namespace tue
