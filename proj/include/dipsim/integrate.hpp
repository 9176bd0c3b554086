#pragma once
#include <Eigen/Dense>
#include <cmath>
#include <functional>

#include "dipsim/errors.hpp"

namespace dipsim {

struct StepControl {
  double rtol = 1e-9;
  double atol = 1e-12;
  double max_dt = 0.05;
  double min_dt = 1e-12;
  long max_steps = 100000000;
};

struct IntegrationStats {
  long steps = 0;
  long rejected = 0;
};

/// Dormand-Prince 5(4) with PI-free step control. `deriv(t, y, dy)` fills dy.
/// `on_accept(t, y)` runs after every accepted step (leak monitors etc.).
template <typename Deriv, typename Monitor>
IntegrationStats integrate_rk45(Deriv&& deriv, Eigen::VectorXcd& y, double t0,
                                double t1, const StepControl& ctrl,
                                Monitor&& on_accept) {
  static const double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  static const double a21 = 1.0 / 5;
  static const double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static const double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static const double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                      a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  static const double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                      a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                      a65 = -5103.0 / 18656;
  static const double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                      b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  static const double e1 = 35.0 / 384 - 5179.0 / 57600,
                      e3 = 500.0 / 1113 - 7571.0 / 16695,
                      e4 = 125.0 / 192 - 393.0 / 640,
                      e5 = -2187.0 / 6784 + 92097.0 / 339200,
                      e6 = 11.0 / 84 - 187.0 / 2100, e7 = -1.0 / 40;

  const auto dim = y.size();
  Eigen::VectorXcd k1(dim), k2(dim), k3(dim), k4(dim), k5(dim), k6(dim),
      k7(dim), ytmp(dim), ynew(dim);

  IntegrationStats stats;
  double t = t0;
  const double t_edge = 1e-12 * std::max(1.0, std::abs(t1));
  double dt = std::min(ctrl.max_dt, t1 - t0);
  deriv(t, y, k1);
  while (t1 - t > t_edge) {
    // Underflow means the controller demanded a smaller step than min_dt,
    // not that only a sliver of the interval remains.
    if (dt < ctrl.min_dt && dt < t1 - t)
      throw StepFailure("integrate_rk45: step size underflow at t = " +
                        std::to_string(t));
    dt = std::min(dt, t1 - t);
    if (stats.steps + stats.rejected > ctrl.max_steps)
      throw StepFailure("integrate_rk45: max step count exceeded");

    ytmp = y + dt * (a21 * k1);
    deriv(t + c2 * dt, ytmp, k2);
    ytmp = y + dt * (a31 * k1 + a32 * k2);
    deriv(t + c3 * dt, ytmp, k3);
    ytmp = y + dt * (a41 * k1 + a42 * k2 + a43 * k3);
    deriv(t + c4 * dt, ytmp, k4);
    ytmp = y + dt * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
    deriv(t + c5 * dt, ytmp, k5);
    ytmp = y + dt * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
    deriv(t + dt, ytmp, k6);
    ynew = y + dt * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    deriv(t + dt, ynew, k7);  // FSAL

    const Eigen::VectorXcd err_vec =
        dt * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
    const double scale = ctrl.atol + ctrl.rtol * std::max(y.norm(), ynew.norm());
    const double err = err_vec.norm() / scale;

    if (err <= 1.0) {
      t += dt;
      y.swap(ynew);
      k1.swap(k7);
      ++stats.steps;
      on_accept(t, y);
    } else {
      ++stats.rejected;
    }
    const double grow = 0.9 * std::pow(std::max(err, 1e-10), -0.2);
    dt *= std::clamp(grow, 0.2, 5.0);
    dt = std::min(dt, ctrl.max_dt);
  }
  return stats;
}

}  // namespace dipsim
