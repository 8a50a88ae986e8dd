#pragma once

// Central-difference cross-checks of analytic joint rates along traces.
// Deviations are relative to the largest analytic magnitude of the same
// derivative order over all joints, floored by the mean-rate scale of the
// order below (peak / duration) so that identically-zero channels stay defined.

#include <algorithm>
#include <cmath>
#include <vector>

#include "orthoglide/errors.hpp"
#include "orthoglide/kin_translation.hpp"
#include "orthoglide/kin_wrist.hpp"

namespace orthoglide {

struct RateDeviation {
  double rate = 0.0;   // first derivative vs differenced position
  double accel = 0.0;  // second derivative vs differenced rate
};

namespace detail {

template <typename Trace, typename Pos, typename Vel, typename Acc>
RateDeviation rate_deviation_impl(const Trace& trace, int joints, Pos pos, Vel vel, Acc acc) {
  if (trace.size() < 3) throw TooFewSamples(trace.size(), 3);
  const double h = trace[1].t - trace[0].t;
  const double duration = trace.back().t - trace.front().t;
  double pos_span = 0.0, vel_scale = 0.0, acc_scale = 0.0, vel_err = 0.0, acc_err = 0.0;
  for (const auto& s : trace) {
    for (int i = 0; i < joints; ++i) {
      pos_span = std::max(pos_span, std::abs(pos(s, i) - pos(trace.front(), i)));
      vel_scale = std::max(vel_scale, std::abs(vel(s, i)));
      acc_scale = std::max(acc_scale, std::abs(acc(s, i)));
    }
  }
  vel_scale = std::max(vel_scale, pos_span / duration);
  acc_scale = std::max(acc_scale, vel_scale / duration);
  for (std::size_t k = 1; k + 1 < trace.size(); ++k) {
    for (int i = 0; i < joints; ++i) {
      const double fd_vel = (pos(trace[k + 1], i) - pos(trace[k - 1], i)) / (2.0 * h);
      const double fd_acc = (vel(trace[k + 1], i) - vel(trace[k - 1], i)) / (2.0 * h);
      vel_err = std::max(vel_err, std::abs(vel(trace[k], i) - fd_vel));
      acc_err = std::max(acc_err, std::abs(acc(trace[k], i) - fd_acc));
    }
  }
  return {vel_err / (vel_scale > 0.0 ? vel_scale : 1.0), acc_err / (acc_scale > 0.0 ? acc_scale : 1.0)};
}

}  // namespace detail

inline RateDeviation rate_deviation(const PrismaticTrace& trace) {
  return detail::rate_deviation_impl(
      trace, 3, [](const PrismaticState& s, int i) { return s.rho[i]; },
      [](const PrismaticState& s, int i) { return s.rho_dot[i]; },
      [](const PrismaticState& s, int i) { return s.rho_ddot[i]; });
}

inline RateDeviation rate_deviation(const WristTrace& trace) {
  return detail::rate_deviation_impl(
      trace, 2, [](const WristState& s, int i) { return s.theta[i]; },
      [](const WristState& s, int i) { return s.theta_dot[i]; },
      [](const WristState& s, int i) { return s.theta_ddot[i]; });
}

}  // namespace orthoglide
