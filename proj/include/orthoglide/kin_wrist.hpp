#pragma once

// Lumped two-rotation model of the spherical wrist. The terminal orientation is
//
//   R(theta1, theta2) = Rot(axis1, theta1) * Rot(axis2_home, theta2)
//
// and the tool axis is v = R * tool_home. With the default axes (x, y, -z):
//
//   v = (-sin t2, sin t1 cos t2, -cos t1 cos t2)
//   t2 = -asin(v_x),  t1 = atan2(v_y, -v_z)
//
// For other orthogonal mountings the same closed form is applied in the
// (axis1, axis2_home, tool_home) frame with the handedness signs below.

#include <Eigen/Geometry>

#include <cmath>
#include <vector>

#include "orthoglide/errors.hpp"
#include "orthoglide/flags.hpp"
#include "orthoglide/model.hpp"
#include "orthoglide/trajectory.hpp"

namespace orthoglide {

using Vec2 = Eigen::Vector2d;
using Mat2 = Eigen::Matrix2d;

/// Pointwise gimbal threshold on |v . axis1|.
inline constexpr double kGimbalPointwise = 1e-9;
/// Wider guard band used along traces so rates stay finite.
inline constexpr double kGimbalTrace = 1e-6;

struct WristState {
  double t = 0.0;
  Vec2 theta = Vec2::Zero();
  Vec2 theta_dot = Vec2::Zero();
  Vec2 theta_ddot = Vec2::Zero();
  SampleFlags flags;
};

using WristTrace = std::vector<WristState>;

inline Mat3 wrist_rotation(const Vec2& theta, const MachineModel& model) {
  const auto& w = model.wrist;
  return (Eigen::AngleAxisd(theta[0], w.axis1.vec()) * Eigen::AngleAxisd(theta[1], w.axis2_home.vec()))
      .toRotationMatrix();
}

/// Tool axis for the given joint angles (rotation-matrix route).
inline Vec3 tool_axis(const Vec2& theta, const MachineModel& model) {
  return wrist_rotation(theta, model) * model.wrist.tool_home.vec();
}

namespace detail {

/// Local coordinates of a tool-space vector and the handedness signs.
struct WristFrame {
  Vec3 a1, a2, t;
  double sigma;  // (a2 x t) . a1
  double tau;    // (a1 x t) . a2

  explicit WristFrame(const MachineModel& model)
      : a1(model.wrist.axis1.vec()), a2(model.wrist.axis2_home.vec()), t(model.wrist.tool_home.vec()) {
    sigma = a2.cross(t).dot(a1) < 0.0 ? -1.0 : 1.0;
    tau = a1.cross(t).dot(a2) < 0.0 ? -1.0 : 1.0;
  }

  // sin(theta2), and the (sin, cos) pair whose atan2 is theta1.
  double x(const Vec3& v) const { return sigma * v.dot(a1); }
  double a(const Vec3& v) const { return tau * v.dot(a2); }
  double b(const Vec3& v) const { return v.dot(t); }
};

}  // namespace detail

/// Joint angles (theta1, theta2) with |theta2| <= pi/2 for unit tool axis v.
/// Throws GimbalSingularity when |v . axis1| >= 1 - 1e-9.
inline Vec2 ik_wrist(const Vec3& v, const MachineModel& model) {
  if (std::abs(v.norm() - 1.0) > 1e-9) throw ModelError("ik_wrist: tool axis must be a unit vector");
  const detail::WristFrame f(model);
  const double x = f.x(v);
  if (std::abs(x) >= 1.0 - kGimbalPointwise) throw GimbalSingularity();
  return Vec2(std::atan2(f.a(v), f.b(v)), std::asin(x));
}

enum class GimbalPolicy {
  Throw,     // GimbalSingularity(sample index)
  HoldLast,  // keep previous angles, zero rates, flag the sample
};

/// Joint angles, rates and accelerations along a trajectory via the chain rule
/// through the closed-form inverse. theta1 is unwrapped to stay continuous.
inline WristTrace wrist_rates(const Trajectory& samples, const MachineModel& model,
                              GimbalPolicy policy = GimbalPolicy::Throw) {
  const detail::WristFrame f(model);
  const auto& range1 = model.wrist.joint1_range;
  const auto& range2 = model.wrist.joint2_range;

  WristTrace out;
  out.reserve(samples.size());
  for (std::size_t n = 0; n < samples.size(); ++n) {
    const auto& s = samples[n];
    WristState w;
    w.t = s.t;

    const double x = f.x(s.v);
    if (std::abs(x) > 1.0 - kGimbalTrace) {
      if (policy == GimbalPolicy::Throw) throw GimbalSingularity(static_cast<long>(n));
      if (!out.empty()) w.theta = out.back().theta;
      w.flags.set(Flag::Gimbal);
      out.push_back(w);
      continue;
    }
    const double xd = f.x(s.v_dot), xdd = f.x(s.v_ddot);
    const double a = f.a(s.v), ad = f.a(s.v_dot), add = f.a(s.v_ddot);
    const double b = f.b(s.v), bd = f.b(s.v_dot), bdd = f.b(s.v_ddot);

    // theta2 = asin(x)
    const double c2 = 1.0 - x * x;
    const double rc = std::sqrt(c2);
    w.theta[1] = std::asin(x);
    w.theta_dot[1] = xd / rc;
    w.theta_ddot[1] = xdd / rc + x * xd * xd / (c2 * rc);

    // theta1 = atan2(a, b)
    const double r2 = a * a + b * b;
    const double num = b * ad - a * bd;
    w.theta[0] = std::atan2(a, b);
    w.theta_dot[0] = num / r2;
    w.theta_ddot[0] = (b * add - a * bdd) / r2 - 2.0 * num * (a * ad + b * bd) / (r2 * r2);

    if (!out.empty()) {
      const double prev = out.back().theta[0];
      w.theta[0] += 2.0 * kPi * std::round((prev - w.theta[0]) / (2.0 * kPi));
    }
    if (w.theta[0] < range1[0] || w.theta[0] > range1[1]) w.flags.set(Flag::WristRange1);
    if (w.theta[1] < range2[0] || w.theta[1] > range2[1]) w.flags.set(Flag::WristRange2);
    out.push_back(w);
  }
  return out;
}

}  // namespace orthoglide
