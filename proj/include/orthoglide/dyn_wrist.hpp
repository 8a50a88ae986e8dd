#pragma once

// Inverse dynamics of the lumped wrist in generalized coordinates q = (theta1, theta2).
//
// Bodies: proximal-1 (scalar inertia about axis1), proximal-2 (scalar inertia
// about its base-fixed axis) and the terminal rigid body (distal included),
// rotating about the fixed wrist center with
//
//   omega_world = theta1_dot axis1 + theta2_dot Rot(axis1, theta1) axis2_home
//   omega_body  = Jb(theta2) q_dot,  Jb = [Rot(axis2, theta2)^T axis1, axis2]
//
//   KE = 1/2 q_dot^T M(theta2) q_dot,  M = diag(I_p1, I_p2) + Jb^T I_t Jb
//   PE = -m_t g . (R(q) c)
//
//   T = M q_ddot + C(q, q_dot) q_dot + G(q)
//
// with C from the Christoffel symbols of M, so T . q_dot = d/dt (KE + PE) exactly.

#include <Eigen/Geometry>

#include <cmath>
#include <vector>

#include "orthoglide/errors.hpp"
#include "orthoglide/flags.hpp"
#include "orthoglide/kin_wrist.hpp"
#include "orthoglide/model.hpp"

namespace orthoglide {

struct WristEffort {
  double t = 0.0;
  Vec2 torque = Vec2::Zero();  // N*m
  Vec2 power = Vec2::Zero();   // W, |T_i theta_dot_i|
  SampleFlags flags;
};

using WristEffortTrace = std::vector<WristEffort>;

namespace detail {

inline Eigen::Matrix<double, 3, 2> wrist_body_jacobian(double theta2, const MachineModel& model) {
  const Vec3& a1 = model.wrist.axis1;
  const Vec3& a2 = model.wrist.axis2_home;
  Eigen::Matrix<double, 3, 2> Jb;
  Jb.col(0) = Eigen::AngleAxisd(-theta2, a2) * a1;
  Jb.col(1) = a2;
  return Jb;
}

inline Eigen::Matrix<double, 3, 2> wrist_body_jacobian_d2(double theta2, const MachineModel& model) {
  const Vec3& a1 = model.wrist.axis1;
  const Vec3& a2 = model.wrist.axis2_home;
  Eigen::Matrix<double, 3, 2> dJ;
  dJ.col(0) = -a2.cross(Eigen::AngleAxisd(-theta2, a2) * a1);
  dJ.col(1).setZero();
  return dJ;
}

}  // namespace detail

inline Mat2 wrist_mass_matrix(const Vec2& q, const MachineModel& model) {
  const auto& wi = model.wrist_inertia;
  const auto Jb = detail::wrist_body_jacobian(q[1], model);
  Mat2 M = Jb.transpose() * wi.terminal_inertia * Jb;
  M(0, 0) += wi.proximal1_inertia;
  M(1, 1) += wi.proximal2_inertia;
  return M;
}

/// dM/dtheta2 (M does not depend on theta1).
inline Mat2 wrist_mass_matrix_d2(const Vec2& q, const MachineModel& model) {
  const Mat3& I = model.wrist_inertia.terminal_inertia;
  const auto Jb = detail::wrist_body_jacobian(q[1], model);
  const auto dJ = detail::wrist_body_jacobian_d2(q[1], model);
  const Mat2 half = dJ.transpose() * I * Jb;
  return half + half.transpose();
}

/// Coriolis/centrifugal matrix built from Christoffel symbols.
inline Mat2 wrist_coriolis(const Vec2& q, const Vec2& q_dot, const MachineModel& model) {
  const Mat2 dM[2] = {Mat2::Zero(), wrist_mass_matrix_d2(q, model)};
  Mat2 C = Mat2::Zero();
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      for (int k = 0; k < 2; ++k) {
        C(i, j) += 0.5 * (dM[k](i, j) + dM[j](i, k) - dM[i](j, k)) * q_dot[k];
      }
    }
  }
  return C;
}

/// G = dPE/dq for the terminal mass at its rotated center of mass.
inline Vec2 wrist_gravity(const Vec2& q, const MachineModel& model) {
  const auto& wi = model.wrist_inertia;
  const Vec3& g = model.gravity.g;
  const Vec3& a1 = model.wrist.axis1;
  const Vec3& a2 = model.wrist.axis2_home;
  const Eigen::AngleAxisd R1(q[0], a1), R2(q[1], a2);
  const Vec3 c2 = R2 * wi.terminal_com;
  const Vec3 c = R1 * c2;
  return Vec2(-wi.terminal_mass * g.dot(a1.cross(c)), -wi.terminal_mass * g.dot(R1 * a2.cross(c2)));
}

inline Energy wrist_energy(const Vec2& q, const Vec2& q_dot, const MachineModel& model) {
  const auto& wi = model.wrist_inertia;
  Energy e;
  e.kinetic = 0.5 * q_dot.dot(wrist_mass_matrix(q, model) * q_dot);
  e.potential = -wi.terminal_mass * model.gravity.g.dot(wrist_rotation(q, model) * wi.terminal_com);
  return e;
}

inline Vec2 wrist_torque(const WristState& s, const MachineModel& model) {
  return wrist_mass_matrix(s.theta, model) * s.theta_ddot +
         wrist_coriolis(s.theta, s.theta_dot, model) * s.theta_dot + wrist_gravity(s.theta, model);
}

inline WristEffortTrace effort_wrist(const WristTrace& trace, const MachineModel& model) {
  WristEffortTrace out;
  out.reserve(trace.size());
  for (const auto& s : trace) {
    WristEffort e;
    e.t = s.t;
    e.flags = s.flags;
    e.torque = wrist_torque(s, model);
    e.power = (e.torque.array() * s.theta_dot.array()).abs().matrix();
    out.push_back(e);
  }
  return out;
}

}  // namespace orthoglide
