#pragma once

// Virtual-work audit. Over each sampling interval the work of the mean
// (two-point trapezoidal) actuator efforts across the joint displacement,
//
//   W = sum_i 1/2 (e_i[k] + e_i[k+1]) (q_i[k+1] - q_i[k]),
//
// is compared with the model's energy change dE = dKE + dPE. The residual
// dW = dE - W vanishes up to the quadrature error of the mean-effort rule,
// which is O(dt^3) per interval and O(dt^2) accumulated over a trace.

#include <algorithm>
#include <cmath>
#include <vector>

#include "orthoglide/dyn_translation.hpp"
#include "orthoglide/dyn_wrist.hpp"
#include "orthoglide/errors.hpp"
#include "orthoglide/kin_translation.hpp"
#include "orthoglide/kin_wrist.hpp"
#include "orthoglide/model.hpp"

namespace orthoglide {

enum class Subsystem { Translation, Wrist };

inline const char* subsystem_name(Subsystem s) {
  return s == Subsystem::Translation ? "translation" : "wrist";
}

struct AuditStep {
  double t = 0.0;  // end of the interval
  double work = 0.0;
  double d_kinetic = 0.0;
  double d_potential = 0.0;
  double residual = 0.0;  // dE - W
};

struct AuditResult {
  Subsystem subsystem = Subsystem::Wrist;
  std::vector<AuditStep> steps;
  double max_abs_residual = 0.0;
  double total_abs_residual = 0.0;  // sum of |dW| over the trace
  double energy_scale = 0.0;        // max |dKE| + |dPE| over steps
  double relative_tolerance = 1e-6;
  double quadrature_allowance = 0.0;
  double step = 0.0;
  bool passed = true;

  double threshold() const { return relative_tolerance * energy_scale + quadrature_allowance; }
};

inline constexpr double kAuditRelativeTolerance = 1e-6;

namespace detail {

/// Energy, joint position and effort at one sample, flattened to n joints.
template <int N>
struct AuditPoint {
  double t;
  Energy energy;
  Eigen::Matrix<double, N, 1> q, q_dot, q_ddot, effort;
};

template <int N>
AuditResult run_audit(Subsystem which, const std::vector<AuditPoint<N>>& pts, double length_scale) {
  if (pts.size() < 2) throw TooFewSamples(pts.size(), 2);
  const double h = pts[1].t - pts[0].t;
  if (!(h > 0.0)) throw MisalignedTraces("audit requires increasing timestamps");
  for (std::size_t k = 1; k < pts.size(); ++k) {
    const double dt = pts[k].t - pts[k - 1].t;
    if (std::abs(dt - h) > 1e-9 * h) throw MisalignedTraces("audit requires a uniform time step");
  }

  AuditResult r;
  r.subsystem = which;
  r.step = h;
  r.relative_tolerance = kAuditRelativeTolerance;
  r.steps.reserve(pts.size() - 1);
  for (std::size_t k = 1; k < pts.size(); ++k) {
    const auto& a = pts[k - 1];
    const auto& b = pts[k];
    AuditStep s;
    s.t = b.t;
    s.work = (0.5 * (a.effort + b.effort)).dot(b.q - a.q);
    s.d_kinetic = b.energy.kinetic - a.energy.kinetic;
    s.d_potential = b.energy.potential - a.energy.potential;
    s.residual = s.d_kinetic + s.d_potential - s.work;
    r.max_abs_residual = std::max(r.max_abs_residual, std::abs(s.residual));
    r.total_abs_residual += std::abs(s.residual);
    r.energy_scale = std::max(r.energy_scale, std::abs(s.d_kinetic) + std::abs(s.d_potential));
    r.steps.push_back(s);
  }

  // Quadrature allowance (2 Omega h)^2 * energy_scale. Omega is a characteristic
  // frequency taken from the joint trace alone: the larger of max|q_ddot| / max|q_dot|
  // and max|q_dot| / length_scale (efforts vary with configuration at that rate).
  // The factor 2 covers the q_dot^2 harmonics of centrifugal terms.
  double max_rate = 0.0, max_accel = 0.0;
  for (const auto& p : pts) {
    max_rate = std::max(max_rate, p.q_dot.cwiseAbs().maxCoeff());
    max_accel = std::max(max_accel, p.q_ddot.cwiseAbs().maxCoeff());
  }
  const double omega = max_rate > 0.0 ? std::max(max_accel / max_rate, max_rate / length_scale) : 0.0;
  r.quadrature_allowance = (2.0 * omega * h) * (2.0 * omega * h) * r.energy_scale;
  r.passed = r.max_abs_residual <= r.threshold();
  return r;
}

}  // namespace detail

/// Wrist audit: torques against theta displacements.
inline AuditResult audit(const WristTrace& joints, const WristEffortTrace& efforts, const MachineModel& model) {
  if (joints.size() != efforts.size()) throw MisalignedTraces("wrist joint and effort traces differ in length");
  std::vector<detail::AuditPoint<2>> pts;
  pts.reserve(joints.size());
  for (std::size_t n = 0; n < joints.size(); ++n) {
    const auto& j = joints[n];
    if (j.t != efforts[n].t) throw MisalignedTraces("timestamp mismatch at sample " + std::to_string(n));
    pts.push_back({j.t, wrist_energy(j.theta, j.theta_dot, model), j.theta, j.theta_dot, j.theta_ddot,
                   efforts[n].torque});
  }
  return detail::run_audit(Subsystem::Wrist, pts, 1.0);
}

/// Translation audit: forces against rho displacements. The platform state
/// needed for the energy is recovered from the joint trace alone
/// (p by forward kinematics, p_dot = J^-1 rho_dot).
inline AuditResult audit(const PrismaticTrace& joints, const TranslationEffortTrace& efforts,
                         const MachineModel& model) {
  if (joints.size() != efforts.size()) {
    throw MisalignedTraces("translation joint and effort traces differ in length");
  }
  std::vector<detail::AuditPoint<3>> pts;
  pts.reserve(joints.size());
  Vec3 seed = model.translation.workspace_offset;
  for (std::size_t n = 0; n < joints.size(); ++n) {
    const auto& j = joints[n];
    if (j.t != efforts[n].t) throw MisalignedTraces("timestamp mismatch at sample " + std::to_string(n));
    const Vec3 p = fk_translation(j.rho, model, seed);
    seed = p;
    const Vec3 p_dot = jacobian_translation(p, model).J.partialPivLu().solve(j.rho_dot);
    pts.push_back({j.t, translation_energy(p, p_dot, j.rho, j.rho_dot, model), j.rho, j.rho_dot, j.rho_ddot,
                   efforts[n].force});
  }
  return detail::run_audit(Subsystem::Translation, pts, model.translation.leg_length);
}

}  // namespace orthoglide
