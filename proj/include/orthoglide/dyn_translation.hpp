#pragma once

// Lumped-mass inverse dynamics of the translational stage.
//
// Each parallelogram bar puts half its mass on the slider and half on the
// platform; elbow bodies ride with the slider. Per axis i:
//
//   m_i   = m1 + (m2 + m4)/2 + m3 + m7              translating slider mass
//   M_i   = m_i + Im k^2                             with reflected rotor inertia
//   m_pl  = mp + sum_i (m2 + m4)/2                   platform lumped mass
//
//   F = M rho_ddot - m (g . e_i) + J^-T m_pl (p_ddot - g)
//
// which is exactly the power balance F . rho_dot = d/dt (KE + PE) for
//   KE = 1/2 sum M_i rho_dot_i^2 + 1/2 m_pl |p_dot|^2
//   PE = -sum m_i (g . e_i) rho_i - m_pl g . p

#include <Eigen/LU>

#include <cmath>
#include <vector>

#include "orthoglide/errors.hpp"
#include "orthoglide/flags.hpp"
#include "orthoglide/kin_translation.hpp"
#include "orthoglide/model.hpp"
#include "orthoglide/trajectory.hpp"

namespace orthoglide {

struct TranslationEffort {
  double t = 0.0;
  Vec3 force = Vec3::Zero();  // N, along each prismatic axis
  Vec3 power = Vec3::Zero();  // W, |F_i rho_dot_i|
  SampleFlags flags;
};

using TranslationEffortTrace = std::vector<TranslationEffort>;

inline Vec3 slider_effective_masses(const MachineModel& model) {
  const auto& legs = model.translation_inertia.legs;
  return Vec3(legs[0].effective_mass(), legs[1].effective_mass(), legs[2].effective_mass());
}

inline Vec3 slider_translating_masses(const MachineModel& model) {
  const auto& legs = model.translation_inertia.legs;
  return Vec3(legs[0].translating_mass(), legs[1].translating_mass(), legs[2].translating_mass());
}

inline Energy translation_energy(const Vec3& p, const Vec3& p_dot, const Vec3& rho, const Vec3& rho_dot,
                                 const MachineModel& model) {
  const Vec3 M = slider_effective_masses(model);
  const Vec3 m = slider_translating_masses(model);
  const double m_pl = model.translation_inertia.platform_lumped_mass();
  const Vec3& g = model.gravity.g;

  Energy e;
  e.kinetic = 0.5 * (M.array() * rho_dot.array().square()).sum() + 0.5 * m_pl * p_dot.squaredNorm();
  e.potential = -(m.array() * g.array() * rho.array()).sum() - m_pl * g.dot(p);
  return e;
}

/// Actuator forces at one instant.
inline Vec3 translation_force(const Vec3& p, const Vec3& p_ddot, const Vec3& rho_ddot, const MachineModel& model,
                              SampleFlags* flags = nullptr) {
  const Vec3 M = slider_effective_masses(model);
  const Vec3 m = slider_translating_masses(model);
  const double m_pl = model.translation_inertia.platform_lumped_mass();
  const Vec3& g = model.gravity.g;

  const auto jac = jacobian_translation(p, model);
  if (flags) *flags |= jac.flags;
  Eigen::PartialPivLU<Mat3> lu(jac.J.transpose());
  if (!(lu.rcond() > 1e-12)) throw NearSingularity();

  const Vec3 sliders = (M.array() * rho_ddot.array() - m.array() * g.array()).matrix();
  return sliders + lu.solve(m_pl * (p_ddot - g));
}

inline TranslationEffortTrace effort_translation(const Trajectory& traj, const PrismaticTrace& joints,
                                                 const MachineModel& model) {
  if (traj.size() != joints.size()) {
    throw MisalignedTraces("trajectory and joint traces differ in length");
  }
  TranslationEffortTrace out;
  out.reserve(traj.size());
  for (std::size_t n = 0; n < traj.size(); ++n) {
    const auto& s = traj[n];
    const auto& q = joints[n];
    if (s.t != q.t) throw MisalignedTraces("timestamp mismatch at sample " + std::to_string(n));

    TranslationEffort e;
    e.t = s.t;
    e.flags = q.flags;
    try {
      e.force = translation_force(s.p, s.p_ddot, q.rho_ddot, model, &e.flags);
    } catch (const NearSingularity&) {
      throw NearSingularity(static_cast<long>(n));
    } catch (const OutOfWorkspace& err) {
      throw OutOfWorkspace(err.axis(), static_cast<long>(n));
    }
    e.power = (e.force.array() * q.rho_dot.array()).abs().matrix();
    out.push_back(e);
  }
  return out;
}

}  // namespace orthoglide
