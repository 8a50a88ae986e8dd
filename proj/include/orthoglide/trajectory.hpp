#pragma once

// The two parametric test-trajectory families, sampled uniformly in time at
// constant path speed Vp:
//
//   TrajI : semicircle of radius R in the vertical plane at azimuth phi,
//           p = c + R (cos psi cos phi, cos psi sin phi, sin psi), psi in [0, pi]
//           v = -(cos d cos phi, cos d sin phi, sin d), d = d0 + (d1 - d0) psi / pi
//   TrajII: horizontal circle, p = c + R (cos psi, sin psi, 0), psi in [0, 2 pi]
//           v = (sin g sin psi, sin g cos psi, -cos g)
//
// psi(t) = (Vp / R) t. All derivatives are analytic.

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "orthoglide/errors.hpp"
#include "orthoglide/model.hpp"

namespace orthoglide {

enum class TrajectoryFamily { TrajI, TrajII };

struct TrajectorySpec {
  TrajectoryFamily family = TrajectoryFamily::TrajI;
  double radius = 0.2;                // R, m
  double plane_angle = kPi / 2;       // phi, TrajI only
  double tilt = kPi / 4;              // gamma, TrajII only
  double delta_start = kPi / 6;       // TrajI tool-angle sweep
  double delta_end = 5 * kPi / 6;
  double path_speed = 1.0;            // Vp, m/s
  int sample_count = 2000;
  std::optional<Vec3> center;         // defaults to the workspace offset dr

  double psi_span() const { return family == TrajectoryFamily::TrajI ? kPi : 2 * kPi; }
  double duration() const { return psi_span() * radius / path_speed; }
};

struct TrajectorySample {
  double t = 0.0;
  double psi = 0.0;
  Vec3 p = Vec3::Zero();
  Vec3 p_dot = Vec3::Zero();
  Vec3 p_ddot = Vec3::Zero();
  Vec3 v = Vec3::UnitZ();
  Vec3 v_dot = Vec3::Zero();
  Vec3 v_ddot = Vec3::Zero();
};

using Trajectory = std::vector<TrajectorySample>;

namespace detail {

inline void check_spec(const TrajectorySpec& spec) {
  if (!(spec.radius > 0.0) || !std::isfinite(spec.radius)) {
    throw SpecMismatch("trajectory radius must be > 0");
  }
  if (!(spec.path_speed > 0.0) || !std::isfinite(spec.path_speed)) {
    throw SpecMismatch("trajectory path speed must be > 0");
  }
  if (spec.sample_count < 2) throw SpecMismatch("trajectory needs at least 2 samples");
}

inline double sample_time(const TrajectorySpec& spec, int k) {
  return spec.duration() * static_cast<double>(k) / static_cast<double>(spec.sample_count - 1);
}

}  // namespace detail

/// Evaluates TrajI at path angle psi (time and psi rate taken from spec).
inline TrajectorySample eval_traj_I(const TrajectorySpec& spec, const Vec3& center, double psi) {
  const double R = spec.radius;
  const double w = spec.path_speed / R;
  const double cphi = std::cos(spec.plane_angle), sphi = std::sin(spec.plane_angle);
  const double cpsi = std::cos(psi), spsi = std::sin(psi);

  const double rate = (spec.delta_end - spec.delta_start) / kPi;  // d delta / d psi
  const double delta = spec.delta_start + rate * psi;
  const double dd = rate * w;  // d delta / dt
  const double cd = std::cos(delta), sd = std::sin(delta);

  TrajectorySample s;
  s.psi = psi;
  s.t = psi / w;
  s.p = center + R * Vec3(cpsi * cphi, cpsi * sphi, spsi);
  s.p_dot = R * w * Vec3(-spsi * cphi, -spsi * sphi, cpsi);
  s.p_ddot = -R * w * w * Vec3(cpsi * cphi, cpsi * sphi, spsi);
  s.v = -Vec3(cd * cphi, cd * sphi, sd);
  s.v_dot = dd * Vec3(sd * cphi, sd * sphi, -cd);
  s.v_ddot = dd * dd * Vec3(cd * cphi, cd * sphi, sd);
  return s;
}

inline TrajectorySample eval_traj_II(const TrajectorySpec& spec, const Vec3& center, double psi) {
  const double R = spec.radius;
  const double w = spec.path_speed / R;
  const double cpsi = std::cos(psi), spsi = std::sin(psi);
  const double sg = std::sin(spec.tilt), cg = std::cos(spec.tilt);

  TrajectorySample s;
  s.psi = psi;
  s.t = psi / w;
  s.p = center + R * Vec3(cpsi, spsi, 0.0);
  s.p_dot = R * w * Vec3(-spsi, cpsi, 0.0);
  s.p_ddot = -R * w * w * Vec3(cpsi, spsi, 0.0);
  s.v = Vec3(sg * spsi, sg * cpsi, -cg);
  s.v_dot = w * sg * Vec3(cpsi, -spsi, 0.0);
  s.v_ddot = -w * w * sg * Vec3(spsi, cpsi, 0.0);
  return s;
}

namespace detail {

template <typename Eval>
Trajectory sample_uniform(const TrajectorySpec& spec, const MachineModel& model, Eval eval) {
  check_spec(spec);
  const Vec3 center = spec.center.value_or(model.translation.workspace_offset);
  Trajectory out;
  out.reserve(static_cast<std::size_t>(spec.sample_count));
  const double last = static_cast<double>(spec.sample_count - 1);
  for (int k = 0; k < spec.sample_count; ++k) {
    // psi and t share the grid fraction so the end samples land exactly on the span.
    TrajectorySample s = eval(spec, center, spec.psi_span() * static_cast<double>(k) / last);
    s.t = sample_time(spec, k);
    out.push_back(s);
  }
  return out;
}

}  // namespace detail

inline Trajectory sample_traj_I(const TrajectorySpec& spec, const MachineModel& model) {
  if (spec.family != TrajectoryFamily::TrajI) throw SpecMismatch("sample_traj_I called with a TrajII spec");
  return detail::sample_uniform(spec, model, eval_traj_I);
}

inline Trajectory sample_traj_II(const TrajectorySpec& spec, const MachineModel& model) {
  if (spec.family != TrajectoryFamily::TrajII) throw SpecMismatch("sample_traj_II called with a TrajI spec");
  return detail::sample_uniform(spec, model, eval_traj_II);
}

inline Trajectory sample_trajectory(const TrajectorySpec& spec, const MachineModel& model) {
  return spec.family == TrajectoryFamily::TrajI ? sample_traj_I(spec, model) : sample_traj_II(spec, model);
}

/// Max over interior samples of |analytic derivative - central difference| / scale,
/// taken over p_dot, p_ddot, v_dot and v_ddot. The scale of each channel is its
/// largest analytic magnitude on the trace (1 when that is zero).
inline double finite_difference_check(const Trajectory& samples) {
  if (samples.size() < 3) throw TooFewSamples(samples.size(), 3);
  const double h = samples[1].t - samples[0].t;

  using Member = Vec3 TrajectorySample::*;
  struct Channel {
    Member value;
    Member derivative;
  };
  constexpr Channel channels[] = {{&TrajectorySample::p, &TrajectorySample::p_dot},
                                  {&TrajectorySample::p_dot, &TrajectorySample::p_ddot},
                                  {&TrajectorySample::v, &TrajectorySample::v_dot},
                                  {&TrajectorySample::v_dot, &TrajectorySample::v_ddot}};

  double worst = 0.0;
  for (const auto& ch : channels) {
    double scale = 0.0;
    for (const auto& s : samples) scale = std::max(scale, (s.*ch.derivative).norm());
    if (scale == 0.0) scale = 1.0;
    for (std::size_t k = 1; k + 1 < samples.size(); ++k) {
      const Vec3 central = (samples[k + 1].*ch.value - samples[k - 1].*ch.value) / (2.0 * h);
      worst = std::max(worst, (samples[k].*ch.derivative - central).norm() / scale);
    }
  }
  return worst;
}

}  // namespace orthoglide
