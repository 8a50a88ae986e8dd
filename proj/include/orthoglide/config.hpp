#pragma once

// Line-oriented `key = value` machine configuration.
//
//   # comment
//   translation.L = 0.774
//   wrist.axis1   = 1, 0, 0
//
// Keys are namespaced (translation.*, wrist.*, gravity.*, motor.<name>.*,
// assign.<actuator>). Values are bare SI reals; vectors are comma-separated.

#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "orthoglide/errors.hpp"
#include "orthoglide/format.hpp"
#include "orthoglide/model.hpp"

namespace orthoglide {

/// Parsed document, before any interpretation.
class ConfigDocument {
 public:
  static ConfigDocument parse(std::string_view text) {
    ConfigDocument doc;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      auto end = text.find('\n', pos);
      if (end == std::string_view::npos) end = text.size();
      std::string_view line = text.substr(pos, end - pos);
      pos = end + 1;
      ++line_no;

      if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
      line = trim(line);
      if (line.empty()) continue;

      const auto eq = line.find('=');
      if (eq == std::string_view::npos) {
        throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
      }
      std::string key(trim(line.substr(0, eq)));
      std::string value(trim(line.substr(eq + 1)));
      if (key.empty()) throw ConfigError("line " + std::to_string(line_no) + ": empty key");
      if (!doc.entries_.emplace(key, value).second) {
        throw ConfigError("line " + std::to_string(line_no) + ": duplicate key " + key);
      }
    }
    return doc;
  }

  bool has(const std::string& key) const { return entries_.count(key) != 0; }

  const std::string& text(const std::string& key) const {
    used_.insert(key);
    auto it = entries_.find(key);
    if (it == entries_.end()) throw MissingKey(key);
    return it->second;
  }

  std::vector<double> reals(const std::string& key, std::size_t count) const {
    const std::string& raw = text(key);
    std::vector<double> out;
    std::string_view rest = raw;
    while (true) {
      const auto comma = rest.find(',');
      auto v = parse_real(rest.substr(0, comma));
      if (!v) throw UnitParseError(key, raw);
      out.push_back(*v);
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (out.size() != count) {
      throw UnitParseError(key, raw + " (expected " + std::to_string(count) + " values)");
    }
    return out;
  }

  double real(const std::string& key) const { return reals(key, 1)[0]; }

  double real_or(const std::string& key, double fallback) const {
    return has(key) ? real(key) : fallback;
  }

  Vec3 vec(const std::string& key) const {
    auto v = reals(key, 3);
    return Vec3(v[0], v[1], v[2]);
  }

  /// Keys with this prefix, in lexicographic order.
  std::vector<std::string> keys_with_prefix(std::string_view prefix) const {
    std::vector<std::string> out;
    for (const auto& [k, v] : entries_) {
      if (std::string_view(k).substr(0, prefix.size()) == prefix) out.push_back(k);
    }
    return out;
  }

  std::vector<std::string> unused_keys() const {
    std::vector<std::string> out;
    for (const auto& [k, v] : entries_) {
      if (!used_.count(k)) out.push_back(k);
    }
    return out;
  }

 private:
  std::map<std::string, std::string> entries_;
  mutable std::set<std::string> used_;
};

namespace detail {

inline UnitVec3 unit_from(const ConfigDocument& doc, const std::string& key) {
  const Vec3 v = doc.vec(key);
  if (!v.allFinite() || std::abs(v.norm() - 1.0) > UnitVec3::kTolerance) {
    throw InvariantViolation(key + " must be a unit vector");
  }
  return UnitVec3(v);
}

inline std::array<double, 2> range_from(const ConfigDocument& doc, const std::string& key,
                                        std::array<double, 2> fallback) {
  if (!doc.has(key)) return fallback;
  auto r = doc.reals(key, 2);
  return {r[0], r[1]};
}

}  // namespace detail

/// Builds and validates a MachineModel. Throws MissingKey, UnitParseError,
/// InvariantViolation, or ConfigError (unknown key, malformed line).
inline MachineModel load_model(std::string_view config_text) {
  const auto doc = ConfigDocument::parse(config_text);
  MachineModel m;

  auto& tg = m.translation;
  tg.leg_length = doc.real("translation.L");
  tg.workspace_offset =
      Vec3(doc.real("translation.dr_x"), doc.real("translation.dr_y"), doc.real("translation.dr_z"));
  tg.workspace_cube_side = doc.real("translation.cube_side");

  auto& ti = m.translation_inertia;
  ti.platform_mass = doc.real("translation.platform_mass");
  for (int i = 0; i < 3; ++i) {
    const std::string p = std::string("translation.leg_") + axis_name(i) + ".";
    auto& leg = ti.legs[i];
    leg.slider_mass = doc.real(p + "m1");
    leg.bar_mass_2 = doc.real(p + "m2");
    leg.bar_mass_4 = doc.real(p + "m4");
    leg.elbow_mass_3 = doc.real(p + "m3");
    leg.elbow_mass_7 = doc.real(p + "m7");
    leg.parallelogram_length = doc.real(p + "d4");
    leg.parallelogram_half_width = doc.real(p + "r2");
    leg.actuator_inertia = doc.real(p + "Im");
    leg.transmission = doc.real(p + "k");
  }

  auto& wg = m.wrist;
  wg.axis1 = detail::unit_from(doc, "wrist.axis1");
  wg.axis2_home = detail::unit_from(doc, "wrist.axis2");
  wg.tool_home = detail::unit_from(doc, "wrist.tool");
  wg.joint1_range = detail::range_from(doc, "wrist.joint1_range", wg.joint1_range);
  wg.joint2_range = detail::range_from(doc, "wrist.joint2_range", wg.joint2_range);

  auto& wi = m.wrist_inertia;
  wi.proximal1_inertia = doc.real("wrist.I_p1");
  wi.proximal2_inertia = doc.real("wrist.I_p2");
  {
    // xx, yy, zz, xy, xz, yz
    auto t = doc.reals("wrist.I_t", 6);
    wi.terminal_inertia << t[0], t[3], t[4],
                           t[3], t[1], t[5],
                           t[4], t[5], t[2];
  }
  wi.terminal_mass = doc.real("wrist.terminal_mass");
  wi.terminal_com = doc.vec("wrist.terminal_com");

  m.gravity.g = Vec3(doc.real_or("gravity.x", 0.0), doc.real_or("gravity.y", 0.0),
                     doc.real_or("gravity.z", -9.81));

  for (const auto& key : doc.keys_with_prefix("motor.")) {
    const auto dot = key.rfind('.');
    const std::string name = key.substr(6, dot - 6);
    if (name.empty() || m.motors.count(name)) continue;
    const std::string p = "motor." + name + ".";
    MotorSpec ms;
    ms.name = name;
    ms.rated_power = doc.real(p + "rated_power");
    ms.max_speed = doc.real(p + "max_speed");
    ms.peak_effort = doc.real(p + "peak_effort");
    ms.continuous_effort = doc.real(p + "continuous_effort");
    m.motors.emplace(name, ms);
  }
  for (Actuator a : kAllActuators) {
    const std::string key = std::string("assign.") + actuator_name(a);
    if (doc.has(key)) m.assignment[a] = doc.text(key);
  }

  if (auto unused = doc.unused_keys(); !unused.empty()) {
    throw ConfigError("unknown config key: " + unused.front());
  }

  validate(m);
  return m;
}

inline MachineModel load_model_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return load_model(ss.str());
}

/// Writes `m` back as a config document; load_model(serialize_model(m)) == m exactly.
inline std::string serialize_model(const MachineModel& m) {
  std::ostringstream out;
  auto put = [&](const std::string& key, std::initializer_list<double> values) {
    out << key << " = ";
    bool first = true;
    for (double v : values) {
      if (!first) out << ", ";
      out << format_shortest(v);
      first = false;
    }
    out << '\n';
  };
  auto put_vec = [&](const std::string& key, const Vec3& v) { put(key, {v.x(), v.y(), v.z()}); };

  const auto& tg = m.translation;
  put("translation.L", {tg.leg_length});
  put("translation.dr_x", {tg.workspace_offset.x()});
  put("translation.dr_y", {tg.workspace_offset.y()});
  put("translation.dr_z", {tg.workspace_offset.z()});
  put("translation.cube_side", {tg.workspace_cube_side});
  put("translation.platform_mass", {m.translation_inertia.platform_mass});
  for (int i = 0; i < 3; ++i) {
    const std::string p = std::string("translation.leg_") + axis_name(i) + ".";
    const auto& leg = m.translation_inertia.legs[i];
    put(p + "m1", {leg.slider_mass});
    put(p + "m2", {leg.bar_mass_2});
    put(p + "m4", {leg.bar_mass_4});
    put(p + "m3", {leg.elbow_mass_3});
    put(p + "m7", {leg.elbow_mass_7});
    put(p + "d4", {leg.parallelogram_length});
    put(p + "r2", {leg.parallelogram_half_width});
    put(p + "Im", {leg.actuator_inertia});
    put(p + "k", {leg.transmission});
  }
  const auto& wg = m.wrist;
  put_vec("wrist.axis1", wg.axis1);
  put_vec("wrist.axis2", wg.axis2_home);
  put_vec("wrist.tool", wg.tool_home);
  put("wrist.joint1_range", {wg.joint1_range[0], wg.joint1_range[1]});
  put("wrist.joint2_range", {wg.joint2_range[0], wg.joint2_range[1]});
  const auto& wi = m.wrist_inertia;
  put("wrist.I_p1", {wi.proximal1_inertia});
  put("wrist.I_p2", {wi.proximal2_inertia});
  const auto& I = wi.terminal_inertia;
  put("wrist.I_t", {I(0, 0), I(1, 1), I(2, 2), I(0, 1), I(0, 2), I(1, 2)});
  put("wrist.terminal_mass", {wi.terminal_mass});
  put_vec("wrist.terminal_com", wi.terminal_com);
  put("gravity.x", {m.gravity.g.x()});
  put("gravity.y", {m.gravity.g.y()});
  put("gravity.z", {m.gravity.g.z()});
  for (const auto& [name, ms] : m.motors) {
    const std::string p = "motor." + name + ".";
    put(p + "rated_power", {ms.rated_power});
    put(p + "max_speed", {ms.max_speed});
    put(p + "peak_effort", {ms.peak_effort});
    put(p + "continuous_effort", {ms.continuous_effort});
  }
  for (const auto& [a, name] : m.assignment) {
    out << "assign." << actuator_name(a) << " = " << name << '\n';
  }
  return out.str();
}

/// Shipped default machine. (L, dr) are fitted to the published peak joint
/// rates and accelerations of the three reference trajectories; inertial and
/// motor values are representative placeholders, not CAD data.
inline constexpr std::string_view kDefaultConfig = R"(# Orthoglide 5-axis default configuration (SI units).

# Translational stage. L and dr reproduce the reference joint-speed table
# (R = 0.2 m, Vp = 1 m/s) to within 3.5% on every entry.
translation.L = 0.774
translation.dr_x = -0.065
translation.dr_y = -0.065
translation.dr_z = -0.065
translation.cube_side = 0.5
translation.platform_mass = 12.0

# Per-leg lumped inertia. k is the ballscrew ratio 2*pi/pitch (20 mm pitch).
translation.leg_x.m1 = 4.0
translation.leg_x.m2 = 1.2
translation.leg_x.m4 = 1.2
translation.leg_x.m3 = 0.6
translation.leg_x.m7 = 0.6
translation.leg_x.d4 = 0.774
translation.leg_x.r2 = 0.05
translation.leg_x.Im = 1.5e-4
translation.leg_x.k = 314.159
translation.leg_y.m1 = 4.0
translation.leg_y.m2 = 1.2
translation.leg_y.m4 = 1.2
translation.leg_y.m3 = 0.6
translation.leg_y.m7 = 0.6
translation.leg_y.d4 = 0.774
translation.leg_y.r2 = 0.05
translation.leg_y.Im = 1.5e-4
translation.leg_y.k = 314.159
translation.leg_z.m1 = 4.0
translation.leg_z.m2 = 1.2
translation.leg_z.m4 = 1.2
translation.leg_z.m3 = 0.6
translation.leg_z.m7 = 0.6
translation.leg_z.d4 = 0.774
translation.leg_z.r2 = 0.05
translation.leg_z.Im = 1.5e-4
translation.leg_z.k = 314.159

# Spherical wrist: v(theta1, theta2) = Rot(axis1, theta1) Rot(axis2, theta2) tool.
wrist.axis1 = 1, 0, 0
wrist.axis2 = 0, 1, 0
wrist.tool = 0, 0, -1
wrist.joint1_range = -1.5707963267948966, 1.5707963267948966
wrist.joint2_range = -1.5707963267948966, 1.5707963267948966
wrist.I_p1 = 0.02
wrist.I_p2 = 0.015
# xx, yy, zz, xy, xz, yz in the terminal frame, about the wrist center
wrist.I_t = 0.03, 0.03, 0.01, 0, 0, 0
wrist.terminal_mass = 3.0
wrist.terminal_com = 0, 0, -0.08

gravity.x = 0
gravity.y = 0
gravity.z = -9.81

# Motor catalogue (illustrative ratings; replace with datasheet values).
# Linear axes: max_speed in m/s, efforts in N. Wrist: rad/s and N*m.
motor.NX430EAF.rated_power = 1800
motor.NX430EAF.max_speed = 1.5
motor.NX430EAF.peak_effort = 2500
motor.NX430EAF.continuous_effort = 1000
motor.FFA-20-80.rated_power = 800
motor.FFA-20-80.max_speed = 7.85
motor.FFA-20-80.peak_effort = 150
motor.FFA-20-80.continuous_effort = 80

assign.x = NX430EAF
assign.y = NX430EAF
assign.z = NX430EAF
assign.theta1 = FFA-20-80
assign.theta2 = FFA-20-80
)";

inline MachineModel default_model() { return load_model(kDefaultConfig); }

}  // namespace orthoglide
