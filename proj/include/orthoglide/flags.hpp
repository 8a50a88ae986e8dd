#pragma once

#include <cstdint>
#include <string>

namespace orthoglide {

/// Per-sample warnings carried alongside joint traces.
enum class Flag : std::uint32_t {
  JointLimitX = 1u << 0,
  JointLimitY = 1u << 1,
  JointLimitZ = 1u << 2,
  NearSingularityX = 1u << 3,
  NearSingularityY = 1u << 4,
  NearSingularityZ = 1u << 5,
  Gimbal = 1u << 6,
  WristRange1 = 1u << 7,
  WristRange2 = 1u << 8,
};

class SampleFlags {
 public:
  constexpr SampleFlags() = default;

  constexpr void set(Flag f) { bits_ |= static_cast<std::uint32_t>(f); }
  constexpr bool test(Flag f) const { return (bits_ & static_cast<std::uint32_t>(f)) != 0; }
  constexpr bool any() const { return bits_ != 0; }
  constexpr std::uint32_t bits() const { return bits_; }

  constexpr SampleFlags& operator|=(SampleFlags o) {
    bits_ |= o.bits_;
    return *this;
  }

  static constexpr Flag joint_limit(int axis) {
    return static_cast<Flag>(static_cast<std::uint32_t>(Flag::JointLimitX) << axis);
  }
  static constexpr Flag near_singularity(int axis) {
    return static_cast<Flag>(static_cast<std::uint32_t>(Flag::NearSingularityX) << axis);
  }

  bool has_near_singularity() const {
    return test(Flag::NearSingularityX) || test(Flag::NearSingularityY) || test(Flag::NearSingularityZ);
  }

  /// `|`-separated names, empty when clear.
  std::string to_string() const {
    static constexpr struct {
      Flag flag;
      const char* name;
    } names[] = {
        {Flag::JointLimitX, "limit_x"},     {Flag::JointLimitY, "limit_y"},
        {Flag::JointLimitZ, "limit_z"},     {Flag::NearSingularityX, "near_sing_x"},
        {Flag::NearSingularityY, "near_sing_y"}, {Flag::NearSingularityZ, "near_sing_z"},
        {Flag::Gimbal, "gimbal"},           {Flag::WristRange1, "range_theta1"},
        {Flag::WristRange2, "range_theta2"},
    };
    std::string out;
    for (const auto& n : names) {
      if (!test(n.flag)) continue;
      if (!out.empty()) out += '|';
      out += n.name;
    }
    return out;
  }

  friend constexpr bool operator==(SampleFlags, SampleFlags) = default;

 private:
  std::uint32_t bits_ = 0;
};

}  // namespace orthoglide
