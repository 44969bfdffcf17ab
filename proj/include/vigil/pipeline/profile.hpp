#pragma once

#include <array>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace vigil::pipeline {

enum class StageName { FaceDetection, LandmarkDetection, BlinkDetection };

inline constexpr std::array<StageName, 3> kStageOrder{StageName::FaceDetection, StageName::LandmarkDetection,
                                                      StageName::BlinkDetection};

enum class Distribution {
  Deterministic,
  // Normal(mean, std) with negative draws clamped to zero.
  TruncatedNormal,
  // Log-normal matched to (mean, std); for stages whose std is comparable to
  // or larger than the mean, where clamping would bias the mean upward.
  LogNormal,
};

struct StageProfile {
  StageName name = StageName::FaceDetection;
  double mean_ms = 0.0;
  double std_ms = 0.0;
  Distribution distribution = Distribution::TruncatedNormal;
};

// Service-time model for one platform at one resolution: one profile per stage.
struct PlatformProfile {
  std::string label;
  std::array<StageProfile, 3> stages{};

  double total_mean_ms() const;
  const StageProfile& stage(StageName name) const;
};

// A device profile file: one PlatformProfile per resolution row.
struct ProfileSet {
  std::string device;
  std::vector<PlatformProfile> rows;
};

std::string_view to_string(StageName name);
std::string_view short_name(StageName name);  // "face" | "landmark" | "blink"
std::string_view to_string(Distribution d);   // "deterministic" | "trunc_normal" | "lognormal"

// Accepts either a single `{"stages":[...]}` profile or a device file
// `{"device":..,"profiles":[{"resolution":..,"stages":[...]}, ...]}`.
// Throws FormatError on malformed input.
ProfileSet parse_profiles(std::string_view json_text);
ProfileSet load_profiles(const std::filesystem::path& path);

// Throws std::invalid_argument unless mean > 0 and std >= 0 for all stages.
void validate(const PlatformProfile& profile);

PlatformProfile deterministic_profile(std::string label, double face_ms, double landmark_ms, double blink_ms);

// Stage-wise mean of the rows' means and stds, as a TruncatedNormal profile
// labelled "average". Throws std::invalid_argument on an empty set.
PlatformProfile average_profile(const ProfileSet& set);

}  // namespace vigil::pipeline
