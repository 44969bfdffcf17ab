#include "vigil/pipeline/profile.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "vigil/common/errors.hpp"

namespace vigil::pipeline {

using nlohmann::json;

namespace {

StageName parse_stage_name(const std::string& s) {
  if (s == "face") return StageName::FaceDetection;
  if (s == "landmark") return StageName::LandmarkDetection;
  if (s == "blink") return StageName::BlinkDetection;
  throw FormatError("unknown stage name '" + s + "' (expected face, landmark or blink)");
}

Distribution parse_distribution(const std::string& s) {
  if (s == "deterministic") return Distribution::Deterministic;
  if (s == "trunc_normal") return Distribution::TruncatedNormal;
  if (s == "lognormal") return Distribution::LogNormal;
  throw FormatError("unknown distribution '" + s + "'");
}

PlatformProfile parse_platform(const json& j, std::string label) {
  if (!j.contains("stages") || !j["stages"].is_array()) throw FormatError("profile requires a \"stages\" array");
  PlatformProfile p;
  p.label = std::move(label);
  std::array<bool, 3> seen{};
  for (const auto& s : j["stages"]) {
    StageProfile sp;
    sp.name = parse_stage_name(s.at("name").get<std::string>());
    sp.mean_ms = s.at("mean_ms").get<double>();
    sp.std_ms = s.value("std_ms", 0.0);
    sp.distribution = parse_distribution(s.value("dist", std::string("trunc_normal")));
    const auto idx = static_cast<std::size_t>(sp.name);
    if (seen[idx]) throw FormatError("duplicate stage '" + std::string(short_name(sp.name)) + "'");
    seen[idx] = true;
    p.stages[idx] = sp;
  }
  for (std::size_t i = 0; i < seen.size(); ++i) {
    if (!seen[i]) throw FormatError("profile is missing stage '" + std::string(short_name(kStageOrder[i])) + "'");
  }
  try {
    validate(p);
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
  return p;
}

}  // namespace

double PlatformProfile::total_mean_ms() const {
  double total = 0.0;
  for (const auto& s : stages) total += s.mean_ms;
  return total;
}

const StageProfile& PlatformProfile::stage(StageName name) const { return stages[static_cast<std::size_t>(name)]; }

std::string_view to_string(StageName name) {
  switch (name) {
    case StageName::FaceDetection: return "Face Detection";
    case StageName::LandmarkDetection: return "Landmark Detection";
    case StageName::BlinkDetection: return "Blink Detection";
  }
  return "?";
}

std::string_view short_name(StageName name) {
  switch (name) {
    case StageName::FaceDetection: return "face";
    case StageName::LandmarkDetection: return "landmark";
    case StageName::BlinkDetection: return "blink";
  }
  return "?";
}

std::string_view to_string(Distribution d) {
  switch (d) {
    case Distribution::Deterministic: return "deterministic";
    case Distribution::TruncatedNormal: return "trunc_normal";
    case Distribution::LogNormal: return "lognormal";
  }
  return "?";
}

void validate(const PlatformProfile& profile) {
  for (const auto& s : profile.stages) {
    if (!(s.mean_ms > 0.0)) {
      throw std::invalid_argument("stage '" + std::string(short_name(s.name)) + "' needs mean_ms > 0");
    }
    if (!(s.std_ms >= 0.0)) {
      throw std::invalid_argument("stage '" + std::string(short_name(s.name)) + "' needs std_ms >= 0");
    }
  }
}

ProfileSet parse_profiles(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw FormatError(std::string("invalid profile JSON: ") + e.what());
  }
  try {
    ProfileSet set;
    set.device = j.value("device", std::string());
    if (j.contains("profiles")) {
      for (const auto& row : j.at("profiles")) {
        set.rows.push_back(parse_platform(row, row.value("resolution", std::string())));
      }
    } else {
      set.rows.push_back(parse_platform(j, j.value("resolution", std::string())));
    }
    if (set.rows.empty()) throw FormatError("profile file contains no profiles");
    return set;
  } catch (const json::exception& e) {
    throw FormatError(std::string("invalid profile: ") + e.what());
  }
}

ProfileSet load_profiles(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open profile '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_profiles(ss.str());
}

PlatformProfile deterministic_profile(std::string label, double face_ms, double landmark_ms, double blink_ms) {
  PlatformProfile p;
  p.label = std::move(label);
  p.stages = {StageProfile{StageName::FaceDetection, face_ms, 0.0, Distribution::Deterministic},
              StageProfile{StageName::LandmarkDetection, landmark_ms, 0.0, Distribution::Deterministic},
              StageProfile{StageName::BlinkDetection, blink_ms, 0.0, Distribution::Deterministic}};
  validate(p);
  return p;
}

PlatformProfile average_profile(const ProfileSet& set) {
  if (set.rows.empty()) throw std::invalid_argument("average_profile: no rows");
  PlatformProfile avg;
  avg.label = "average";
  const double n = static_cast<double>(set.rows.size());
  for (std::size_t s = 0; s < kStageOrder.size(); ++s) {
    double mean = 0.0;
    double sd = 0.0;
    for (const auto& r : set.rows) {
      mean += r.stages[s].mean_ms;
      sd += r.stages[s].std_ms;
    }
    avg.stages[s] = StageProfile{kStageOrder[s], mean / n, sd / n, Distribution::TruncatedNormal};
  }
  return avg;
}

}  // namespace vigil::pipeline
