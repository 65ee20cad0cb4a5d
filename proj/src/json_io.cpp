#include "tumorseg/json_io.hpp"

#include <array>
#include <charconv>

namespace tumorseg {

namespace {

template <typename T>
T field_or(const nlohmann::json& j, const char* key, T fallback) {
  if (!j.contains(key) || j.at(key).is_null()) return fallback;
  return j.at(key).get<T>();
}

}  // namespace

PhantomSpec phantom_spec_from_json(const nlohmann::json& j) {
  try {
    if (!j.is_object()) throw Error(ErrorCode::kManifest, "phantom spec must be a JSON object");
    PhantomSpec spec;
    spec.width = field_or(j, "width", spec.width);
    spec.height = field_or(j, "height", spec.height);
    spec.foreground = field_or(j, "foreground", spec.foreground);
    spec.background = field_or(j, "background", spec.background);
    spec.noise = field_or(j, "noise", spec.noise);
    spec.seed = field_or(j, "seed", spec.seed);
    if (!j.contains("disks") || !j.at("disks").is_array())
      throw Error(ErrorCode::kManifest, "phantom spec needs a \"disks\" array");
    for (const auto& d : j.at("disks")) {
      Disk disk;
      disk.cx = d.at("cx").get<int>();
      disk.cy = d.at("cy").get<int>();
      disk.radius = d.at("radius").get<int>();
      if (d.contains("intensity") && !d.at("intensity").is_null()) disk.intensity = d.at("intensity").get<int>();
      spec.disks.push_back(disk);
    }
    return spec;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kManifest, std::string("phantom spec: ") + e.what());
  }
}

nlohmann::ordered_json phantom_spec_to_json(const PhantomSpec& spec) {
  nlohmann::ordered_json j;
  j["width"] = spec.width;
  j["height"] = spec.height;
  j["foreground"] = spec.foreground;
  j["background"] = spec.background;
  j["noise"] = spec.noise;
  j["seed"] = spec.seed;
  auto disks = nlohmann::ordered_json::array();
  for (const auto& d : spec.disks) {
    nlohmann::ordered_json dj{{"cx", d.cx}, {"cy", d.cy}, {"radius", d.radius}};
    if (d.intensity) dj["intensity"] = *d.intensity;
    disks.push_back(dj);
  }
  j["disks"] = disks;
  return j;
}

namespace {
nlohmann::ordered_json opt(const std::optional<double>& v) {
  return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
}
}  // namespace

nlohmann::ordered_json to_json(const ConfusionCounts& c) {
  return {{"tp", c.tp}, {"fp", c.fp}, {"tn", c.tn}, {"fn", c.fn}};
}

nlohmann::ordered_json to_json(const MetricSet& m) {
  return {{"sensitivity", opt(m.sensitivity)},
          {"specificity", opt(m.specificity)},
          {"precision", opt(m.precision)},
          {"fscore", opt(m.fscore)},
          {"pixel_accuracy", m.pixel_accuracy}};
}

nlohmann::ordered_json to_json(const AreaResult& a) {
  nlohmann::ordered_json j{{"p", a.p}, {"white_pixels", a.white_pixels}, {"area", a.area}};
  if (!a.per_component_areas.empty()) {
    j["per_component_pixels"] = a.per_component_pixels;
    j["per_component_areas"] = a.per_component_areas;
  }
  return j;
}

std::string format_number(double v) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

}  // namespace tumorseg
