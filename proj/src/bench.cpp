#include "tumorseg/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>
#include <tuple>

#include "tumorseg/json_io.hpp"
#include "tumorseg/watershed.hpp"

namespace tumorseg {

namespace {

constexpr std::pair<Method, std::string_view> kMethodNames[] = {
    {Method::kFcm, "fcm"},
    {Method::kGlobalThreshold, "global_threshold"},
    {Method::kHistogramSymmetry, "histogram_symmetry"},
    {Method::kSrg, "srg"},
    {Method::kWatershed, "watershed"},
};

[[noreturn]] void manifest_error(const std::string& what) { throw Error(ErrorCode::kManifest, "manifest: " + what); }

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  const std::filesystem::path path(p);
  return path.is_absolute() ? path : base / path;
}

ManifestEntry parse_entry(const nlohmann::json& j, const std::filesystem::path& base, std::size_t index) {
  const std::string where = "entry " + std::to_string(index);
  if (!j.is_object()) manifest_error(where + " is not an object");
  ManifestEntry e;

  if (j.contains("phantom")) {
    e.phantom = phantom_spec_from_json(j.at("phantom"));
  } else if (j.contains("image_path")) {
    const auto p = j.at("image_path").get<std::string>();
    if (p.empty()) manifest_error(where + ": image_path is empty");
    e.image_path = resolve(base, p);
  } else {
    manifest_error(where + ": needs image_path or phantom");
  }
  if (j.contains("ground_truth_path") && !j.at("ground_truth_path").is_null()) {
    const auto p = j.at("ground_truth_path").get<std::string>();
    if (p.empty()) manifest_error(where + ": ground_truth_path is empty");
    e.ground_truth_path = resolve(base, p);
  }

  if (j.contains("id")) {
    e.id = j.at("id").get<std::string>();
  } else if (!e.image_path.empty()) {
    e.id = e.image_path.stem().string();
  } else {
    e.id = "entry" + std::to_string(index);
  }

  if (j.contains("seeds")) {
    for (const auto& s : j.at("seeds")) {
      if (!s.is_array() || s.size() < 2 || s.size() > 3) manifest_error(where + ": seeds are [x, y] or [x, y, id]");
      e.seeds.push_back(Seed{s[0].get<int>(), s[1].get<int>(), s.size() == 3 ? s[2].get<int>() : 1});
    }
  }
  if (j.contains("thresholds")) {
    for (const auto& t : j.at("thresholds")) {
      const int level = t.get<int>();
      if (level < 0 || level > 255) manifest_error(where + ": threshold outside [0, 255]");
      e.thresholds.emplace_back(level);
    }
  }
  if (j.contains("fcm")) {
    const auto& f = j.at("fcm");
    e.fcm.tau = f.value("tau", e.fcm.tau);
    e.fcm.max_iters = f.value("max_iters", e.fcm.max_iters);
    e.fcm.tol = f.value("tol", e.fcm.tol);
    try {
      e.fcm.validate();
    } catch (const Error& err) {
      manifest_error(where + ": " + err.what());
    }
  }
  e.se_size = j.value("se_size", e.se_size);
  if (e.se_size < 1 || e.se_size % 2 == 0) manifest_error(where + ": se_size must be a positive odd number");
  if (j.contains("stop_delta")) {
    if (j.at("stop_delta").is_null()) {
      e.stop_delta = std::nullopt;
    } else {
      const double d = j.at("stop_delta").get<double>();
      if (d < 0.0 || d > 255.0) manifest_error(where + ": stop_delta outside [0, 255]");
      e.stop_delta = d;
    }
  }
  e.srg_refine = j.value("srg_refine", e.srg_refine);
  return e;
}

}  // namespace

std::string_view to_string(Method m) {
  for (const auto& [method, name] : kMethodNames)
    if (method == m) return name;
  return "unknown";
}

Method parse_method(std::string_view name) {
  for (const auto& [method, n] : kMethodNames)
    if (n == name) return method;
  throw Error(ErrorCode::kInvalidArgument, "unknown method '" + std::string(name) + "'");
}

Manifest parse_manifest(std::string_view json_text, const std::filesystem::path& base_dir) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    manifest_error(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) manifest_error("top level must be an object");

  Manifest m;
  try {
    if (!j.contains("methods") || !j.at("methods").is_array() || j.at("methods").empty())
      manifest_error("at least one method is required");
    for (const auto& name : j.at("methods")) {
      try {
        const Method method = parse_method(name.get<std::string>());
        if (std::find(m.methods.begin(), m.methods.end(), method) == m.methods.end()) m.methods.push_back(method);
      } catch (const Error& e) {
        manifest_error(e.what());
      }
    }
    if (!j.contains("entries") || !j.at("entries").is_array() || j.at("entries").empty())
      manifest_error("at least one entry is required");
    std::size_t index = 0;
    for (const auto& entry : j.at("entries")) m.entries.push_back(parse_entry(entry, base_dir, index++));
    if (j.contains("output_dir")) m.output_dir = resolve(base_dir, j.at("output_dir").get<std::string>());
    m.workers = j.value("workers", 1);
    if (m.workers < 1) manifest_error("workers must be positive");
  } catch (const nlohmann::json::exception& e) {
    manifest_error(e.what());
  }

  const bool needs_seeds = std::find(m.methods.begin(), m.methods.end(), Method::kSrg) != m.methods.end();
  std::map<std::string, int> ids;
  for (const auto& e : m.entries) {
    if (needs_seeds && e.seeds.empty()) manifest_error("entry '" + e.id + "' has no seeds but srg is selected");
    if (++ids[e.id] > 1) manifest_error("duplicate entry id '" + e.id + "'");
  }
  return m;
}

Manifest load_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kMissingFile, "cannot open manifest " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_manifest(ss.str(), path.parent_path());
}

LoadedEntry load_entry(const ManifestEntry& entry) {
  if (entry.phantom) {
    Phantom ph = gen_phantom(*entry.phantom);
    std::optional<BinaryMask> truth = std::move(ph.truth);
    if (entry.ground_truth_path) truth = load_mask(*entry.ground_truth_path);
    return {std::move(ph.image), std::move(truth)};
  }
  GrayImage img = load_image(entry.image_path);
  std::optional<BinaryMask> truth;
  if (entry.ground_truth_path) {
    truth = load_mask(*entry.ground_truth_path);
    if (!truth->same_shape(img))
      throw Error(ErrorCode::kDimensionMismatch, "ground truth size differs from image for '" + entry.id + "'");
  }
  return {std::move(img), std::move(truth)};
}

namespace {

BinaryMask dispatch(const ManifestEntry& entry, const GrayImage& image, Method method) {
  const StructuringElement se = StructuringElement::square(entry.se_size);
  const bool multi = entry.thresholds.size() > 1;
  switch (method) {
    case Method::kSrg:
      return grow_mask(image, entry.seeds, entry.stop_delta);
    case Method::kGlobalThreshold:
      return global_threshold_pipeline(image, entry.thresholds, se, {entry.srg_refine, entry.stop_delta});
    case Method::kWatershed: {
      if (!multi) {
        const auto th = entry.thresholds.empty() ? std::nullopt : std::optional(entry.thresholds.front());
        return watershed_pipeline(image, th, se);
      }
      BinaryMask out(image.width(), image.height(), 0);
      for (const auto& th : entry.thresholds) out = mask_union(out, watershed_pipeline(image, th, se, {}, true));
      return out;
    }
    case Method::kFcm:
      return fcm_pipeline(image, entry.fcm, se);
    case Method::kHistogramSymmetry:
      return symmetry_threshold(image, se).mask;
  }
  throw Error(ErrorCode::kInvalidArgument, "unhandled method");
}

}  // namespace

MethodRun run_method(const ManifestEntry& entry, const GrayImage& image, Method method) {
  try {
    const auto start = std::chrono::steady_clock::now();
    BinaryMask mask = dispatch(entry, image, method);
    const auto stop = std::chrono::steady_clock::now();
    const double ms = std::chrono::duration<double, std::milli>(stop - start).count();
    return {std::move(mask), std::max(0.0, ms)};
  } catch (const Error& e) {
    throw Error(e.code(), "[" + entry.id + "/" + std::string(to_string(method)) + "] " + e.what());
  }
}

namespace {

MethodReport error_row(const std::string& id, Method method, const std::string& what) {
  MethodReport r;
  r.image_id = id;
  r.method = std::string(to_string(method));
  r.error = what;
  return r;
}

std::vector<MethodReport> evaluate_entry(const ManifestEntry& entry, const std::vector<Method>& methods) {
  std::vector<MethodReport> rows;
  std::optional<LoadedEntry> loaded;
  try {
    loaded = load_entry(entry);
  } catch (const std::exception& e) {
    for (auto m : methods) rows.push_back(error_row(entry.id, m, e.what()));
    return rows;
  }
  std::optional<AreaResult> gt_area;
  if (loaded->truth) gt_area = tumor_area(*loaded->truth);

  for (auto m : methods) {
    try {
      MethodRun run = run_method(entry, loaded->image, m);
      MethodReport r;
      r.image_id = entry.id;
      r.method = std::string(to_string(m));
      r.runtime_ms = run.runtime_ms;
      const AreaResult pred_area = tumor_area(run.mask);
      r.area_pred = pred_area.area;
      if (loaded->truth) {
        const ConfusionCounts c = confusion(*loaded->truth, run.mask);
        const MetricSet ms = metric_set(c);
        r.counts = c;
        r.sensitivity = ms.sensitivity;
        r.specificity = ms.specificity;
        r.precision = ms.precision;
        r.fscore = ms.fscore;
        r.pixel_accuracy = ms.pixel_accuracy;
        r.area_gt = gt_area->area;
        if (gt_area->area > 0.0) r.area_accuracy = area_accuracy(pred_area, *gt_area);
      }
      r.mask = std::move(run.mask);
      rows.push_back(std::move(r));
    } catch (const std::exception& e) {
      rows.push_back(error_row(entry.id, m, e.what()));
    }
  }
  return rows;
}

std::optional<double> mean_of(const std::vector<const MethodReport*>& rows,
                              std::optional<double> MethodReport::*field) {
  double sum = 0.0;
  std::size_t n = 0;
  for (const auto* r : rows) {
    if (!(r->*field)) continue;
    sum += *(r->*field);
    ++n;
  }
  if (n == 0) return std::nullopt;
  return sum / static_cast<double>(n);
}

}  // namespace

std::vector<MethodReport> run_bench(const Manifest& manifest) {
  const std::size_t n = manifest.entries.size();
  std::vector<std::vector<MethodReport>> per_entry(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) per_entry[i] = evaluate_entry(manifest.entries[i], manifest.methods);
  };
  const auto workers = static_cast<std::size_t>(std::clamp<std::size_t>(manifest.workers, 1, std::max<std::size_t>(n, 1)));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
  }

  std::vector<MethodReport> rows;
  for (auto& v : per_entry)
    for (auto& r : v) rows.push_back(std::move(r));
  std::stable_sort(rows.begin(), rows.end(), [](const MethodReport& a, const MethodReport& b) {
    return std::tie(a.image_id, a.method) < std::tie(b.image_id, b.method);
  });

  std::vector<Method> methods = manifest.methods;
  std::sort(methods.begin(), methods.end(), [](Method a, Method b) { return to_string(a) < to_string(b); });
  for (auto m : methods) {
    std::vector<const MethodReport*> group;
    for (const auto& r : rows)
      if (r.method == to_string(m) && !r.error) group.push_back(&r);
    MethodReport mean;
    mean.image_id = std::string(kMeanRowId);
    mean.method = std::string(to_string(m));
    for (auto field : {&MethodReport::sensitivity, &MethodReport::specificity, &MethodReport::precision,
                       &MethodReport::fscore, &MethodReport::pixel_accuracy, &MethodReport::area_accuracy,
                       &MethodReport::area_pred, &MethodReport::area_gt, &MethodReport::runtime_ms}) {
      mean.*field = mean_of(group, field);
    }
    rows.push_back(std::move(mean));
  }
  return rows;
}

namespace {

std::string csv_text(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string csv_num(const std::optional<double>& v) { return v ? format_number(*v) : std::string(); }

std::string csv_count(const std::optional<ConfusionCounts>& c, std::uint64_t ConfusionCounts::*f) {
  return c ? std::to_string((*c).*f) : std::string();
}

}  // namespace

std::string report_csv(const std::vector<MethodReport>& reports) {
  std::string out(kReportHeader);
  out += '\n';
  for (const auto& r : reports) {
    out += csv_text(r.image_id) + ',' + csv_text(r.method) + ',' + csv_count(r.counts, &ConfusionCounts::tp) + ',' +
           csv_count(r.counts, &ConfusionCounts::fp) + ',' + csv_count(r.counts, &ConfusionCounts::tn) + ',' +
           csv_count(r.counts, &ConfusionCounts::fn) + ',' + csv_num(r.sensitivity) + ',' + csv_num(r.specificity) +
           ',' + csv_num(r.precision) + ',' + csv_num(r.fscore) + ',' + csv_num(r.pixel_accuracy) + ',' +
           csv_num(r.area_accuracy) + ',' + csv_num(r.area_pred) + ',' + csv_num(r.area_gt) + ',' +
           csv_num(r.runtime_ms) + '\n';
  }
  return out;
}

std::string report_json(const std::vector<MethodReport>& reports) {
  auto rows = nlohmann::ordered_json::array();
  auto num = [](const std::optional<double>& v) {
    return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
  };
  auto count = [](const std::optional<ConfusionCounts>& c, std::uint64_t ConfusionCounts::*f) {
    return c ? nlohmann::ordered_json((*c).*f) : nlohmann::ordered_json(nullptr);
  };
  for (const auto& r : reports) {
    nlohmann::ordered_json j;
    j["image_id"] = r.image_id;
    j["method"] = r.method;
    j["tp"] = count(r.counts, &ConfusionCounts::tp);
    j["fp"] = count(r.counts, &ConfusionCounts::fp);
    j["tn"] = count(r.counts, &ConfusionCounts::tn);
    j["fn"] = count(r.counts, &ConfusionCounts::fn);
    j["sensitivity"] = num(r.sensitivity);
    j["specificity"] = num(r.specificity);
    j["precision"] = num(r.precision);
    j["fscore"] = num(r.fscore);
    j["pixel_accuracy"] = num(r.pixel_accuracy);
    j["area_accuracy"] = num(r.area_accuracy);
    j["area_pred"] = num(r.area_pred);
    j["area_gt"] = num(r.area_gt);
    j["runtime_ms"] = num(r.runtime_ms);
    j["error"] = r.error ? nlohmann::ordered_json(*r.error) : nlohmann::ordered_json(nullptr);
    rows.push_back(std::move(j));
  }
  return rows.dump(2) + "\n";
}

void write_report(const std::vector<MethodReport>& reports, const std::filesystem::path& output_dir) {
  std::error_code ec;
  std::filesystem::create_directories(output_dir / "masks", ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot create " + (output_dir / "masks").string() + ": " + ec.message());

  auto write_text = [](const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::kIo, "cannot open for writing " + path.string());
    out << text;
    if (!out) throw Error(ErrorCode::kIo, "write failed " + path.string());
  };
  write_text(output_dir / "report.csv", report_csv(reports));
  write_text(output_dir / "report.json", report_json(reports));
  for (const auto& r : reports) {
    if (r.mask) save_mask(*r.mask, output_dir / "masks" / (r.image_id + "__" + r.method + ".pgm"));
  }
}

}  // namespace tumorseg
