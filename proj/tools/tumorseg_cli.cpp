// Command-line front end: segment, bench, metrics, phantom.

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "tumorseg/bench.hpp"
#include "tumorseg/json_io.hpp"

namespace fs = std::filesystem;
using namespace tumorseg;

namespace {

Seed parse_seed(const std::string& text) {
  std::stringstream ss(text);
  std::string part;
  std::vector<int> v;
  while (std::getline(ss, part, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stoi(part, &used));
      if (used != part.size()) throw std::invalid_argument(part);
    } catch (const std::exception&) {
      throw Error(ErrorCode::kInvalidArgument, "seed '" + text + "' must be x,y or x,y,id");
    }
  }
  if (v.size() < 2 || v.size() > 3) throw Error(ErrorCode::kInvalidArgument, "seed '" + text + "' must be x,y or x,y,id");
  return Seed{v[0], v[1], v.size() == 3 ? v[2] : 1};
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kMissingFile, "cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void make_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot create " + dir.string() + ": " + ec.message());
}

struct SegmentArgs {
  std::string image;
  std::string method;
  std::vector<std::string> seeds;
  std::vector<int> thresholds;
  double tau = 2.0;
  int se = 3;
  double stop_delta = kDefaultStopDelta;
  bool full_partition = false;
  bool no_refine = false;
  std::string gt;
  std::string out;
};

int run_segment(const SegmentArgs& a) {
  ManifestEntry entry;
  entry.image_path = a.image;
  entry.id = fs::path(a.image).stem().string();
  for (const auto& s : a.seeds) entry.seeds.push_back(parse_seed(s));
  for (int t : a.thresholds) entry.thresholds.emplace_back(t);
  entry.fcm.tau = a.tau;
  entry.fcm.validate();
  entry.se_size = a.se;
  StructuringElement::square(a.se);
  entry.stop_delta = a.full_partition ? StopDelta{} : StopDelta{a.stop_delta};
  entry.srg_refine = !a.no_refine;

  const Method method = parse_method(a.method);
  if (method == Method::kSrg && entry.seeds.empty())
    throw Error(ErrorCode::kNoSeeds, "srg needs at least one --seed");

  const GrayImage img = load_image(entry.image_path);
  const MethodRun run = run_method(entry, img, method);
  make_dir(a.out);
  const fs::path mask_path = fs::path(a.out) / (entry.id + "__" + std::string(to_string(method)) + ".pgm");
  save_mask(run.mask, mask_path);

  nlohmann::ordered_json summary;
  summary["image"] = a.image;
  summary["method"] = to_string(method);
  summary["mask"] = mask_path.string();
  summary["runtime_ms"] = run.runtime_ms;
  summary["area"] = to_json(tumor_area(run.mask, true));
  if (!a.gt.empty()) {
    const BinaryMask truth = load_mask(a.gt);
    const ConfusionCounts c = confusion(truth, run.mask);
    summary["counts"] = to_json(c);
    summary["metrics"] = to_json(metric_set(c));
  }
  std::cout << summary.dump(2) << "\n";
  return 0;
}

int run_bench_cmd(const std::string& manifest_path, const std::string& out, int workers) {
  Manifest m = load_manifest(manifest_path);
  if (!out.empty()) m.output_dir = out;
  if (m.output_dir.empty()) throw Error(ErrorCode::kManifest, "no output directory (use --out)");
  if (workers > 0) m.workers = workers;
  const auto rows = run_bench(m);
  write_report(rows, m.output_dir);
  std::size_t errors = 0;
  for (const auto& r : rows) {
    if (!r.error) continue;
    ++errors;
    std::cerr << "error: " << *r.error << "\n";
  }
  std::cout << "wrote " << (m.output_dir / "report.csv").string() << " (" << rows.size() << " rows, " << errors
            << " errors)\n";
  return 0;
}

int run_metrics(const std::string& gt_path, const std::string& pred_path) {
  const BinaryMask gt = load_mask(gt_path);
  const BinaryMask pred = load_mask(pred_path);
  const ConfusionCounts c = confusion(gt, pred);
  const AreaResult gt_area = tumor_area(gt, true);
  const AreaResult pred_area = tumor_area(pred, true);
  nlohmann::ordered_json j;
  j["counts"] = to_json(c);
  j["metrics"] = to_json(metric_set(c));
  j["area_gt"] = to_json(gt_area);
  j["area_pred"] = to_json(pred_area);
  j["area_accuracy"] = gt_area.area > 0.0 ? nlohmann::ordered_json(area_accuracy(pred_area, gt_area))
                                          : nlohmann::ordered_json(nullptr);
  std::cout << j.dump(2) << "\n";
  return 0;
}

// Accepts either one phantom object or {"phantoms": [...]}. Writes
// <id>.pgm, <id>_truth.pgm and a manifest.json that benches all methods with
// a seed at every disk centre.
int run_phantom(const std::string& spec_path, const std::string& out) {
  nlohmann::json spec_json;
  try {
    spec_json = nlohmann::json::parse(read_text(spec_path));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kManifest, std::string("phantom spec: invalid JSON: ") + e.what());
  }
  std::vector<nlohmann::json> items;
  if (spec_json.contains("phantoms")) {
    for (const auto& p : spec_json.at("phantoms")) items.push_back(p);
  } else {
    items.push_back(spec_json);
  }
  make_dir(out);

  auto entries = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < items.size(); ++i) {
    const PhantomSpec spec = phantom_spec_from_json(items[i]);
    const std::string id = items[i].value("id", "phantom" + std::to_string(i));
    const Phantom ph = gen_phantom(spec);
    save_image(ph.image, fs::path(out) / (id + ".pgm"));
    save_mask(ph.truth, fs::path(out) / (id + "_truth.pgm"));

    nlohmann::ordered_json e;
    e["id"] = id;
    e["image_path"] = id + ".pgm";
    e["ground_truth_path"] = id + "_truth.pgm";
    auto seeds = nlohmann::ordered_json::array();
    int region = 1;
    for (const auto& d : spec.disks) seeds.push_back({d.cx, d.cy, region++});
    e["seeds"] = seeds;
    e["thresholds"] = items[i].value("thresholds", std::vector<int>{});
    e["se_size"] = 3;
    entries.push_back(e);
  }
  nlohmann::ordered_json manifest;
  auto methods = nlohmann::ordered_json::array();
  for (auto m : kAllMethods) methods.push_back(to_string(m));
  manifest["methods"] = methods;
  manifest["entries"] = entries;
  std::ofstream mf(fs::path(out) / "manifest.json");
  if (!mf) throw Error(ErrorCode::kIo, "cannot write manifest.json");
  mf << manifest.dump(2) << "\n";
  std::cout << "wrote " << items.size() << " phantom(s) and manifest.json to " << out << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Threshold-based tumor segmentation toolkit and benchmark harness"};
  app.require_subcommand(1);

  SegmentArgs seg;
  auto* segment = app.add_subcommand("segment", "Segment one image with one method");
  segment->add_option("--image", seg.image, "Input image (PGM or PNG)")->required();
  segment->add_option("--method", seg.method, "srg | global_threshold | watershed | fcm | histogram_symmetry")
      ->required();
  segment->add_option("--seed", seg.seeds, "Seed x,y[,region_id] (repeatable)");
  segment->add_option("--threshold", seg.thresholds, "Threshold level (repeatable; >1 = multi-threshold mode)")
      ->check(CLI::Range(0, 255));
  segment->add_option("--tau", seg.tau, "FCM fuzzifier (> 1)");
  segment->add_option("--se", seg.se, "Square structuring element size (odd)");
  segment->add_option("--stop-delta", seg.stop_delta, "Region growing tolerance")->check(CLI::Range(0.0, 255.0));
  segment->add_flag("--full-partition", seg.full_partition, "Grow until every pixel is assigned");
  segment->add_flag("--no-refine", seg.no_refine, "Skip region-growing refinement in global_threshold");
  segment->add_option("--gt", seg.gt, "Optional ground-truth mask for metrics");
  segment->add_option("--out", seg.out, "Output directory")->required();

  std::string manifest, bench_out;
  int workers = 0;
  auto* bench = app.add_subcommand("bench", "Run every method on a manifest and write reports");
  bench->add_option("--manifest", manifest, "Manifest JSON")->required();
  bench->add_option("--out", bench_out, "Output directory (overrides the manifest)");
  bench->add_option("--workers", workers, "Concurrent entries")->check(CLI::PositiveNumber);

  std::string gt, pred;
  auto* metrics = app.add_subcommand("metrics", "Compare a predicted mask with ground truth");
  metrics->add_option("--gt", gt, "Ground-truth mask")->required();
  metrics->add_option("--pred", pred, "Predicted mask")->required();

  std::string spec, phantom_out;
  auto* phantom = app.add_subcommand("phantom", "Generate synthetic phantoms and a bench manifest");
  phantom->add_option("--spec", spec, "Phantom spec JSON")->required();
  phantom->add_option("--out", phantom_out, "Output directory")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (segment->parsed()) return run_segment(seg);
    if (bench->parsed()) return run_bench_cmd(manifest, bench_out, workers);
    if (metrics->parsed()) return run_metrics(gt, pred);
    if (phantom->parsed()) return run_phantom(spec, phantom_out);
  } catch (const Error& e) {
    std::cerr << "error (" << to_string(e.code()) << "): " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
