#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tumorseg/fcm.hpp"
#include "tumorseg/metrics.hpp"
#include "tumorseg/phantom.hpp"
#include "tumorseg/pipelines.hpp"
#include "tumorseg/raster.hpp"
#include "tumorseg/srg.hpp"
#include "tumorseg/threshold.hpp"

namespace tumorseg {

// Declaration order is also report order (alphabetical by name).
enum class Method { kFcm, kGlobalThreshold, kHistogramSymmetry, kSrg, kWatershed };

inline constexpr Method kAllMethods[] = {Method::kFcm, Method::kGlobalThreshold, Method::kHistogramSymmetry,
                                         Method::kSrg, Method::kWatershed};

std::string_view to_string(Method m);
/// Throws kInvalidArgument for unknown names.
Method parse_method(std::string_view name);

struct ManifestEntry {
  std::string id;
  /// Exactly one of image_path / phantom is set.
  std::filesystem::path image_path;
  std::optional<PhantomSpec> phantom;
  std::optional<std::filesystem::path> ground_truth_path;
  std::vector<Seed> seeds;
  /// More than one level switches threshold-driven methods to
  /// multi-threshold mode (all components kept).
  std::vector<ThresholdValue> thresholds;
  FcmParams fcm;
  int se_size = 3;
  StopDelta stop_delta = kDefaultStopDelta;
  bool srg_refine = true;
};

struct Manifest {
  std::vector<ManifestEntry> entries;
  std::vector<Method> methods;
  std::filesystem::path output_dir;
  int workers = 1;
};

/// Parses manifest JSON; relative paths resolve against `base_dir`.
/// Throws kManifest with a description of the first problem found.
Manifest parse_manifest(std::string_view json_text, const std::filesystem::path& base_dir);
Manifest load_manifest(const std::filesystem::path& path);

struct LoadedEntry {
  GrayImage image;
  std::optional<BinaryMask> truth;
};

/// Reads (or generates) the entry's image and ground truth.
LoadedEntry load_entry(const ManifestEntry& entry);

struct MethodRun {
  BinaryMask mask;
  double runtime_ms;
};

/// Runs one pipeline on an already loaded image; the runtime covers the
/// pipeline call only. Pipeline errors are rethrown with the entry id and
/// method prepended.
MethodRun run_method(const ManifestEntry& entry, const GrayImage& image, Method method);

inline constexpr std::string_view kMeanRowId = "__mean__";

struct MethodReport {
  std::string image_id;
  std::string method;
  std::optional<ConfusionCounts> counts;
  std::optional<double> sensitivity;
  std::optional<double> specificity;
  std::optional<double> precision;
  std::optional<double> fscore;
  std::optional<double> pixel_accuracy;
  std::optional<double> area_accuracy;
  std::optional<double> area_pred;
  std::optional<double> area_gt;
  std::optional<double> runtime_ms;
  /// Set on rows whose entry or pipeline failed.
  std::optional<std::string> error;
  /// Predicted mask, kept in memory for write_report; absent on error and mean rows.
  std::optional<BinaryMask> mask;
};

/// One row per (entry, method), sorted by (image_id, method), followed by one
/// mean row per method. Failures become error rows; the run never aborts on
/// a single bad entry.
std::vector<MethodReport> run_bench(const Manifest& manifest);

inline constexpr std::string_view kReportHeader =
    "image_id,method,tp,fp,tn,fn,sensitivity,specificity,precision,fscore,pixel_accuracy,area_accuracy,area_pred,"
    "area_gt,runtime_ms";

std::string report_csv(const std::vector<MethodReport>& reports);
std::string report_json(const std::vector<MethodReport>& reports);

/// Writes report.csv, report.json and masks/<image_id>__<method>.pgm.
void write_report(const std::vector<MethodReport>& reports, const std::filesystem::path& output_dir);

}  // namespace tumorseg
