// Acceptance gate. Runs each numbered criterion at its stated tolerance and
// time budget, prints one PASS/FAIL line per criterion, and exits non-zero if
// any fails.
//
// usage: tumorseg_acceptance [path-to-tumorseg-cli]

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <unistd.h>

#include "../support/generators.hpp"
#include "../support/oracles.hpp"
#include "../support/phantom_suite.hpp"
#include "tumorseg/bench.hpp"
#include "tumorseg/json_io.hpp"

using namespace tumorseg;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(double v, int prec = 4) {
  std::ostringstream os;
  os.precision(prec);
  os << std::fixed << v;
  return os.str();
}

// Runs `body`, enforces the time budget (<= 0 means none) and prints the line.
bool criterion(int number, const std::string& title, double budget_s, const std::function<Outcome()>& body) {
  const auto t0 = Clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out.ok = false;
    out.detail = std::string("exception: ") + e.what();
  }
  const double took = seconds_since(t0);
  if (budget_s > 0 && took >= budget_s) out.require(false, "took " + fmt(took, 2) + " s, budget " + fmt(budget_s, 0) + " s");
  std::cout << (out.ok ? "[PASS] " : "[FAIL] ") << number << ". " << title << " (" << fmt(took, 3) << " s)";
  if (!out.detail.empty()) std::cout << ": " << out.detail;
  std::cout << std::endl;
  return out.ok;
}

double fscore_of(const BinaryMask& truth, const BinaryMask& pred) {
  const auto f = metric_set(confusion(truth, pred)).fscore;
  return f ? *f : 0.0;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Drops the trailing runtime_ms field of every CSV line. Error messages are
// the only quoted fields and never end a line, so the last comma is safe.
std::string strip_runtime(const std::string& csv) {
  std::stringstream in(csv);
  std::string line, out;
  while (std::getline(in, line)) out += line.substr(0, line.rfind(',')) + '\n';
  return out;
}

std::string quote(const fs::path& p) { return "'" + p.string() + "'"; }

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "";
  bool all = true;

  all &= criterion(1, "Otsu equals exhaustive 256-split search on 100 random histograms", 1.0, [] {
    Outcome o;
    std::mt19937 rng(2024);
    for (int i = 0; i < 100; ++i) {
      const Histogram h = gen::random_histogram(rng);
      const int got = otsu_threshold(h).level(), want = oracle::otsu_exhaustive(h);
      o.require(got == want, "histogram " + std::to_string(i) + ": " + std::to_string(got) + " vs " + std::to_string(want));
    }
    return o;
  });

  all &= criterion(2, "Region growing equals flood fill on 50 plateau images", 5.0, [] {
    Outcome o;
    std::mt19937 rng(4242);
    for (int i = 0; i < 50; ++i) {
      const int stop = gen::uniform(rng, 0, 40);
      const GrayImage img = gen::plateau_image(rng, gen::uniform(rng, 8, 48), gen::uniform(rng, 8, 48),
                                               gen::uniform(rng, 2, 16), gen::uniform(rng, 0, 5), stop + 1);
      const Seed s{gen::uniform(rng, 0, img.width() - 1), gen::uniform(rng, 0, img.height() - 1), 1};
      o.require(grow_single(img, s, static_cast<double>(stop)) == oracle::flood_fill(img, s.x, s.y, stop),
                "image " + std::to_string(i) + " differs");
    }
    return o;
  });

  all &= criterion(3, "Erosion/dilation duality and opening/closing idempotence on 100 masks", 5.0, [] {
    Outcome o;
    std::mt19937 rng(777);
    const StructuringElement ses[] = {StructuringElement::square(3), StructuringElement::square(5),
                                      StructuringElement::cross(3), StructuringElement::cross(5)};
    for (int i = 0; i < 100; ++i) {
      const int w = gen::uniform(rng, 4, 40), h = gen::uniform(rng, 4, 40);
      const BinaryMask m = gen::random_mask(rng, w, h, gen::uniform(rng, 2, 8) / 10.0);
      for (const auto& se : ses) {
        const int r = std::max(se.radius_x(), se.radius_y());
        const BinaryMask er = erode(m, se);
        const BinaryMask dual = complement(dilate(complement(m), se.reflect()));
        bool interior = true;
        for (int y = r; y < h - r; ++y)
          for (int x = r; x < w - r; ++x) interior &= er(x, y) == dual(x, y);
        o.require(interior, "interior duality, mask " + std::to_string(i));
        const BinaryMask padded = complement(dilate(complement(oracle::pad(m, r, 0)), se.reflect()));
        o.require(er == oracle::crop(padded, r, w, h), "padded duality, mask " + std::to_string(i));
        const BinaryMask op = opening(m, se), cl = closing(m, se);
        o.require(opening(op, se) == op, "opening idempotence, mask " + std::to_string(i));
        o.require(closing(cl, se) == cl, "closing idempotence, mask " + std::to_string(i));
      }
    }
    return o;
  });

  all &= criterion(4, "FCM objective descent on 50 histograms; two spikes at 50/200 converge, crossover 125", 2.0, [] {
    Outcome o;
    std::mt19937 rng(31337);
    for (int i = 0; i < 50; ++i) {
      const FcmState s = fcm_fit(gen::random_histogram_2plus(rng));
      for (std::size_t k = 1; k < s.objective_trace.size(); ++k)
        o.require(s.objective_trace[k] <= s.objective_trace[k - 1] + 1e-9,
                  "J rose at iteration " + std::to_string(k) + " of histogram " + std::to_string(i));
    }
    Histogram h;
    h.add(50, 100);
    h.add(200, 100);
    const FcmState s = fcm_fit(h, FcmParams{2.0, 100, 1e-6});
    o.require(std::abs(s.v_low - 50) <= 1e-4 && std::abs(s.v_high - 200) <= 1e-4,
              "centres " + fmt(s.v_low, 6) + ", " + fmt(s.v_high, 6));
    o.require(fcm_threshold(s).level() == 125, "crossover " + std::to_string(fcm_threshold(s).level()));
    return o;
  });

  all &= criterion(5, "Count conservation on 100 mask pairs; 80/20/20/880 hand example", 0, [] {
    Outcome o;
    std::mt19937 rng(55);
    for (int i = 0; i < 100; ++i) {
      const int w = gen::uniform(rng, 1, 64), h = gen::uniform(rng, 1, 64);
      const BinaryMask gt = gen::random_mask(rng, w, h, gen::uniform(rng, 0, 10) / 10.0);
      const BinaryMask pred = gen::random_mask(rng, w, h, gen::uniform(rng, 0, 10) / 10.0);
      const ConfusionCounts c = confusion(gt, pred);
      const auto fg = count_foreground(gt);
      o.require(c.tp + c.fn == fg && c.tn + c.fp == gt.size() - fg && c.total() == gt.size(),
                "pair " + std::to_string(i));
    }
    BinaryMask gt(1000, 1, 0), pred(1000, 1, 0);
    for (int x = 0; x < 100; ++x) gt.set(x, 0, 1);
    for (int x = 20; x < 120; ++x) pred.set(x, 0, 1);
    const ConfusionCounts c = confusion(gt, pred);
    o.require(c == ConfusionCounts{80, 20, 880, 20}, "hand counts");
    const MetricSet m = metric_set(c);
    o.require(std::abs(*m.sensitivity - 0.8) <= 1e-9, "sensitivity " + fmt(*m.sensitivity, 12));
    o.require(std::abs(*m.specificity - 880.0 / 900.0) <= 1e-9, "specificity " + fmt(*m.specificity, 12));
    o.require(std::abs(*m.precision - 0.8) <= 1e-9, "precision " + fmt(*m.precision, 12));
    o.require(std::abs(*m.fscore - 0.8) <= 1e-9, "fscore " + fmt(*m.fscore, 12));
    return o;
  });

  all &= criterion(6, "Area of 250 px in 100x100 is 0.025; component areas sum to the total", 0, [] {
    Outcome o;
    BinaryMask m(100, 100, 0);
    for (int i = 0; i < 250; ++i) m.set(static_cast<std::size_t>(i) * 40, 1);
    const AreaResult a = tumor_area(m);
    o.require(a.area == 0.025, "area " + fmt(a.area, 17));
    o.require(a.white_pixels == 250, "white pixels");
    std::mt19937 rng(66);
    for (int i = 0; i < 20; ++i) {
      PhantomSpec s;
      const int r1 = gen::uniform(rng, 3, 10), r2 = gen::uniform(rng, 3, 10);
      s.disks = {Disk{gen::uniform(rng, r1, 28 - r1), gen::uniform(rng, r1, 63 - r1), r1, {}},
                 Disk{gen::uniform(rng, 35 + r2, 63 - r2), gen::uniform(rng, r2, 63 - r2), r2, {}}};
      const AreaResult two = tumor_area(gen_phantom(s).truth, true);
      o.require(two.per_component_areas.size() == 2, "phantom " + std::to_string(i) + " component count");
      double sum = 0.0;
      for (double v : two.per_component_areas) sum += v;
      o.require(sum == two.area, "phantom " + std::to_string(i) + " sum " + fmt(sum, 17) + " vs " + fmt(two.area, 17));
    }
    return o;
  });

  // Criteria 7 and 8 share one harness run over the phantom suite.
  std::vector<MethodReport> suite_rows;
  all &= criterion(7, "Every pipeline reaches F >= 0.90 on each of the 10 phantoms", 30.0, [&] {
    Outcome o;
    suite_rows = run_bench(suite::manifest());
    std::size_t scored = 0;
    for (const auto& r : suite_rows) {
      if (r.image_id == kMeanRowId) continue;
      ++scored;
      o.require(!r.error, r.image_id + "/" + r.method + " failed: " + r.error.value_or(""));
      o.require(r.fscore && *r.fscore >= 0.90,
                r.image_id + "/" + r.method + " F = " + (r.fscore ? fmt(*r.fscore) : std::string("null")));
      if (!r.mask || !r.fscore) continue;
      // Recount against a freshly generated truth mask, independent of the harness.
      const int idx = std::stoi(r.image_id.substr(std::string("phantom").size()));
      const BinaryMask truth = gen_phantom(suite::spec(idx)).truth;
      std::uint64_t tp = 0, fp = 0, fn = 0;
      for (std::size_t p = 0; p < truth.size(); ++p) {
        tp += truth[p] && (*r.mask)[p];
        fp += !truth[p] && (*r.mask)[p];
        fn += truth[p] && !(*r.mask)[p];
      }
      const double f = 2.0 * static_cast<double>(tp) / static_cast<double>(2 * tp + fp + fn);
      o.require(std::abs(f - *r.fscore) <= 1e-12, r.image_id + "/" + r.method + " recount F = " + fmt(f));
    }
    o.require(scored == suite::kSize * std::size(kAllMethods), "row count " + std::to_string(scored));
    std::string means;
    for (const auto& r : suite_rows)
      if (r.image_id == kMeanRowId) means += (means.empty() ? "" : ", ") + r.method + " " + fmt(r.fscore.value_or(0));
    if (o.ok) o.detail = "mean F: " + means;
    return o;
  });

  all &= criterion(8, "Region growing has the highest mean F-score on the phantom suite", 0, [&] {
    Outcome o;
    std::map<std::string, double> mean;
    for (const auto& r : suite_rows)
      if (r.image_id == kMeanRowId && r.fscore) mean[r.method] = *r.fscore;
    o.require(mean.size() == std::size(kAllMethods), "missing mean rows");
    const double srg = mean["srg"];
    for (const auto& [method, f] : mean) o.require(srg >= f, "srg " + fmt(srg) + " < " + method + " " + fmt(f));
    if (o.ok) o.detail = "srg " + fmt(srg);
    return o;
  });

  all &= criterion(9, "Global thresholding at level 0 scores F < 0.5 on every phantom", 0, [] {
    Outcome o;
    const auto se = StructuringElement::square(3);
    const std::vector<ThresholdValue> zero{ThresholdValue(0)};
    double worst = 0.0;
    for (int i = 0; i < suite::kSize; ++i) {
      const Phantom ph = gen_phantom(suite::spec(i));
      for (bool refine : {true, false}) {
        const double f = fscore_of(ph.truth, global_threshold_pipeline(ph.image, zero, se, {refine, kDefaultStopDelta}));
        worst = std::max(worst, f);
        o.require(f < 0.5, suite::id(i) + (refine ? " refined" : " unrefined") + " F = " + fmt(f));
      }
    }
    if (o.ok) o.detail = "highest F " + fmt(worst);
    return o;
  });

  all &= criterion(10, "Repeated bench runs give identical report.csv apart from runtime_ms", 0, [&] {
    Outcome o;
    const fs::path dir = fs::temp_directory_path() / ("tumorseg_acceptance_" + std::to_string(::getpid()));
    fs::remove_all(dir);
    fs::create_directories(dir);

    nlohmann::ordered_json spec;
    spec["phantoms"] = nlohmann::ordered_json::array();
    for (int i = 0; i < suite::kSize; ++i) {
      nlohmann::ordered_json p;
      p["id"] = suite::id(i);
      const nlohmann::ordered_json fields = phantom_spec_to_json(suite::spec(i));
      for (const auto& [k, v] : fields.items()) p[k] = v;
      spec["phantoms"].push_back(p);
    }
    std::ofstream(dir / "spec.json") << spec.dump(2);

    std::vector<std::string> reports;
    if (!cli.empty()) {
      const std::string base = quote(cli);
      const int rc = std::system((base + " phantom --spec " + quote(dir / "spec.json") + " --out " +
                                  quote(dir / "data") + " > /dev/null")
                                     .c_str());
      o.require(rc == 0, "phantom subcommand failed");
      for (int run = 0; run < 2 && o.ok; ++run) {
        const fs::path out = dir / ("run" + std::to_string(run));
        const std::string workers = run == 0 ? "1" : "3";
        const int brc = std::system((base + " bench --manifest " + quote(dir / "data" / "manifest.json") +
                                     " --out " + quote(out) + " --workers " + workers + " > /dev/null")
                                        .c_str());
        o.require(brc == 0, "bench subcommand failed");
        reports.push_back(read_file(out / "report.csv"));
      }
    } else {
      for (int run = 0; run < 2; ++run) {
        Manifest m = suite::manifest();
        m.workers = run == 0 ? 1 : 3;
        reports.push_back(report_csv(run_bench(m)));
      }
    }
    o.require(reports.size() == 2, "missing report");
    if (o.ok) {
      o.require(reports[0].rfind(std::string(kReportHeader) + "\n", 0) == 0, "header mismatch");
      o.require(strip_runtime(reports[0]) == strip_runtime(reports[1]), "reports differ");
      o.require(reports[0].size() > std::string(kReportHeader).size() + 100, "report unexpectedly short");
      if (o.ok) o.detail = cli.empty() ? "library runs" : "CLI runs with 1 and 3 workers";
    }
    fs::remove_all(dir);
    return o;
  });

  std::cout << (all ? "ALL CRITERIA PASS" : "SOME CRITERIA FAIL") << std::endl;
  return all ? 0 : 1;
}
