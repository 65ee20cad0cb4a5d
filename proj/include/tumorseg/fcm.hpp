#pragma once

#include <array>
#include <vector>

#include "tumorseg/morphology.hpp"
#include "tumorseg/raster.hpp"
#include "tumorseg/threshold.hpp"

namespace tumorseg {

struct FcmParams {
  /// Fuzzifier, must exceed 1.
  double tau = 2.0;
  int max_iters = 100;
  /// Convergence tolerance on the largest centre movement.
  double tol = 1e-6;

  void validate() const;
};

/// Memberships of one gray level in the dark (low) and bright (high) cluster.
struct Membership {
  double low = 0.0;
  double high = 0.0;
};

struct FcmState {
  double tau = 2.0;
  /// Cluster centres, low <= high.
  double v_low = 0.0;
  double v_high = 0.0;
  /// Memberships at the final centres for every gray level.
  std::array<Membership, kGrayLevels> memberships{};
  int iterations = 0;
  bool converged = false;
  /// Objective after each iteration; back() is the final value.
  std::vector<double> objective_trace;
  /// Centres after each iteration, starting with the initial guess.
  std::vector<std::pair<double, double>> center_trace;

  double objective() const { return objective_trace.empty() ? 0.0 : objective_trace.back(); }
};

/// Two-cluster membership of gray level `j` given the centres, with
/// d(j, v) = |j - v|. A level sitting exactly on a centre belongs to it fully.
/// The larger membership is computed directly and the smaller as its
/// complement, so low + high == 1 holds exactly.
Membership fcm_membership(double j, double v_low, double v_high, double tau);

/// Weighted fuzzy objective sum_j h_j sum_i mu_i(j)^tau d(j, v_i)^2.
double fcm_objective(const Histogram& hist, const std::array<Membership, kGrayLevels>& mu, double v_low,
                     double v_high, double tau);

/// Alternating membership/centre updates on the gray-level histogram. The
/// bright centre starts at the highest occupied level and the dark centre at
/// half of it (the max/2 initial threshold).
///
/// Throws kDegenerateHistogram when fewer than two levels are occupied and
/// kInvalidArgument for bad parameters.
FcmState fcm_fit(const Histogram& hist, const FcmParams& params = {});

/// Smallest level whose bright-cluster membership reaches one half.
ThresholdValue fcm_threshold(const FcmState& state);

/// histogram -> fit -> crossover threshold -> cleanup -> largest component.
BinaryMask fcm_pipeline(const GrayImage& img, const FcmParams& params, const StructuringElement& se,
                        bool keep_all_components = false);

}  // namespace tumorseg
