#include "tumorseg/fcm.hpp"

#include <algorithm>
#include <cmath>

namespace tumorseg {

namespace {
// Memberships are compared against 0.5 with this much give, so centres that
// settle a hair off an exact crossover do not shift the threshold by a level.
constexpr double kCrossoverSlack = 1e-6;
}  // namespace

void FcmParams::validate() const {
  if (!(tau > 1.0)) throw Error(ErrorCode::kInvalidArgument, "fcm: tau must be greater than 1");
  if (max_iters < 1) throw Error(ErrorCode::kInvalidArgument, "fcm: max_iters must be positive");
  if (!(tol >= 0.0)) throw Error(ErrorCode::kInvalidArgument, "fcm: tol must be non-negative");
}

Membership fcm_membership(double j, double v_low, double v_high, double tau) {
  const double d_low = std::abs(j - v_low);
  const double d_high = std::abs(j - v_high);
  if (d_low == 0.0) return {1.0, 0.0};
  if (d_high == 0.0) return {0.0, 1.0};
  const double p = 2.0 / (tau - 1.0);
  if (d_low <= d_high) {
    const double low = 1.0 / (1.0 + std::pow(d_low / d_high, p));
    return {low, 1.0 - low};
  }
  const double high = 1.0 / (1.0 + std::pow(d_high / d_low, p));
  return {1.0 - high, high};
}

double fcm_objective(const Histogram& hist, const std::array<Membership, kGrayLevels>& mu, double v_low,
                     double v_high, double tau) {
  // Extended precision: J grows with the pixel count, and successive values
  // near convergence differ by far less than a double ulp of J.
  long double j_total = 0.0L;
  const long double t = tau;
  for (int j = 0; j < kGrayLevels; ++j) {
    if (hist[j] == 0) continue;
    const long double dl = j - static_cast<long double>(v_low);
    const long double dh = j - static_cast<long double>(v_high);
    const long double h = static_cast<long double>(hist[j]);
    j_total += h * (std::pow(static_cast<long double>(mu[j].low), t) * dl * dl +
                    std::pow(static_cast<long double>(mu[j].high), t) * dh * dh);
  }
  return static_cast<double>(j_total);
}

namespace {

void fill_memberships(std::array<Membership, kGrayLevels>& mu, double v_low, double v_high, double tau) {
  for (int j = 0; j < kGrayLevels; ++j) mu[j] = fcm_membership(j, v_low, v_high, tau);
}

}  // namespace

FcmState fcm_fit(const Histogram& hist, const FcmParams& params) {
  params.validate();
  if (hist.occupied_levels() < 2)
    throw Error(ErrorCode::kDegenerateHistogram, "fcm: histogram needs at least two occupied levels");

  FcmState st;
  st.tau = params.tau;
  st.v_high = hist.max_level();
  st.v_low = initial_threshold(hist).level();
  st.center_trace.emplace_back(st.v_low, st.v_high);

  std::array<Membership, kGrayLevels> mu{};
  for (int it = 0; it < params.max_iters; ++it) {
    fill_memberships(mu, st.v_low, st.v_high, params.tau);

    double num_low = 0.0, den_low = 0.0, num_high = 0.0, den_high = 0.0;
    for (int j = 0; j < kGrayLevels; ++j) {
      if (hist[j] == 0) continue;
      const double h = static_cast<double>(hist[j]);
      const double wl = h * std::pow(mu[j].low, params.tau);
      const double wh = h * std::pow(mu[j].high, params.tau);
      num_low += wl * j;
      den_low += wl;
      num_high += wh * j;
      den_high += wh;
    }
    double next_low = den_low > 0.0 ? num_low / den_low : st.v_low;
    double next_high = den_high > 0.0 ? num_high / den_high : st.v_high;
    if (next_low > next_high) {
      std::swap(next_low, next_high);
      for (auto& m : mu) std::swap(m.low, m.high);
    }

    const double shift = std::max(std::abs(next_low - st.v_low), std::abs(next_high - st.v_high));
    st.v_low = next_low;
    st.v_high = next_high;
    st.iterations = it + 1;
    st.center_trace.emplace_back(st.v_low, st.v_high);
    st.objective_trace.push_back(fcm_objective(hist, mu, st.v_low, st.v_high, params.tau));
    if (shift < params.tol) {
      st.converged = true;
      break;
    }
  }
  fill_memberships(st.memberships, st.v_low, st.v_high, params.tau);
  return st;
}

ThresholdValue fcm_threshold(const FcmState& state) {
  for (int t = 0; t < kGrayLevels; ++t)
    if (state.memberships[t].high >= 0.5 - kCrossoverSlack) return ThresholdValue(t);
  return ThresholdValue(255);
}

BinaryMask fcm_pipeline(const GrayImage& img, const FcmParams& params, const StructuringElement& se,
                        bool keep_all_components) {
  const FcmState st = fcm_fit(histogram(img), params);
  const BinaryMask cleaned = open_close_cleanup(apply_threshold(img, fcm_threshold(st)), se);
  return keep_all_components ? cleaned : largest_component(cleaned);
}

}  // namespace tumorseg
