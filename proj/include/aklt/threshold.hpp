#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "aklt/percolation.hpp"

namespace aklt {

struct Crossing {
  int L_small = 0;
  int L_large = 0;
  double p = 0.0;
};

enum class ThresholdStatus {
  crossing,          // at least one pairwise crossing found
  below_resolution,  // every size spans at the first grid point, but larger sizes already lose at the next
  no_crossing,
};
std::string_view to_string(ThresholdStatus status);

struct ThresholdEstimate {
  ThresholdStatus status = ThresholdStatus::no_crossing;
  double p_c = 0.0;          // meaningful for `crossing`; upper bound for `below_resolution`
  double uncertainty = 0.0;  // half-spread and bootstrap sd in quadrature
  double spread = 0.0;
  double bootstrap_sd = 0.0;
  int bootstrap_used = 0;  // resamples that produced a crossing
  std::vector<Crossing> crossings;
  std::vector<int> sizes;

  bool found() const { return status == ThresholdStatus::crossing; }
};

struct ThresholdOptions {
  int bootstrap_resamples = 200;
  std::uint64_t seed = 1;
  double span_at_zero = 0.95;  // what "spans at the first grid point" means for below_resolution
};

/// Crossing of p_span(L_large) - p_span(L_small) from positive to negative,
/// scanning upward in p and skipping grid points where the curves coincide.
/// Returns nothing when the difference never changes sign that way.
std::optional<double> crossing_point(const PercolationResult& small, const PercolationResult& large);

/// Averages the pairwise crossings over all size pairs. Requires at least two
/// results with identical grids and scenarios and distinct sizes; throws
/// std::invalid_argument otherwise.
ThresholdEstimate estimate_threshold(std::span<const PercolationResult> results, const ThresholdOptions& options = {});

}  // namespace aklt
