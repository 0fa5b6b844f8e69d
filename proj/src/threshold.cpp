#include "aklt/threshold.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "aklt/rng.hpp"

namespace aklt {

std::string_view to_string(ThresholdStatus status) {
  switch (status) {
    case ThresholdStatus::crossing: return "crossing";
    case ThresholdStatus::below_resolution: return "below_resolution";
    case ThresholdStatus::no_crossing: return "no_crossing";
  }
  return "?";
}

namespace {

using Curve = std::vector<double>;

std::optional<double> crossing_of(std::span<const double> grid, const Curve& small, const Curve& large) {
  std::optional<std::size_t> last_positive;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double d = large[i] - small[i];
    if (d > 0) {
      last_positive = i;
    } else if (d < 0 && last_positive) {
      const std::size_t a = *last_positive;
      const double da = large[a] - small[a];
      return grid[a] + da / (da - d) * (grid[i] - grid[a]);
    }
  }
  return std::nullopt;
}

struct PairAverage {
  std::vector<Crossing> crossings;
  double mean = 0.0;
  double spread = 0.0;
};

std::optional<PairAverage> average_crossings(std::span<const double> grid, std::span<const int> sizes,
                                             const std::vector<Curve>& curves) {
  PairAverage out;
  for (std::size_t a = 0; a < sizes.size(); ++a)
    for (std::size_t b = a + 1; b < sizes.size(); ++b)
      if (auto p = crossing_of(grid, curves[a], curves[b])) out.crossings.push_back({sizes[a], sizes[b], *p});
  if (out.crossings.empty()) return std::nullopt;
  double lo = 1.0, hi = 0.0;
  for (const auto& c : out.crossings) {
    out.mean += c.p;
    lo = std::min(lo, c.p);
    hi = std::max(hi, c.p);
  }
  out.mean /= static_cast<double>(out.crossings.size());
  out.spread = (hi - lo) / 2.0;
  return out;
}

}  // namespace

std::optional<double> crossing_point(const PercolationResult& small, const PercolationResult& large) {
  if (small.p_grid != large.p_grid) throw std::invalid_argument("crossing_point: grids differ");
  Curve s(small.p_grid.size()), l(small.p_grid.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    s[i] = small.p_span(i);
    l[i] = large.p_span(i);
  }
  return crossing_of(small.p_grid, s, l);
}

ThresholdEstimate estimate_threshold(std::span<const PercolationResult> results, const ThresholdOptions& options) {
  if (results.size() < 2) throw std::invalid_argument("estimate_threshold: needs results for at least two sizes");
  std::vector<std::size_t> order(results.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return results[a].L < results[b].L; });
  const auto& grid = results[order[0]].p_grid;
  if (grid.size() < 2) throw std::invalid_argument("estimate_threshold: grid needs at least two points");
  for (std::size_t k = 0; k < order.size(); ++k) {
    const auto& r = results[order[k]];
    if (r.p_grid != grid) throw std::invalid_argument("estimate_threshold: p grids differ");
    if (r.scenario != results[order[0]].scenario) throw std::invalid_argument("estimate_threshold: scenarios differ");
    if (k > 0 && r.L == results[order[k - 1]].L) throw std::invalid_argument("estimate_threshold: duplicate size");
  }

  ThresholdEstimate est;
  std::vector<Curve> curves;
  for (auto i : order) {
    est.sizes.push_back(results[i].L);
    Curve c(grid.size());
    for (std::size_t j = 0; j < grid.size(); ++j) c[j] = results[i].p_span(j);
    curves.push_back(std::move(c));
  }

  const auto central = average_crossings(grid, est.sizes, curves);
  if (!central) {
    // Supercritical at the first grid point for every size while the larger
    // sizes already do worse at the second: the crossing sits inside the
    // first interval.
    bool spans = true, larger_worse = true;
    for (std::size_t k = 0; k < curves.size(); ++k) {
      spans = spans && curves[k][0] >= options.span_at_zero;
      if (k > 0) larger_worse = larger_worse && curves[k][1] < curves[k - 1][1];
    }
    if (spans && larger_worse && grid[0] == 0.0) {
      est.status = ThresholdStatus::below_resolution;
      est.p_c = grid[1];
    }
    return est;
  }

  est.status = ThresholdStatus::crossing;
  est.crossings = central->crossings;
  est.p_c = central->mean;
  est.spread = central->spread;

  if (options.bootstrap_resamples > 0) {
    Engine engine(derive_seed(options.seed, {0xb007}));
    std::vector<double> means;
    std::vector<Curve> resampled = curves;
    for (int b = 0; b < options.bootstrap_resamples; ++b) {
      for (std::size_t k = 0; k < order.size(); ++k) {
        const auto& r = results[order[k]];
        for (std::size_t j = 0; j < grid.size(); ++j) {
          std::binomial_distribution<std::int64_t> draw(r.trials, curves[k][j]);
          resampled[k][j] = r.trials ? static_cast<double>(draw(engine)) / static_cast<double>(r.trials) : 0.0;
        }
      }
      if (auto avg = average_crossings(grid, est.sizes, resampled)) means.push_back(avg->mean);
    }
    est.bootstrap_used = static_cast<int>(means.size());
    if (means.size() > 1) {
      double m = 0.0;
      for (double x : means) m += x;
      m /= static_cast<double>(means.size());
      double ss = 0.0;
      for (double x : means) ss += (x - m) * (x - m);
      est.bootstrap_sd = std::sqrt(ss / static_cast<double>(means.size() - 1));
    }
  }

  est.uncertainty = std::hypot(est.spread, est.bootstrap_sd);
  if (est.uncertainty == 0.0) est.uncertainty = (grid[1] - grid[0]) / 2.0;
  return est;
}

}  // namespace aklt
