#include "userdp/mechanism.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace userdp {

const char* outcome_name(Outcome o) {
  switch (o) {
    case Outcome::kAccepted: return "accepted";
    case Outcome::kGarbage1: return "garbage1";
    case Outcome::kGarbage2: return "garbage2";
  }
  return "unknown";
}

void MechanismParams::validate() const {
  constexpr double kThird = 1.0 / 3.0;
  if (!(eps > 0.0) || eps > 1.0) {
    throw std::invalid_argument("mechanism: eps must be in (0, 1]");
  }
  if (!(delta > 0.0) || delta >= 1.0) {
    throw std::invalid_argument("mechanism: delta must be in (0, 1)");
  }
  if (!(alpha > 0.0) || alpha > kThird) {
    throw std::invalid_argument("mechanism: alpha must be in (0, 1/3]");
  }
  if (eps < delta) {
    throw std::invalid_argument("mechanism: requires eps >= delta");
  }
  if (!(r > 0.0) || !std::isfinite(r)) {
    throw std::invalid_argument("mechanism: r must be positive and finite");
  }
  if (!(threshold_constant > 0.0)) {
    throw std::invalid_argument("mechanism: threshold_constant must be > 0");
  }
}

void MechanismParams::validate_round() const {
  // Single-round probes stay well defined outside the estimator's parameter
  // box, and the audit deliberately drives them at larger eps.
  if (!(eps > 0.0) || !std::isfinite(eps)) {
    throw std::invalid_argument("mechanism round: eps must be positive");
  }
  if (!(delta > 0.0) || delta >= 1.0) {
    throw std::invalid_argument("mechanism round: delta must be in (0, 1)");
  }
  if (!(alpha > 0.0) || alpha >= 1.0) {
    throw std::invalid_argument("mechanism round: alpha must be in (0, 1)");
  }
  if (!(r > 0.0) || !std::isfinite(r)) {
    throw std::invalid_argument("mechanism round: r must be positive and finite");
  }
}

double MechanismParams::accuracy_threshold() const {
  return threshold_constant / eps * std::log(1.0 / (alpha * eps * delta));
}

bool MechanismParams::in_accuracy_regime(std::size_t n) const {
  return static_cast<double>(n) >= accuracy_threshold();
}

double acceptance_probability(std::size_t f_count, std::size_t n, double eps) {
  if (n == 0) throw std::invalid_argument("acceptance_probability: n == 0");
  if (f_count < 1 || f_count > n) {
    throw std::invalid_argument("acceptance_probability: f must be in [1, n]");
  }
  const double fd = static_cast<double>(f_count);
  const double nd = static_cast<double>(n);
  const double two_thirds_n = 2.0 * nd / 3.0;
  const double log_p = std::log(nd / (3.0 * fd)) +
                       eps * (std::min(fd, two_thirds_n) - two_thirds_n);
  const double p = std::exp(log_p);
  return std::clamp(p, 0.0, 1.0);
}

double garbage_index_probability(std::size_t n, double eps, double delta) {
  if (n == 0) throw std::invalid_argument("garbage_index_probability: n == 0");
  if (!(delta > 0.0)) {
    throw std::invalid_argument("garbage_index_probability: delta <= 0");
  }
  // P = (4n/delta) / (n e^w + 4n/delta) = 1 / (1 + e^t), t = w + ln(delta/4).
  const double t =
      eps * 2.0 * static_cast<double>(n) / 3.0 + std::log(delta / 4.0);
  if (t > 700.0) return std::exp(-t);  // 1/(1+e^t) underflow guard
  return 1.0 / (1.0 + std::exp(t));
}

double retry_cap(std::size_t n, double alpha) {
  if (n == 0) throw std::invalid_argument("retry_cap: n == 0");
  if (!(alpha > 0.0)) throw std::invalid_argument("retry_cap: alpha <= 0");
  return std::ceil(std::exp(10.0 * std::sqrt(std::log(double(n)))) / alpha);
}

namespace {

void check_points(const std::vector<Point>& points) {
  if (points.empty()) throw std::invalid_argument("mechanism: no points");
  const std::size_t d = points.front().size();
  if (d == 0) throw std::invalid_argument("mechanism: zero-dimensional points");
  for (const Point& x : points) {
    if (x.size() != d) {
      throw std::invalid_argument("mechanism: ragged point dimensions");
    }
    for (double v : x) {
      if (!std::isfinite(v)) {
        throw std::invalid_argument("mechanism: non-finite coordinate");
      }
    }
  }
}

// Geometric(1/N) on {1, 2, ...} by inversion.
std::int64_t sample_retry_rounds(double cap, RandomStream& rng) {
  if (cap <= 1.0) return 1;
  const double u = rng.uniform_open();
  const double x = 1.0 + std::floor(std::log(u) / std::log1p(-1.0 / cap));
  if (x >= 9.0e18) return std::numeric_limits<std::int64_t>::max();
  return static_cast<std::int64_t>(x);
}

RoundOutcome run_round(const std::vector<Point>& points,
                       const MechanismParams& params, RandomStream& rng,
                       const AcceptanceFn& accept) {
  const std::size_t n = points.size();
  const std::size_t d = points.front().size();
  const double ball_radius = params.r * std::sqrt(double(d));

  const double p_garbage =
      garbage_index_probability(n, params.eps, params.delta);
  if (rng.uniform() < p_garbage) {
    if (rng.uniform() < 1.0 / 3.0) {
      return {RoundResult::kAcceptedGarbage, {}};
    }
    return {RoundResult::kRejected, {}};
  }

  const std::size_t i = rng.uniform_index(n);
  Point p = sample_ball(points[i], ball_radius, rng);
  const std::size_t f = count_cover(p, points, ball_radius);
  double p_accept;
  if (accept) {
    p_accept = std::clamp(accept(f, n, params.eps), 0.0, 1.0);
  } else {
    p_accept = acceptance_probability(f, n, params.eps);
  }
  if (rng.uniform() < p_accept) {
    return {RoundResult::kAcceptedPoint, std::move(p)};
  }
  return {RoundResult::kRejected, {}};
}

}  // namespace

RoundOutcome single_round(const std::vector<Point>& points,
                          const MechanismParams& params, RandomStream& rng) {
  return single_round_with(points, params, rng, {});
}

RoundOutcome single_round_with(const std::vector<Point>& points,
                               const MechanismParams& params, RandomStream& rng,
                               const AcceptanceFn& accept) {
  params.validate_round();
  check_points(points);
  return run_round(points, params, rng, accept);
}

EstimateOutcome dp_estimate_1(const std::vector<Point>& points,
                              const MechanismParams& params,
                              RandomStream& rng) {
  return dp_estimate_1_with(points, params, rng, {});
}

EstimateOutcome dp_estimate_1_with(const std::vector<Point>& points,
                                   const MechanismParams& params,
                                   RandomStream& rng,
                                   const AcceptanceFn& accept) {
  params.validate();
  check_points(points);
  const double cap = retry_cap(points.size(), params.alpha);
  const std::int64_t budget = sample_retry_rounds(cap, rng);
  for (std::int64_t round = 1; round <= budget; ++round) {
    RoundOutcome ro = run_round(points, params, rng, accept);
    if (ro.result == RoundResult::kAcceptedPoint) {
      EstimateOutcome out = EstimateOutcome::accepted(std::move(ro.point));
      out.rounds = round;
      return out;
    }
    if (ro.result == RoundResult::kAcceptedGarbage) {
      EstimateOutcome out = EstimateOutcome::garbage1();
      out.rounds = round;
      return out;
    }
  }
  EstimateOutcome out = EstimateOutcome::garbage2();
  out.rounds = budget;
  return out;
}

AcceptEstimate estimate_accept_prob(const std::vector<Point>& points,
                                    const MechanismParams& params,
                                    std::size_t trials, RandomStream& rng,
                                    const AcceptanceFn& accept) {
  params.validate_round();
  check_points(points);
  if (trials == 0) throw std::invalid_argument("estimate_accept_prob: trials == 0");
  std::size_t hits = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    if (run_round(points, params, rng, accept).result !=
        RoundResult::kRejected) {
      ++hits;
    }
  }
  AcceptEstimate est;
  est.trials = trials;
  est.estimate = static_cast<double>(hits) / static_cast<double>(trials);
  est.std_error =
      std::sqrt(est.estimate * (1.0 - est.estimate) / double(trials));
  return est;
}

namespace {

void check_grid(const GridSpec& grid, std::size_t d) {
  if (grid.lo.size() != d || grid.hi.size() != d) {
    throw std::invalid_argument("reference_density: grid dimension mismatch");
  }
  if (grid.cells_per_dim == 0) {
    throw std::invalid_argument("reference_density: empty grid");
  }
  for (std::size_t j = 0; j < d; ++j) {
    if (!(grid.lo[j] < grid.hi[j])) {
      throw std::invalid_argument("reference_density: lo must be below hi");
    }
  }
}

}  // namespace

std::optional<std::size_t> grid_cell_index(const GridSpec& grid,
                                           std::span<const double> p) {
  const std::size_t d = grid.lo.size();
  if (p.size() != d) return std::nullopt;
  std::size_t flat = 0;
  for (std::size_t j = 0; j < d; ++j) {
    if (p[j] < grid.lo[j] || p[j] > grid.hi[j]) return std::nullopt;
    const double width = (grid.hi[j] - grid.lo[j]) / double(grid.cells_per_dim);
    auto idx = static_cast<std::size_t>((p[j] - grid.lo[j]) / width);
    if (idx >= grid.cells_per_dim) idx = grid.cells_per_dim - 1;
    flat = flat * grid.cells_per_dim + idx;
  }
  return flat;
}

DensityTable reference_density(const std::vector<Point>& points,
                               const MechanismParams& params,
                               const GridSpec& grid) {
  params.validate();
  check_points(points);
  const std::size_t n = points.size();
  const std::size_t d = points.front().size();
  if (d > 2) {
    throw std::invalid_argument("reference_density: only d in {1, 2}");
  }
  check_grid(grid, d);

  const double R = params.r * std::sqrt(double(d));
  for (std::size_t j = 0; j < d; ++j) {
    double lo_needed = points[0][j], hi_needed = points[0][j];
    for (const Point& x : points) {
      lo_needed = std::min(lo_needed, x[j]);
      hi_needed = std::max(hi_needed, x[j]);
    }
    if (grid.lo[j] > lo_needed - R || grid.hi[j] < hi_needed + R) {
      throw std::invalid_argument(
          "reference_density: grid does not cover the candidate balls");
    }
  }

  const std::size_t cells = grid.cells_per_dim;
  const double two_thirds_n = 2.0 * double(n) / 3.0;
  const double ball_volume =
      (d == 1) ? 2.0 * R
               : 3.14159265358979323846 * R * R;

  // Log-space accumulation; everything is normalized at the end, so only
  // relative weights matter.
  DensityTable table;
  table.grid = grid;
  table.dim = d;
  const std::size_t total_cells = (d == 1) ? cells : cells * cells;
  std::vector<double> log_mass(total_cells,
                               -std::numeric_limits<double>::infinity());
  const double log_garbage =
      std::log(4.0 / params.delta) + std::log(ball_volume);

  const auto log_weight = [&](std::size_t f, double measure) {
    return params.eps * std::min(double(f), two_thirds_n) + std::log(measure);
  };
  const auto log_add = [](double a, double b) {
    if (a == -std::numeric_limits<double>::infinity()) return b;
    if (b == -std::numeric_limits<double>::infinity()) return a;
    const double hi = std::max(a, b), lo = std::min(a, b);
    return hi + std::log1p(std::exp(lo - hi));
  };

  if (d == 1) {
    // f is piecewise constant with breakpoints at x_i +- R, so each cell's
    // mass is an exact finite sum over its sub-intervals.
    std::vector<double> breaks;
    breaks.reserve(2 * n);
    for (const Point& x : points) {
      breaks.push_back(x[0] - R);
      breaks.push_back(x[0] + R);
    }
    std::sort(breaks.begin(), breaks.end());
    const double width = (grid.hi[0] - grid.lo[0]) / double(cells);
    for (std::size_t c = 0; c < cells; ++c) {
      const double a = grid.lo[0] + double(c) * width;
      const double b = (c + 1 == cells) ? grid.hi[0] : a + width;
      std::vector<double> cuts{a};
      for (double t : breaks) {
        if (t > a && t < b) cuts.push_back(t);
      }
      cuts.push_back(b);
      std::sort(cuts.begin(), cuts.end());
      for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
        const double len = cuts[s + 1] - cuts[s];
        if (len <= 0.0) continue;
        const double mid = 0.5 * (cuts[s] + cuts[s + 1]);
        const Point probe{mid};
        const std::size_t f = count_cover(probe, points, R);
        if (f == 0) continue;
        log_mass[c] = log_add(log_mass[c], log_weight(f, len));
      }
    }
    table.cell_volume = width;
  } else {
    const double wx = (grid.hi[0] - grid.lo[0]) / double(cells);
    const double wy = (grid.hi[1] - grid.lo[1]) / double(cells);
    const double area = wx * wy;
    for (std::size_t cx = 0; cx < cells; ++cx) {
      for (std::size_t cy = 0; cy < cells; ++cy) {
        const Point center{grid.lo[0] + (double(cx) + 0.5) * wx,
                           grid.lo[1] + (double(cy) + 0.5) * wy};
        const std::size_t f = count_cover(center, points, R);
        if (f == 0) continue;
        log_mass[cx * cells + cy] = log_weight(f, area);
      }
    }
    table.cell_volume = area;
  }

  double log_total = log_garbage;
  for (double lm : log_mass) log_total = log_add(log_total, lm);
  table.cell_mass.resize(total_cells);
  for (std::size_t c = 0; c < total_cells; ++c) {
    table.cell_mass[c] = std::exp(log_mass[c] - log_total);
  }
  table.garbage_mass = std::exp(log_garbage - log_total);
  return table;
}

}  // namespace userdp
