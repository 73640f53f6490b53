#include "userdp/userlevel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace userdp {

void UserDataset::validate() const {
  if (n == 0 || m == 0 || d == 0) {
    throw std::invalid_argument("user dataset: n, m, d must be positive");
  }
  if (data.size() != n * m * d) {
    throw std::invalid_argument("user dataset: data size is " +
                                std::to_string(data.size()) + ", expected " +
                                std::to_string(n * m * d));
  }
}

void DiscreteSamples::validate() const {
  if (n == 0 || m == 0 || d == 0) {
    throw std::invalid_argument("discrete samples: n, m, d must be positive");
  }
  if (data.size() != n * m) {
    throw std::invalid_argument("discrete samples: data size is " +
                                std::to_string(data.size()) + ", expected " +
                                std::to_string(n * m));
  }
  for (std::uint32_t c : data) {
    if (c == 0 || c > d) {
      throw std::invalid_argument("discrete samples: category " +
                                  std::to_string(c) + " outside 1.." +
                                  std::to_string(d));
    }
  }
}

std::vector<Point> user_means(const UserDataset& dataset) {
  dataset.validate();
  std::vector<Point> means(dataset.n, Point(dataset.d, 0.0));
  for (std::size_t u = 0; u < dataset.n; ++u) {
    Point& mu = means[u];
    for (std::size_t i = 0; i < dataset.m; ++i) {
      auto x = dataset.sample(u, i);
      for (std::size_t j = 0; j < dataset.d; ++j) mu[j] += x[j];
    }
    const double inv = 1.0 / static_cast<double>(dataset.m);
    for (double& v : mu) v *= inv;
  }
  return means;
}

void UserLevelParams::validate() const {
  block.validate();
  if (!(mean_concentration > 0.0)) {
    throw std::invalid_argument("mean_concentration must be positive");
  }
}

EstimateOutcome dp_estimate_user(const UserDataset& dataset,
                                 const UserLevelParams& params,
                                 RandomStream& rng,
                                 BlockwiseReport* report) {
  params.validate();
  std::vector<Point> means = user_means(dataset);
  BlockwiseParams block = params.block;
  block.r = params.mean_concentration * params.block.r /
            std::sqrt(static_cast<double>(dataset.m));
  return dp_estimate_interpolated(means, block, rng, report);
}

UserRegime user_regime(std::size_t n, std::size_t d, double eps, double delta,
                       double alpha, double threshold_constant) {
  UserRegime regime;
  regime.lower = threshold_constant / eps * std::log(1.0 / (alpha * delta));
  regime.upper =
      std::sqrt(static_cast<double>(d)) / eps * std::log(1.0 / delta);
  const double nn = static_cast<double>(n);
  regime.inside = nn >= regime.lower && nn <= regime.upper;
  return regime;
}

UserErrorBounds user_error_bounds(std::size_t n, std::size_t m, std::size_t d,
                                  double r, double eps, double delta,
                                  double alpha) {
  UserErrorBounds bounds;
  const double nn = static_cast<double>(n);
  const double mm = static_cast<double>(m);
  const double dd = static_cast<double>(d);
  bounds.statistical = r * std::sqrt(dd / (nn * mm));
  const double polylog = std::sqrt(std::log(1.0 / delta)) *
                         std::log(dd * nn / alpha) *
                         std::sqrt(std::log(1.0 / alpha));
  bounds.privacy = r * std::sqrt(dd) * polylog / (eps * nn * std::sqrt(mm));
  return bounds;
}

UserDataset one_hot_encode(const DiscreteSamples& samples) {
  samples.validate();
  UserDataset out;
  out.n = samples.n;
  out.m = samples.m;
  out.d = samples.d;
  out.data.assign(out.n * out.m * out.d, 0.0);
  for (std::size_t u = 0; u < samples.n; ++u) {
    for (std::size_t i = 0; i < samples.m; ++i) {
      const std::uint32_t c = samples.at(u, i);
      out.sample_mut(u, i)[c - 1] = 1.0;
    }
  }
  return out;
}

Point project_to_simplex(const Point& v) {
  if (v.empty()) throw std::invalid_argument("simplex projection: empty input");
  Point sorted = v;
  std::sort(sorted.begin(), sorted.end(), std::greater<double>());
  double running = 0.0;
  double tau = 0.0;
  std::size_t support = 0;
  for (std::size_t j = 0; j < sorted.size(); ++j) {
    running += sorted[j];
    const double candidate =
        (running - 1.0) / static_cast<double>(j + 1);
    if (sorted[j] - candidate > 0.0) {
      tau = candidate;
      support = j + 1;
    }
  }
  if (support == 0) {
    // All mass below threshold; fall back to the max coordinate.
    tau = sorted[0] - 1.0;
  }
  Point out(v.size());
  for (std::size_t j = 0; j < v.size(); ++j) {
    out[j] = std::max(v[j] - tau, 0.0);
  }
  return out;
}

EstimateOutcome learn_discrete_distribution(const DiscreteSamples& samples,
                                            const UserLevelParams& params,
                                            bool project, RandomStream& rng,
                                            BlockwiseReport* report) {
  UserLevelParams one_hot_params = params;
  one_hot_params.block.r = 1.0;
  one_hot_params.validate();
  UserDataset encoded = one_hot_encode(samples);
  EstimateOutcome outcome =
      dp_estimate_user(encoded, one_hot_params, rng, report);
  if (outcome.is_accepted() && project) {
    outcome.point = project_to_simplex(outcome.point);
  }
  return outcome;
}

double total_variation(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) {
    throw std::invalid_argument("total variation: length mismatch");
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) acc += std::abs(p[i] - q[i]);
  return 0.5 * acc;
}

}  // namespace userdp
