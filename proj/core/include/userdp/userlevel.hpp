#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "userdp/blockwise.hpp"

namespace userdp {

// n users, m samples per user, d coordinates per sample, row-major.
struct UserDataset {
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t d = 0;
  std::vector<double> data;

  std::span<const double> sample(std::size_t user, std::size_t idx) const {
    return {data.data() + (user * m + idx) * d, d};
  }
  std::span<double> sample_mut(std::size_t user, std::size_t idx) {
    return {data.data() + (user * m + idx) * d, d};
  }
  void validate() const;
};

// Categorical counterpart: n users, m draws each, categories are 1-based
// entries in {1, ..., d}.
struct DiscreteSamples {
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t d = 0;
  std::vector<std::uint32_t> data;

  std::uint32_t at(std::size_t user, std::size_t idx) const {
    return data[user * m + idx];
  }
  void validate() const;
};

std::vector<Point> user_means(const UserDataset& dataset);

struct UserLevelParams {
  BlockwiseParams block;            // block.r is the per-sample radius
  double mean_concentration = 10.0; // effective radius = this * r / sqrt(m)

  void validate() const;
};

// Neighboring datasets differ in one user's entire sample block, so the
// pipeline runs on user means with the radius shrunk by sqrt(m).
EstimateOutcome dp_estimate_user(const UserDataset& dataset,
                                 const UserLevelParams& params,
                                 RandomStream& rng,
                                 BlockwiseReport* report = nullptr);

// The accuracy statement only bites for user counts inside this window;
// outside it, privacy still holds and callers should warn, not fail.
struct UserRegime {
  double lower = 0.0;
  double upper = 0.0;
  bool inside = false;
};

UserRegime user_regime(std::size_t n, std::size_t d, double eps, double delta,
                       double alpha, double threshold_constant = 12.0);

// Both error-bound shapes for result records, constants left at 1:
// statistical r*sqrt(d/(nm)) and private r*sqrt(d)*polylog/(eps*n*sqrt(m)).
struct UserErrorBounds {
  double statistical = 0.0;
  double privacy = 0.0;
};

UserErrorBounds user_error_bounds(std::size_t n, std::size_t m, std::size_t d,
                                  double r, double eps, double delta,
                                  double alpha);

UserDataset one_hot_encode(const DiscreteSamples& samples);

// Euclidean projection onto the probability simplex.
Point project_to_simplex(const Point& v);

// One-hot reduction of distribution learning to mean estimation (r = 1).
// `project` maps the accepted point onto the simplex before returning it.
EstimateOutcome learn_discrete_distribution(const DiscreteSamples& samples,
                                            const UserLevelParams& params,
                                            bool project, RandomStream& rng,
                                            BlockwiseReport* report = nullptr);

// Half L1 distance between two probability vectors.
double total_variation(std::span<const double> p, std::span<const double> q);

}  // namespace userdp
