#include "userdp/synthdata.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "userdp/geometry.hpp"

namespace userdp {

const char* family_name(Family family) {
  switch (family) {
    case Family::kUniformBall: return "uniform_ball";
    case Family::kGaussianClipped: return "gaussian_clipped";
    case Family::kPointMass: return "point_mass";
    case Family::kDiscrete: return "discrete";
  }
  return "unknown";
}

Family family_from_name(const std::string& name) {
  if (name == "uniform_ball") return Family::kUniformBall;
  if (name == "gaussian_clipped") return Family::kGaussianClipped;
  if (name == "point_mass") return Family::kPointMass;
  if (name == "discrete") return Family::kDiscrete;
  throw std::invalid_argument("unknown family: " + name);
}

const char* adversary_name(Adversary strategy) {
  switch (strategy) {
    case Adversary::kFarCluster: return "far_cluster";
    case Adversary::kMirror: return "mirror";
    case Adversary::kScatter: return "scatter";
  }
  return "unknown";
}

Adversary adversary_from_name(const std::string& name) {
  if (name == "far_cluster") return Adversary::kFarCluster;
  if (name == "mirror") return Adversary::kMirror;
  if (name == "scatter") return Adversary::kScatter;
  throw std::invalid_argument("unknown adversary: " + name);
}

void DataSpec::validate() const {
  if (n == 0 || m == 0 || d == 0) {
    throw std::invalid_argument("data spec: n, m, d must be positive");
  }
  if (!(r > 0.0)) throw std::invalid_argument("data spec: r must be positive");
  if (!(rho >= 0.0)) {
    throw std::invalid_argument("data spec: rho must be nonnegative");
  }
  if (family == Family::kDiscrete) {
    if (rho != 0.0) {
      throw std::invalid_argument(
          "data spec: discrete draws are i.i.d. across users, rho must be 0");
    }
    if (probs.size() != d) {
      throw std::invalid_argument("data spec: probs must have d entries");
    }
    double total = 0.0;
    for (double p : probs) {
      if (!(p >= 0.0)) {
        throw std::invalid_argument("data spec: probs must be nonnegative");
      }
      total += p;
    }
    if (std::abs(total - 1.0) > 1e-9) {
      throw std::invalid_argument("data spec: probs must sum to 1");
    }
  } else if (!mean.empty() && mean.size() != d) {
    throw std::invalid_argument("data spec: mean must have d entries");
  }
  const double shift = rho * r / std::sqrt(static_cast<double>(m));
  if (shift > r) {
    throw std::invalid_argument(
        "data spec: rho exceeds sqrt(m), user centers would leave the ball");
  }
}

namespace {

// Uniform direction scaled to exactly `radius`.
Point sphere_point(std::size_t d, double radius, RandomStream& rng) {
  Point v(d, 0.0);
  if (radius == 0.0) return v;
  double norm2 = 0.0;
  do {
    norm2 = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
      v[j] = rng.gaussian();
      norm2 += v[j] * v[j];
    }
  } while (norm2 == 0.0);
  const double scale = radius / std::sqrt(norm2);
  for (double& x : v) x *= scale;
  return v;
}

// Shrinks `offset` just enough that mean + offset stays in B(mean, r).
void clamp_offset(Point& offset, double r) {
  double norm2 = 0.0;
  for (double x : offset) norm2 += x * x;
  while (norm2 > r * r) {
    norm2 = 0.0;
    for (double& x : offset) {
      x *= 0x1.fffffffffffffp-1;
      norm2 += x * x;
    }
  }
}

}  // namespace

UserDataset generate(const DataSpec& spec) {
  spec.validate();
  if (spec.family == Family::kDiscrete) {
    throw std::invalid_argument(
        "generate: use generate_discrete for the discrete family");
  }
  UserDataset out;
  out.n = spec.n;
  out.m = spec.m;
  out.d = spec.d;
  out.data.assign(spec.n * spec.m * spec.d, 0.0);

  const Point origin(spec.d, 0.0);
  const Point& mean = spec.mean.empty() ? origin : spec.mean;
  const double shift_radius =
      spec.rho * spec.r / std::sqrt(static_cast<double>(spec.m));
  const double noise_radius = std::max(spec.r - shift_radius, 0.0);
  const double sigma = noise_radius / (2.0 * std::sqrt(static_cast<double>(spec.d)));

  RandomStream rng(spec.seed);
  Point offset(spec.d, 0.0);
  for (std::size_t u = 0; u < spec.n; ++u) {
    const Point shift = sphere_point(spec.d, shift_radius, rng);
    for (std::size_t i = 0; i < spec.m; ++i) {
      switch (spec.family) {
        case Family::kUniformBall: {
          const Point noise = sample_ball(origin, noise_radius, rng);
          for (std::size_t j = 0; j < spec.d; ++j) {
            offset[j] = shift[j] + noise[j];
          }
          break;
        }
        case Family::kGaussianClipped: {
          double norm2 = 0.0;
          for (std::size_t j = 0; j < spec.d; ++j) {
            offset[j] = sigma * rng.gaussian();
            norm2 += offset[j] * offset[j];
          }
          if (norm2 > noise_radius * noise_radius) {
            const double scale = noise_radius / std::sqrt(norm2);
            for (double& x : offset) x *= scale;
          }
          for (std::size_t j = 0; j < spec.d; ++j) offset[j] += shift[j];
          break;
        }
        case Family::kPointMass:
          offset = shift;
          break;
        case Family::kDiscrete:
          break;  // unreachable, rejected above
      }
      clamp_offset(offset, spec.r);
      auto x = out.sample_mut(u, i);
      for (std::size_t j = 0; j < spec.d; ++j) x[j] = mean[j] + offset[j];
    }
  }
  return out;
}

DiscreteSamples generate_discrete(const DataSpec& spec) {
  spec.validate();
  if (spec.family != Family::kDiscrete) {
    throw std::invalid_argument("generate_discrete: family must be discrete");
  }
  std::vector<double> cdf(spec.d);
  std::partial_sum(spec.probs.begin(), spec.probs.end(), cdf.begin());
  cdf.back() = 1.0;

  DiscreteSamples out;
  out.n = spec.n;
  out.m = spec.m;
  out.d = spec.d;
  out.data.resize(spec.n * spec.m);

  RandomStream rng(spec.seed);
  for (std::size_t u = 0; u < spec.n; ++u) {
    for (std::size_t i = 0; i < spec.m; ++i) {
      const double t = rng.uniform();
      const auto it = std::upper_bound(cdf.begin(), cdf.end(), t);
      const std::size_t c =
          std::min<std::size_t>(it - cdf.begin(), spec.d - 1);
      out.data[u * spec.m + i] = static_cast<std::uint32_t>(c + 1);
    }
  }
  return out;
}

void AdversarySpec::validate() const {
  if (!(fraction >= 0.0 && fraction < 1.0)) {
    throw std::invalid_argument("adversary: fraction must be in [0, 1)");
  }
  if (strategy == Adversary::kScatter && !(scatter_radius > 0.0)) {
    throw std::invalid_argument("adversary: scatter_radius must be positive");
  }
}

std::vector<std::size_t> corrupt(UserDataset& dataset,
                                 const AdversarySpec& spec) {
  dataset.validate();
  spec.validate();
  if (!spec.target.empty() && spec.target.size() != dataset.d) {
    throw std::invalid_argument("adversary: target must have d entries");
  }
  const std::size_t count =
      static_cast<std::size_t>(spec.fraction * static_cast<double>(dataset.n));
  if (count == 0) return {};

  RandomStream rng(spec.seed);
  std::vector<std::size_t> order(dataset.n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t j = i + rng.uniform_index(dataset.n - i);
    std::swap(order[i], order[j]);
  }
  std::vector<std::size_t> chosen(order.begin(), order.begin() + count);
  std::sort(chosen.begin(), chosen.end());

  Point grand_mean(dataset.d, 0.0);
  if (spec.strategy == Adversary::kMirror) {
    for (std::size_t u = 0; u < dataset.n; ++u) {
      for (std::size_t i = 0; i < dataset.m; ++i) {
        auto x = dataset.sample(u, i);
        for (std::size_t j = 0; j < dataset.d; ++j) grand_mean[j] += x[j];
      }
    }
    const double inv = 1.0 / static_cast<double>(dataset.n * dataset.m);
    for (double& v : grand_mean) v *= inv;
  }

  const Point origin(dataset.d, 0.0);
  const Point& center = spec.target.empty() ? origin : spec.target;
  for (std::size_t u : chosen) {
    for (std::size_t i = 0; i < dataset.m; ++i) {
      auto x = dataset.sample_mut(u, i);
      switch (spec.strategy) {
        case Adversary::kFarCluster:
          for (std::size_t j = 0; j < dataset.d; ++j) x[j] = center[j];
          break;
        case Adversary::kMirror:
          for (std::size_t j = 0; j < dataset.d; ++j) {
            x[j] = 2.0 * grand_mean[j] - x[j];
          }
          break;
        case Adversary::kScatter: {
          const Point p = sample_ball(center, spec.scatter_radius, rng);
          for (std::size_t j = 0; j < dataset.d; ++j) x[j] = p[j];
          break;
        }
      }
    }
  }
  return chosen;
}

}  // namespace userdp
