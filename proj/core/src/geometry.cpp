#include "userdp/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace userdp {

double squared_distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double diff = a[i] - b[i];
    s += diff * diff;
  }
  return s;
}

double l2_norm(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

Point sample_ball(const Point& center, double radius, RandomStream& rng) {
  if (center.empty()) throw std::invalid_argument("sample_ball: empty center");
  if (!(radius >= 0.0) || !std::isfinite(radius)) {
    throw std::invalid_argument("sample_ball: bad radius");
  }
  const std::size_t d = center.size();
  Point offset(d);
  if (radius == 0.0) return center;

  double norm2;
  do {
    norm2 = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
      offset[i] = rng.gaussian();
      norm2 += offset[i] * offset[i];
    }
  } while (norm2 == 0.0);

  const double target = radius * std::pow(rng.uniform_open(), 1.0 / double(d));
  const double scale = target / std::sqrt(norm2);
  Point q(d);
  for (std::size_t i = 0; i < d; ++i) q[i] = center[i] + offset[i] * scale;

  // Roundoff can push the recomputed distance a few ulps past the radius;
  // the membership contract is exact, so nudge inward until it holds.
  while (squared_distance(q, center) > radius * radius) {
    for (std::size_t i = 0; i < d; ++i) {
      q[i] = center[i] + (q[i] - center[i]) * 0x1.fffffffffffffp-1;
    }
  }
  return q;
}

std::size_t count_cover(std::span<const double> p,
                        const std::vector<Point>& points, double ball_radius) {
  const double r2 = ball_radius * ball_radius;
  std::size_t count = 0;
  for (const Point& x : points) {
    if (squared_distance(p, x) <= r2) ++count;
  }
  return count;
}

Point coordinate_median(const std::vector<Point>& points) {
  if (points.empty()) {
    throw std::invalid_argument("coordinate_median: no points");
  }
  const std::size_t n = points.size();
  const std::size_t d = points.front().size();
  for (const Point& p : points) {
    if (p.size() != d) {
      throw std::invalid_argument("coordinate_median: ragged dimensions");
    }
  }
  Point median(d);
  std::vector<double> column(n);
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t i = 0; i < n; ++i) column[i] = points[i][j];
    const std::size_t mid = n / 2;
    std::nth_element(column.begin(), column.begin() + mid, column.end());
    if (n % 2 == 1) {
      median[j] = column[mid];
    } else {
      const double hi = column[mid];
      const double lo =
          *std::max_element(column.begin(), column.begin() + mid);
      median[j] = (lo + hi) / 2.0;
    }
  }
  return median;
}

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

void fwht(std::span<double> data) {
  const std::size_t len = data.size();
  if (len == 0 || (len & (len - 1)) != 0) {
    throw std::invalid_argument("fwht: length must be a power of two");
  }
  for (std::size_t h = 1; h < len; h <<= 1) {
    for (std::size_t base = 0; base < len; base += h << 1) {
      for (std::size_t i = base; i < base + h; ++i) {
        const double a = data[i];
        const double b = data[i + h];
        data[i] = a + b;
        data[i + h] = a - b;
      }
    }
  }
}

RotationPlan make_rotation(std::size_t d, std::uint64_t seed) {
  if (d == 0) throw std::invalid_argument("make_rotation: d must be positive");
  RotationPlan plan;
  plan.d_orig = d;
  plan.d_pad = next_pow2(d);
  plan.seed = seed;
  plan.signs.resize(plan.d_pad);
  RandomStream rng(derive_seed(seed, {0x726f74ULL}));
  for (double& s : plan.signs) s = (rng.next_u64() & 1) ? 1.0 : -1.0;
  return plan;
}

Point rotate(const RotationPlan& plan, std::span<const double> v) {
  if (v.size() != plan.d_orig) {
    throw std::invalid_argument("rotate: dimension mismatch");
  }
  Point w(plan.d_pad, 0.0);
  for (std::size_t i = 0; i < plan.d_orig; ++i) w[i] = v[i] * plan.signs[i];
  fwht(w);
  const double scale = 1.0 / std::sqrt(double(plan.d_pad));
  for (double& x : w) x *= scale;
  return w;
}

Point unrotate(const RotationPlan& plan, std::span<const double> w) {
  if (w.size() != plan.d_pad) {
    throw std::invalid_argument("unrotate: dimension mismatch");
  }
  Point v(w.begin(), w.end());
  fwht(v);
  const double scale = 1.0 / std::sqrt(double(plan.d_pad));
  for (std::size_t i = 0; i < plan.d_pad; ++i) v[i] *= scale * plan.signs[i];
  v.resize(plan.d_orig);
  return v;
}

}  // namespace userdp
