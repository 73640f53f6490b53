#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "userdp/random.hpp"

namespace userdp {

using Point = std::vector<double>;

double squared_distance(std::span<const double> a, std::span<const double> b);
double l2_norm(std::span<const double> v);

// Uniform draw from the closed ball of the given radius around center.
// Gaussian direction plus a u^(1/d) radial scale; exact, no rejection.
// The returned point satisfies |q - center| <= radius with no tolerance.
Point sample_ball(const Point& center, double radius, RandomStream& rng);

// Number of points whose closed ball of radius ball_radius contains p,
// i.e. #{ j : |p - x_j| <= ball_radius }. Boundary points count.
std::size_t count_cover(std::span<const double> p,
                        const std::vector<Point>& points, double ball_radius);

// Coordinate-wise median. Even counts take the mean of the two middle
// values. All points must share one dimension.
Point coordinate_median(const std::vector<Point>& points);

std::size_t next_pow2(std::size_t n);

// In-place Walsh-Hadamard butterfly over a power-of-two length. Applies the
// unnormalized transform H; callers handle any 1/sqrt(len) scaling.
void fwht(std::span<double> data);

// Sign-flip + Hadamard rotation. The plan depends only on (d, seed), never
// on data, so a plan can be fixed before any samples are seen.
struct RotationPlan {
  std::size_t d_orig = 0;
  std::size_t d_pad = 0;            // next power of two >= d_orig
  std::vector<double> signs;        // d_pad entries, each +1 or -1
  std::uint64_t seed = 0;
};

RotationPlan make_rotation(std::size_t d, std::uint64_t seed);

// rotate: v (length d_orig) -> (1/sqrt(d_pad)) * H * D * pad(v), length d_pad.
// unrotate inverts it exactly up to roundoff and truncates back to d_orig.
// Both preserve the euclidean norm of the embedded vector.
Point rotate(const RotationPlan& plan, std::span<const double> v);
Point unrotate(const RotationPlan& plan, std::span<const double> w);

}  // namespace userdp
