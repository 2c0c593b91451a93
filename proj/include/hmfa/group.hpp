#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

// First Heisenberg group in global coordinates (p,q,r):
//   (p,q,r)*(p',q',r') = (p+p', q+q', r+r'+2(qp'-pq'))
// with anisotropic dilations  lambda o (p,q,r) = (lambda p, lambda q, lambda^2 r)
// and gauge pseudo-norm  ||x|| = ((p^2+q^2)^2 + r^2)^{1/4}.
namespace hmfa {

struct GPoint {
  double p = 0.0;
  double q = 0.0;
  double r = 0.0;

  friend bool operator==(const GPoint&, const GPoint&) = default;
};

namespace constants {
inline constexpr int kHomDim = 4;                               // Q
inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kBallVolumeUnit = kPi * kPi / 2.0;      // vol B(x,r) = (pi^2/2) r^4
inline const double kCubeDiameterUnit = 1.8988289221159418;     // 13^{1/4}
// max over x of min_k delta(x, k), k in Z^3; equals 2^{-1/4}, attained at
// (1/2, 1/2, +-3/2)-type points (measured by covering_constant_estimate).
inline const double kCoveringConstant = 0.8408964152537145;
}  // namespace constants

inline GPoint mul(const GPoint& a, const GPoint& b) {
  return {a.p + b.p, a.q + b.q, a.r + b.r + 2.0 * (a.q * b.p - a.p * b.q)};
}

inline GPoint inv(const GPoint& x) { return {-x.p, -x.q, -x.r}; }

// lambda > 0; throws std::domain_error otherwise.
GPoint dilate(double lambda, const GPoint& x);

double gauge_norm(const GPoint& x);

inline double dist(const GPoint& x, const GPoint& y) { return gauge_norm(mul(inv(x), y)); }

// (pi^2/2) r^4 for r > 0; throws std::domain_error otherwise.
double ball_volume(double r);

// Rejection-sampling estimate of vol B(0,1) over the box [-1,1]^2 x [-1,1].
// Deterministic in (n, seed) and independent of the thread count.
double mc_unit_ball_volume(std::int64_t n, std::uint64_t seed);
double mc_unit_ball_volume_serial(std::int64_t n, std::uint64_t seed);

// Empirical lower bound for the quasi-triangle constant gamma_1:
// max over sampled pairs of ||xy|| / (||x||+||y||). A collinear p-axis pair
// is always included, so the result is >= 1.
double quasi_triangle_constant(std::int64_t sample_count, std::uint64_t seed);

// Horizontal derivatives. Flows are exact:
//   X: (p,q,r) -> (p+t, q, r+2qt)
//   Y: (p,q,r) -> (p, q+t, r-2pt)
//   Z: (p,q,r) -> (p, q, r+t)
enum class HDir { X, Y, Z };

GPoint flow(HDir v, const GPoint& x, double t);

// Iterated 2nd-order central differences along the exact flows. The first
// element of `word` is the outermost derivative: word={X,Y} computes X(Yf).
// Empty word returns f(x); step <= 0 throws std::domain_error.
double horizontal_derivative(const std::function<double(const GPoint&)>& f, const GPoint& x,
                             std::span<const HDir> word, double step);

// Grid + local-refine estimate of max_x min_{k in Z^3} delta(x,k).
double covering_constant_estimate(int grid_n);

}  // namespace hmfa
