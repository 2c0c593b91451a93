#include "hmfa/group.hpp"

#include <cmath>
#include <stdexcept>

#include "hmfa/scan.hpp"

namespace hmfa {

GPoint dilate(double lambda, const GPoint& x) {
  if (!(lambda > 0.0)) throw std::domain_error("dilate: lambda must be > 0");
  return {lambda * x.p, lambda * x.q, lambda * lambda * x.r};
}

double gauge_norm(const GPoint& x) {
  // ((p^2+q^2)^2 + r^2)^{1/4} = sqrt(hypot(p^2+q^2, r))
  return std::sqrt(std::hypot(x.p * x.p + x.q * x.q, x.r));
}

double ball_volume(double r) {
  if (!(r > 0.0)) throw std::domain_error("ball_volume: radius must be > 0");
  return constants::kBallVolumeUnit * r * r * r * r;
}

static bool in_unit_ball(double p, double q, double r) {
  double a = p * p + q * q;
  return a * a + r * r < 1.0;
}

double mc_unit_ball_volume(std::int64_t n, std::uint64_t seed) {
  std::int64_t hits = scan::count_if(n, [seed](std::int64_t i) {
    const std::uint64_t b = static_cast<std::uint64_t>(i) * 4u;
    double p = scan::uab(seed, b + 0, -1.0, 1.0);
    double q = scan::uab(seed, b + 1, -1.0, 1.0);
    double r = scan::uab(seed, b + 2, -1.0, 1.0);
    return in_unit_ball(p, q, r);
  });
  return 8.0 * static_cast<double>(hits) / static_cast<double>(n);
}

double mc_unit_ball_volume_serial(std::int64_t n, std::uint64_t seed) {
  std::int64_t hits = scan::serial::count_if(n, [seed](std::int64_t i) {
    const std::uint64_t b = static_cast<std::uint64_t>(i) * 4u;
    double p = scan::uab(seed, b + 0, -1.0, 1.0);
    double q = scan::uab(seed, b + 1, -1.0, 1.0);
    double r = scan::uab(seed, b + 2, -1.0, 1.0);
    return in_unit_ball(p, q, r);
  });
  return 8.0 * static_cast<double>(hits) / static_cast<double>(n);
}

double quasi_triangle_constant(std::int64_t sample_count, std::uint64_t seed) {
  if (sample_count < 1) throw std::domain_error("quasi_triangle_constant: sample_count >= 1");
  double best = scan::max_reduce(sample_count, [seed](std::int64_t i) {
    const std::uint64_t b = static_cast<std::uint64_t>(i) * 8u;
    GPoint x{scan::uab(seed, b + 0, -2.0, 2.0), scan::uab(seed, b + 1, -2.0, 2.0),
             scan::uab(seed, b + 2, -4.0, 4.0)};
    GPoint y{scan::uab(seed, b + 3, -2.0, 2.0), scan::uab(seed, b + 4, -2.0, 2.0),
             scan::uab(seed, b + 5, -4.0, 4.0)};
    double den = gauge_norm(x) + gauge_norm(y);
    if (den == 0.0) return 0.0;
    return gauge_norm(mul(x, y)) / den;
  });
  // collinear p-axis pair: ||xy|| = ||x|| + ||y|| exactly
  GPoint a{1.0, 0.0, 0.0}, b{2.0, 0.0, 0.0};
  double collinear = gauge_norm(mul(a, b)) / (gauge_norm(a) + gauge_norm(b));
  return std::max(best, collinear);
}

GPoint flow(HDir v, const GPoint& x, double t) {
  switch (v) {
    case HDir::X: return {x.p + t, x.q, x.r + 2.0 * x.q * t};
    case HDir::Y: return {x.p, x.q + t, x.r - 2.0 * x.p * t};
    case HDir::Z: return {x.p, x.q, x.r + t};
  }
  return x;
}

double horizontal_derivative(const std::function<double(const GPoint&)>& f, const GPoint& x,
                             std::span<const HDir> word, double step) {
  if (word.empty()) return f(x);
  if (!(step > 0.0)) throw std::domain_error("horizontal_derivative: step must be > 0");
  const HDir outer = word.front();
  auto rest = word.subspan(1);
  double fp = horizontal_derivative(f, flow(outer, x, step), rest, step);
  double fm = horizontal_derivative(f, flow(outer, x, -step), rest, step);
  return (fp - fm) / (2.0 * step);
}

static double min_dist_to_Z3(const GPoint& x) {
  const long kp0 = std::lround(x.p), kq0 = std::lround(x.q), kr0 = std::lround(x.r);
  double best = std::numeric_limits<double>::infinity();
  for (long kp = kp0 - 3; kp <= kp0 + 3; ++kp)
    for (long kq = kq0 - 3; kq <= kq0 + 3; ++kq)
      for (long kr = kr0 - 9; kr <= kr0 + 9; ++kr) {
        GPoint k{static_cast<double>(kp), static_cast<double>(kq), static_cast<double>(kr)};
        best = std::min(best, dist(k, x));
      }
  return best;
}

double covering_constant_estimate(int grid_n) {
  const int N = grid_n;
  double best = 0.0;
  GPoint bx{};
  // r spans [-2,2]: unit cell in r plus the shear reach of neighbors
  const std::int64_t total = static_cast<std::int64_t>(N + 1) * (N + 1) * (4 * N + 1);
  std::vector<double> vals(static_cast<std::size_t>(total));
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (std::int64_t t = 0; t < total; ++t) {
    const std::int64_t l = t % (4 * N + 1);
    const std::int64_t rem = t / (4 * N + 1);
    const std::int64_t j = rem % (N + 1);
    const std::int64_t i = rem / (N + 1);
    GPoint x{double(i) / N, double(j) / N, -2.0 + double(l) / N};
    vals[static_cast<std::size_t>(t)] = min_dist_to_Z3(x);
  }
  for (std::int64_t t = 0; t < total; ++t) {
    if (vals[static_cast<std::size_t>(t)] > best) {
      best = vals[static_cast<std::size_t>(t)];
      const std::int64_t l = t % (4 * N + 1);
      const std::int64_t rem = t / (4 * N + 1);
      bx = {double(rem / (N + 1)) / N, double(rem % (N + 1)) / N, -2.0 + double(l) / N};
    }
  }
  // coordinate-descent polish
  double step = 1.0 / N;
  GPoint x = bx;
  for (int it = 0; it < 200; ++it) {
    bool improved = false;
    for (int d = 0; d < 3; ++d) {
      for (double s : {step, -step}) {
        GPoint x2 = x;
        (d == 0 ? x2.p : d == 1 ? x2.q : x2.r) += s;
        double v = min_dist_to_Z3(x2);
        if (v > best) {
          best = v;
          x = x2;
          improved = true;
        }
      }
    }
    if (!improved) {
      step *= 0.5;
      if (step < 1e-8) break;
    }
  }
  return best;
}

}  // namespace hmfa
