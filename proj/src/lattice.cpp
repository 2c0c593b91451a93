#include "hmfa/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "hmfa/scan.hpp"

namespace hmfa::lattice {

namespace {

double pow2(int e) { return std::ldexp(1.0, e); }

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b, r = a % b;
  return (r != 0 && ((r < 0) != (b < 0))) ? q - 1 : q;
}

__int128 floor_div128(__int128 a, __int128 b) {
  __int128 q = a / b, r = a % b;
  return (r != 0 && ((r < 0) != (b < 0))) ? q - 1 : q;
}

}  // namespace

GPoint dyadic_point(const DyadicIndex& idx) {
  const double s = pow2(-idx.j);
  return {s * static_cast<double>(idx.k.p), s * static_cast<double>(idx.k.q),
          s * s * static_cast<double>(idx.k.r)};
}

DyadicIndex locate(const GPoint& x, int j) {
  const double s = pow2(j);
  const double up = x.p * s, uq = x.q * s, ur = x.r * s * s;
  const auto kp = static_cast<std::int64_t>(std::floor(up));
  const auto kq = static_cast<std::int64_t>(std::floor(uq));
  const auto kr = static_cast<std::int64_t>(
      std::floor(ur - 2.0 * (static_cast<double>(kq) * up - static_cast<double>(kp) * uq)));
  return {j, {kp, kq, kr}};
}

bool cube_contains(const DyadicIndex& idx, const GPoint& x) {
  const GPoint base = dyadic_point(idx);
  const GPoint w = mul(inv(base), x);
  const double s = pow2(idx.j);
  const double a = w.p * s, b = w.q * s, c = w.r * s * s;
  return a >= 0.0 && a < 1.0 && b >= 0.0 && b < 1.0 && c >= 0.0 && c < 1.0;
}

const std::array<Idx3, 35>& xi_printed() {
  static const std::array<Idx3, 35> t = [] {
    std::array<Idx3, 35> v{};
    std::size_t n = 0;
    auto row = [&](std::int64_t p, std::int64_t q, std::initializer_list<std::int64_t> rs) {
      for (std::int64_t r : rs) v[n++] = {p, q, r};
    };
    row(0, 0, {-1, 0, 1});
    row(1, 0, {-3, -2, -1, 0, 1});
    row(1, 1, {-1, 0, 1});
    row(0, 1, {-1, 0, 1, 2, 3});
    row(-1, 1, {1, 2, 3});
    row(-1, 0, {-1, 0, 1, 2, 3});
    row(-1, -1, {-1, 0, 1});
    row(0, -1, {-3, -2, -1, 0, 1});
    row(1, -1, {-3, -2, -1});
    return v;
  }();
  return t;
}

const std::array<Idx3, 35>& xi_effective() {
  static const std::array<Idx3, 35> t = [] {
    std::array<Idx3, 35> v{};
    const auto& printed = xi_printed();
    for (std::size_t i = 0; i < printed.size(); ++i) {
      v[i] = {printed[i].q, printed[i].p, printed[i].r};
    }
    std::sort(v.begin(), v.end());
    return v;
  }();
  return t;
}

std::vector<Idx3> neighbor_scan_bruteforce(int window_pq, int window_r) {
  std::vector<Idx3> out;
  for (std::int64_t kp = -window_pq; kp <= window_pq; ++kp) {
    for (std::int64_t kq = -window_pq; kq <= window_pq; ++kq) {
      if (std::abs(kp) > 1 || std::abs(kq) > 1) continue;
      // feasible corner values of (a,b): A = {0},{1} or {0,1}
      std::vector<std::int64_t> A = (kp == 0) ? std::vector<std::int64_t>{0, 1}
                                              : std::vector<std::int64_t>{kp == 1 ? 0 : 1};
      std::vector<std::int64_t> B = (kq == 0) ? std::vector<std::int64_t>{0, 1}
                                              : std::vector<std::int64_t>{kq == 1 ? 0 : 1};
      for (std::int64_t kr = -window_r; kr <= window_r; ++kr) {
        std::int64_t gmin = std::numeric_limits<std::int64_t>::max();
        std::int64_t gmax = std::numeric_limits<std::int64_t>::min();
        for (std::int64_t a : A) {
          for (std::int64_t b : B) {
            const std::int64_t g = kr + 2 * (kq * a - kp * b);
            gmin = std::min(gmin, g);
            gmax = std::max(gmax, g);
          }
        }
        if (gmin <= 1 && gmax >= -1) out.push_back({kp, kq, kr});
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::array<DyadicIndex, 35> neighborhood(const DyadicIndex& idx) {
  std::array<DyadicIndex, 35> out{};
  const auto& xi = xi_effective();
  for (std::size_t i = 0; i < xi.size(); ++i) out[i] = {idx.j, imul(idx.k, xi[i])};
  return out;
}

double cube_diameter(int j) { return constants::kCubeDiameterUnit * pow2(-j); }

double cube_diameter_estimate(std::int64_t samples, std::uint64_t seed) {
  double best = 0.0;
  for (int c1 = 0; c1 < 8; ++c1) {
    for (int c2 = 0; c2 < 8; ++c2) {
      GPoint u{double(c1 & 1), double((c1 >> 1) & 1), double((c1 >> 2) & 1)};
      GPoint v{double(c2 & 1), double((c2 >> 1) & 1), double((c2 >> 2) & 1)};
      best = std::max(best, dist(u, v));
    }
  }
  double sampled = scan::max_reduce(samples, [seed](std::int64_t i) {
    const std::uint64_t b = static_cast<std::uint64_t>(i) * 8u;
    GPoint u{scan::u01(seed, b + 0), scan::u01(seed, b + 1), scan::u01(seed, b + 2)};
    GPoint v{scan::u01(seed, b + 3), scan::u01(seed, b + 4), scan::u01(seed, b + 5)};
    return dist(u, v);
  });
  return std::max(best, sampled);
}

std::vector<Idx3> ball_overlap_reference() {
  std::vector<Idx3> out;
  for (std::int64_t kp = -2; kp <= 2; ++kp)
    for (std::int64_t kq = -2; kq <= 2; ++kq)
      for (std::int64_t kr = -2; kr <= 2; ++kr) {
        if (kp == 0 && kq == 0 && std::abs(kr) <= 1)
          out.push_back({kp, kq, kr});
        else if (kp * kp + kq * kq >= 1 && kp * kp + kq * kq <= 2 && std::abs(kr) <= 2)
          out.push_back({kp, kq, kr});
      }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

double gauge4(double p, double q, double r) {
  const double a = p * p + q * q;
  return a * a + r * r;
}

// max(||y||^4, ||k^{-1}y||^4)
double pair_obj(const Idx3& k, double yp, double yq, double yr) {
  const double f1 = gauge4(yp, yq, yr);
  const double zp = yp - double(k.p);
  const double zq = yq - double(k.q);
  const double zr = yr - double(k.r) + 2.0 * (-double(k.q) * yp + double(k.p) * yq);
  return std::max(f1, gauge4(zp, zq, zr));
}

}  // namespace

double ball_half_distance(const Idx3& k) {
  const double lo[3] = {std::min<double>(0, double(k.p)) - 1.2, std::min<double>(0, double(k.q)) - 1.2,
                        std::min<double>(0, double(k.r)) - 1.6};
  const double hi[3] = {std::max<double>(0, double(k.p)) + 1.2, std::max<double>(0, double(k.q)) + 1.2,
                        std::max<double>(0, double(k.r)) + 1.6};
  const int N = 14;
  double best = std::numeric_limits<double>::infinity();
  double by[3] = {0, 0, 0};
  for (int i = 0; i <= N; ++i)
    for (int j = 0; j <= N; ++j)
      for (int l = 0; l <= N; ++l) {
        const double y0 = lo[0] + (hi[0] - lo[0]) * i / N;
        const double y1 = lo[1] + (hi[1] - lo[1]) * j / N;
        const double y2 = lo[2] + (hi[2] - lo[2]) * l / N;
        const double f = pair_obj(k, y0, y1, y2);
        if (f < best) {
          best = f;
          by[0] = y0;
          by[1] = y1;
          by[2] = y2;
        }
      }
  double step = (hi[0] - lo[0]) / N;
  for (int it = 0; it < 300; ++it) {
    bool improved = false;
    for (int d = 0; d < 3; ++d) {
      for (double s : {step, -step}) {
        double y2[3] = {by[0], by[1], by[2]};
        y2[d] += s;
        const double f = pair_obj(k, y2[0], y2[1], y2[2]);
        if (f < best) {
          best = f;
          by[0] = y2[0];
          by[1] = y2[1];
          by[2] = y2[2];
          improved = true;
        }
      }
    }
    if (!improved) {
      step *= 0.5;
      if (step < 1e-7) break;
    }
  }
  return std::pow(best, 0.25);
}

std::vector<Idx3> ball_overlap_scan(int window_pq, int window_r) {
  std::vector<Idx3> candidates;
  for (std::int64_t kp = -window_pq; kp <= window_pq; ++kp)
    for (std::int64_t kq = -window_pq; kq <= window_pq; ++kq)
      for (std::int64_t kr = -window_r; kr <= window_r; ++kr) candidates.push_back({kp, kq, kr});
  std::vector<char> hit(candidates.size(), 0);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 8)
#endif
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(candidates.size()); ++i) {
    hit[static_cast<std::size_t>(i)] = ball_half_distance(candidates[static_cast<std::size_t>(i)]) < 1.0 - 1e-3;
  }
  std::vector<Idx3> out;
  for (std::size_t i = 0; i < candidates.size(); ++i)
    if (hit[i]) out.push_back(candidates[i]);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<DyadicIndex> ball_overlap_set(const DyadicIndex& idx) {
  std::vector<DyadicIndex> out;
  for (const Idx3& kk : ball_overlap_reference()) out.push_back({idx.j, imul(idx.k, kk)});
  return out;
}

int irreducible_depth(int j, const Idx3& k) {
  if (j < 0) throw std::domain_error("irreducible_depth: j >= 0 required");
  int J = j;
  Idx3 v = k;
  while (J > 0 && v.p % 2 == 0 && v.q % 2 == 0 && v.r % 4 == 0) {
    --J;
    v = {v.p / 2, v.q / 2, v.r / 4};
  }
  return J;
}

DyadicIndex irreducible(const DyadicIndex& idx) {
  if (idx.j < 0) throw std::domain_error("irreducible: j >= 0 required");
  int J = idx.j;
  Idx3 v = idx.k;
  while (J > 0 && v.p % 2 == 0 && v.q % 2 == 0 && v.r % 4 == 0) {
    --J;
    v = {v.p / 2, v.q / 2, v.r / 4};
  }
  return {J, v};
}

bool in_L0(int j, const Idx3& k) {
  const std::int64_t sp = std::int64_t{1} << j;
  const std::int64_t sr = std::int64_t{1} << (2 * j);
  return k.p >= 0 && k.p < sp && k.q >= 0 && k.q < sp && k.r >= 0 && k.r < sr;
}

std::int64_t count_L0(int j) {
  if (j < 0 || j > 15) throw std::domain_error("count_L0: j in [0,15]");
  return std::int64_t{1} << (4 * j);
}

std::int64_t count_irreducible(int J) {
  if (J < 0 || J > 15) throw std::domain_error("count_irreducible: J in [0,15]");
  if (J == 0) return 1;
  return std::int64_t{15} << (4 * (J - 1));
}

std::int64_t count_L0_enumerated(int j) {
  // scan a window one cell wider than the expected index box on every side
  const std::int64_t sp = (std::int64_t{1} << j) + 2;
  const std::int64_t sr = (std::int64_t{1} << (2 * j)) + 2;
  const std::int64_t total = sp * sp * sr;
  return scan::count_if(total, [=](std::int64_t t) {
    const std::int64_t kr = t % sr - 1;
    const std::int64_t rem = t / sr;
    const std::int64_t kq = rem % sp - 1;
    const std::int64_t kp = rem / sp - 1;
    const GPoint x = dyadic_point({j, {kp, kq, kr}});
    return x.p >= 0.0 && x.p < 1.0 && x.q >= 0.0 && x.q < 1.0 && x.r >= 0.0 && x.r < 1.0;
  });
}

std::int64_t count_irreducible_enumerated(int J) {
  const std::int64_t sp = std::int64_t{1} << J;
  const std::int64_t sr = std::int64_t{1} << (2 * J);
  const std::int64_t total = sp * sp * sr;
  return scan::count_if(total, [=](std::int64_t t) {
    const std::int64_t kr = t % sr;
    const std::int64_t rem = t / sr;
    const std::int64_t kq = rem % sp;
    const std::int64_t kp = rem / sp;
    return irreducible_depth(J, {kp, kq, kr}) == J;
  });
}

double rate_set_dimension(double xi) {
  if (!(xi >= 1.0)) throw std::domain_error("rate_set_dimension: xi >= 1 required");
  if (std::isinf(xi)) return 0.0;
  return static_cast<double>(constants::kHomDim) / xi;
}

RateResult approx_rate(const GPoint& x, const std::vector<int>& scales, int window) {
  if (window < 1) throw std::domain_error("approx_rate: window >= 1 required");
  if (scales.empty()) throw std::domain_error("approx_rate: scales must be nonempty");
  for (std::size_t i = 1; i < scales.size(); ++i)
    if (scales[i] <= scales[i - 1]) throw std::domain_error("approx_rate: scales must be increasing");

  RateResult res;
  const int wr = 2 * window;
  for (int j : scales) {
    const DyadicIndex c = locate(x, j);
    double best = std::numeric_limits<double>::infinity();
    DyadicIndex arg{j, c.k};
    for (std::int64_t dp = -window; dp <= window; ++dp)
      for (std::int64_t dq = -window; dq <= window; ++dq)
        for (std::int64_t dr = -wr; dr <= wr; ++dr) {
          DyadicIndex cand{j, {c.k.p + dp, c.k.q + dq, c.k.r + dr}};
          const double d = dist(dyadic_point(cand), x);
          if (d < best) {
            best = d;
            arg = cand;
          }
        }
    RateSample smp;
    smp.j = j;
    smp.min_dist = best;
    if (best == 0.0) {
      res.dyadic = true;
      smp.depth = irreducible(arg).j;
      smp.credit = std::numeric_limits<double>::infinity();
    } else {
      const DyadicIndex red = (arg.j >= 0) ? irreducible(arg) : arg;
      smp.depth = red.j;
      if (red.j >= 1 && best < constants::kCoveringConstant) {
        smp.credit = std::log2(constants::kCoveringConstant / best) / red.j;
      } else {
        smp.credit = 0.0;  // depth-0 approximants carry no attributable rate
      }
    }
    res.samples.push_back(smp);
  }
  if (res.dyadic) {
    res.xi_hat = std::numeric_limits<double>::infinity();
  } else {
    double m = 0.0;
    for (const auto& s : res.samples) m = std::max(m, s.credit);
    res.xi_hat = std::max(m, 1.0);
  }
  return res;
}

std::vector<int> rate_probe_scales(double xi, int depth) {
  std::vector<int> a;
  if (std::isinf(xi)) return a;
  if (xi < 1.25) {
    for (int m = 1; m <= depth && 2 * m <= 52; ++m) a.push_back(2 * m);
    return a;
  }
  int cur = 2;
  a.push_back(cur);
  while (static_cast<int>(a.size()) < depth) {
    int nxt = std::max(static_cast<int>(std::ceil(xi * cur)), cur + 1);
    if (nxt > 54) break;
    a.push_back(nxt);
    cur = nxt;
  }
  return a;
}

GPoint point_with_rate(double xi, int depth) {
  if (!(xi >= 1.0)) throw std::domain_error("point_with_rate: xi >= 1 required");
  if (depth < 2) throw std::domain_error("point_with_rate: depth >= 2 required");
  if (std::isinf(xi)) return dyadic_point({3, {3, 3, 3}});
  const std::vector<int> a = rate_probe_scales(xi, depth);
  double p = 0.0;
  for (auto it = a.rbegin(); it != a.rend(); ++it) p += pow2(-*it);
  return {p, 0.0, 0.0};
}

HitSet cube_hit_indices(int jp, const Idx3& kpp, int j) {
  if (jp < j) throw std::domain_error("cube_hit_indices: jp >= j required");
  const int D = jp - j;
  const std::int64_t s = std::int64_t{1} << D;
  const std::int64_t mp = floor_div(kpp.p, s);
  const std::int64_t mq = floor_div(kpp.q, s);
  const __int128 two_s = static_cast<__int128>(2) * s;
  const __int128 c0 = static_cast<__int128>(kpp.r) - two_s * mq * kpp.p + two_s * mp * kpp.q;
  const __int128 ca = static_cast<__int128>(2) * kpp.q - two_s * mq;
  const __int128 cb = static_cast<__int128>(-2) * kpp.p + two_s * mp;
  const __int128 four_d = static_cast<__int128>(s) * s;
  const __int128 w_inf = c0 + (ca < 0 ? ca : 0) + (cb < 0 ? cb : 0);
  const __int128 w_sup = c0 + (ca > 0 ? ca : 0) + (cb > 0 ? cb : 0) + 1;  // open
  HitSet h;
  h.mp = mp;
  h.mq = mq;
  h.r_lo = static_cast<std::int64_t>(floor_div128(w_inf, four_d));
  h.r_hi = static_cast<std::int64_t>(floor_div128(w_sup - 1, four_d));
  return h;
}

bool cube_contained(int jp, const Idx3& kpp, int j, const IdxSet& cells) {
  const HitSet h = cube_hit_indices(jp, kpp, j);
  for (std::int64_t mr = h.r_lo; mr <= h.r_hi; ++mr) {
    if (!cells.contains({h.mp, h.mq, mr})) return false;
  }
  return true;
}

BBox cells_bbox(int j, const IdxSet& cells) {
  BBox b;
  bool first = true;
  const double s = pow2(-j);
  const double s2 = s * s;
  for (const Idx3& m : cells) {
    const double plo = s * double(m.p), phi = s * double(m.p + 1);
    const double qlo = s * double(m.q), qhi = s * double(m.q + 1);
    const double rlo = s2 * double(m.r + std::min<std::int64_t>(2 * m.q, 0) + std::min<std::int64_t>(-2 * m.p, 0));
    const double rhi = s2 * double(m.r + 1 + std::max<std::int64_t>(2 * m.q, 0) + std::max<std::int64_t>(-2 * m.p, 0));
    if (first) {
      b = {plo, phi, qlo, qhi, rlo, rhi};
      first = false;
    } else {
      b.p_lo = std::min(b.p_lo, plo);
      b.p_hi = std::max(b.p_hi, phi);
      b.q_lo = std::min(b.q_lo, qlo);
      b.q_hi = std::max(b.q_hi, qhi);
      b.r_lo = std::min(b.r_lo, rlo);
      b.r_hi = std::max(b.r_hi, rhi);
    }
  }
  return b;
}

}  // namespace hmfa::lattice
