#include "hmfa/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

#include "hmfa/scan.hpp"

namespace hmfa::analysis {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double pow2d(double e) { return std::exp2(e); }

lattice::IdxSet lambda_cells(const GPoint& x, int j) {
  lattice::IdxSet s;
  for (const auto& idx : lattice::neighborhood(lattice::locate(x, j))) s.insert(idx.k);
  return s;
}

// first n >= lo*den (values are exact dyadics at the scales used here)
std::int64_t range_begin(double lo, double den) { return static_cast<std::int64_t>(std::ceil(lo * den)); }
// last n with n < hi*den
std::int64_t range_end(double hi, double den) {
  const double v = hi * den;
  const double c = std::ceil(v);
  return static_cast<std::int64_t>(c == v ? c - 1 : c - 1);
}

// max over allowed scales of |value_at_depth|
double best_depth_value(const synth::CoefficientField& field, int J, int jp_from, int j_cap) {
  double best = 0.0;
  for (int jp = std::max(jp_from, field.j_min()); jp <= std::min(j_cap, field.j_max()); ++jp) {
    best = std::max(best, std::abs(field.value_at_depth(jp, J)));
  }
  return best;
}

double leaders_exact(const synth::CoefficientField& field, const GPoint& x, int j, int j_cap) {
  if (!field.depth_monotone())
    throw std::domain_error("leaders: exact-structured mode requires a depth-monotone field");
  const lattice::IdxSet cells = lambda_cells(x, j);
  const lattice::BBox bb = lattice::cells_bbox(j, cells);
  const bool l0 = field.support() == synth::Support::L0;
  const double p_lo = l0 ? std::max(bb.p_lo, 0.0) : bb.p_lo;
  const double p_hi = l0 ? std::min(bb.p_hi, 1.0) : bb.p_hi;
  const double q_lo = l0 ? std::max(bb.q_lo, 0.0) : bb.q_lo;
  const double q_hi = l0 ? std::min(bb.q_hi, 1.0) : bb.q_hi;
  const double r_lo = l0 ? std::max(bb.r_lo, 0.0) : bb.r_lo;
  const double r_hi = l0 ? std::min(bb.r_hi, 1.0) : bb.r_hi;

  double best = 0.0;
  const int depth_cap = std::min(j + 8, j_cap);
  for (int J = 0; J <= depth_cap; ++J) {
    const double cand = best_depth_value(field, J, std::max(j, J), j_cap);
    if (cand <= best) break;  // depth-monotone: deeper classes cannot beat
    if (p_lo >= p_hi || q_lo >= q_hi || r_lo >= r_hi) continue;
    const double sp = pow2d(J), sr = pow2d(2 * J);
    const std::int64_t kp0 = range_begin(p_lo, sp), kp1 = range_end(p_hi, sp);
    const std::int64_t kq0 = range_begin(q_lo, sp), kq1 = range_end(q_hi, sp);
    const std::int64_t kr0 = range_begin(r_lo, sr), kr1 = range_end(r_hi, sr);
    for (std::int64_t Kp = kp0; Kp <= kp1; ++Kp)
      for (std::int64_t Kq = kq0; Kq <= kq1; ++Kq)
        for (std::int64_t Kr = kr0; Kr <= kr1; ++Kr) {
          const lattice::Idx3 K{Kp, Kq, Kr};
          if (lattice::irreducible_depth(J, K) != J) continue;
          // tau: first scale whose cube (based at this point) fits in Lambda
          for (int jp = std::max(j, J); jp <= j_cap; ++jp) {
            const int D = jp - J;
            const lattice::Idx3 kpp{Kp << D, Kq << D, Kr << (2 * D)};
            if (!lattice::cube_contained(jp, kpp, j, cells)) continue;
            // containment is monotone from tau on (same-base cubes nest)
            best = std::max(best, best_depth_value(field, J, jp, j_cap));
            break;
          }
        }
  }
  return best;
}

double leaders_windowed(const synth::CoefficientField& field, const GPoint& x, int j, int j_cap,
                        int delta) {
  if (delta > 8) throw std::domain_error("leaders: windowed mode refuses delta > 8 (cost 2^{4 delta})");
  const lattice::IdxSet cells = lambda_cells(x, j);
  double best = 0.0;
  for (int jp = j; jp <= std::min({j + delta, j_cap, field.j_max()}); ++jp) {
    const int D = jp - j;
    const std::int64_t col = std::int64_t{1} << D;          // sub-columns per cell edge
    const std::int64_t rspan = std::int64_t{1} << (2 * D);  // r cells per w unit
    for (const lattice::Idx3& m : cells) {
      for (std::int64_t ap = 0; ap < col; ++ap)
        for (std::int64_t aq = 0; aq < col; ++aq) {
          const std::int64_t kp = m.p * col + ap;
          const std::int64_t kq = m.q * col + aq;
          // r center from the exact column transform; +-2 rspan margin for shear
          const std::int64_t center =
              m.r * rspan + 2 * col * (m.q * kp - m.p * kq);
          for (std::int64_t kr = center - 8 * col - 2; kr <= center + rspan + 8 * col + 2; ++kr) {
            const lattice::Idx3 kpp{kp, kq, kr};
            if (!lattice::cube_contained(jp, kpp, j, cells)) continue;
            best = std::max(best, field.max_abs_value(jp, kpp));
          }
        }
    }
  }
  return best;
}

std::vector<std::pair<double, double>> corrected_samples(
    const std::vector<std::pair<int, double>>& raw, double beta) {
  std::vector<std::pair<double, double>> pts;
  for (const auto& [j, log2v] : raw) {
    pts.emplace_back(double(j), -log2v - beta * std::log2(double(j)));
  }
  return pts;
}

ExponentEstimate estimate_from_samples(const std::vector<std::pair<int, double>>& samples,
                                       FitMode mode, double beta) {
  ExponentEstimate est;
  est.mode = mode;
  est.samples = samples;
  if (samples.size() < 2) {
    est.infinite = true;
    est.value = kInf;
    return est;
  }
  if (mode == FitMode::Raw) {
    // anchored liminf slope: min over the window tail of the chord from the
    // first sample (robust to the constant factor in |d| <= C 2^{-js})
    const auto& [j0, y0] = samples.front();
    double mn = kInf;
    const std::size_t tail_from = samples.size() / 2;
    for (std::size_t i = std::max<std::size_t>(1, tail_from); i < samples.size(); ++i) {
      const auto& [j, y] = samples[i];
      mn = std::min(mn, (-y - -y0) / double(j - j0));
    }
    est.value = mn;
    double c = kInf;
    for (const auto& [j, y] : samples) c = std::min(c, -y - est.value * j);
    est.residual = 0.0;
    for (const auto& [j, y] : samples) est.residual = std::max(est.residual, std::abs(-y - est.value * j - c));
    return est;
  }
  const auto pts = corrected_samples(samples, beta);
  est.value = lower_envelope_slope(pts);
  double c = kInf;
  for (const auto& [xx, yy] : pts) c = std::min(c, yy - est.value * xx);
  est.residual = 0.0;
  for (const auto& [xx, yy] : pts)
    est.residual = std::max(est.residual, std::abs(yy - est.value * xx - c));
  return est;
}

}  // namespace

double leaders(const synth::CoefficientField& field, const GPoint& x, int j, int j_cap,
               LeaderMode mode, int delta) {
  if (j > j_cap) throw std::domain_error("leaders: j <= j_cap required");
  if (mode == LeaderMode::ExactStructured) return leaders_exact(field, x, j, j_cap);
  return leaders_windowed(field, x, j, j_cap, delta);
}

ExponentEstimate global_exponent(const synth::CoefficientField& field, int j_lo, int j_hi,
                                 FitMode mode) {
  std::vector<std::pair<int, double>> samples;
  for (int j = std::max(j_lo, field.j_min()); j <= std::min(j_hi, field.j_max()); ++j) {
    double sup = 0.0;
    if (field.depth_monotone()) {
      sup = std::abs(field.value_at_depth(j, 0));
    } else if (field.kind() == synth::CoefficientField::Kind::Zero) {
      sup = 0.0;
    } else if (field.support() == synth::Support::L0 && j <= 6) {
      const std::int64_t sp = std::int64_t{1} << j;
      const std::int64_t sr = std::int64_t{1} << (2 * j);
      const std::int64_t total = sp * sp * sr;
      sup = scan::max_reduce(total, [&, j](std::int64_t t) {
        const std::int64_t kr = t % sr;
        const std::int64_t rem = t / sr;
        return field.max_abs_value(j, {rem / sp, rem % sp, kr});
      });
    } else {
      throw std::domain_error("global_exponent: per-scale suprema not computable");
    }
    for (const auto& [key, v] : field.overlay())
      if (key.j == j) sup = std::max(sup, std::abs(v.to_double()));
    if (sup > 0.0) samples.emplace_back(j, std::log2(sup));
  }
  if (samples.empty()) {
    ExponentEstimate est;
    est.infinite = true;
    est.value = kInf;
    est.mode = mode;
    return est;
  }
  return estimate_from_samples(samples, mode, field.log_correction_beta());
}

ExponentEstimate pointwise_exponent(const synth::CoefficientField& field, const GPoint& x,
                                    int j_lo, int j_hi, FitMode mode, LeaderMode lmode,
                                    int j_cap) {
  if (j_cap < 0) j_cap = std::min(j_hi + 8, field.j_max());
  std::vector<std::pair<int, double>> samples;
  bool any_zero = false;
  for (int j = j_lo; j <= j_hi; ++j) {
    const double D = leaders(field, x, j, j_cap, lmode);
    if (D > 0.0) {
      samples.emplace_back(j, std::log2(D));
    } else {
      any_zero = true;
    }
  }
  if (samples.empty()) {
    ExponentEstimate est;
    est.infinite = true;
    est.value = kInf;
    est.mode = mode;
    return est;
  }
  (void)any_zero;
  if (samples.size() < 4) throw std::runtime_error("pointwise_exponent: fewer than 4 usable scales");
  return estimate_from_samples(samples, mode, field.log_correction_beta());
}

TwoRegimeResult two_regime_check(const synth::CoefficientField& field, const GPoint& x0, double s,
                                 double R, int j_lo, int j_hi) {
  if (!(R > 0.0)) throw std::domain_error("two_regime_check: R > 0 required");
  TwoRegimeResult res;
  const bool l0 = field.support() == synth::Support::L0;

  if (field.depth_monotone()) {
    // per depth J: the binding site is the nearest depth-J irreducible point
    const int J_hi = std::min(j_hi, field.j_max());
    std::vector<double> delta_min(static_cast<std::size_t>(J_hi) + 1, kInf);
    for (int J = 0; J <= J_hi; ++J) {
      const lattice::DyadicIndex c = lattice::locate(x0, J);
      for (std::int64_t dp = -4; dp <= 4; ++dp)
        for (std::int64_t dq = -4; dq <= 4; ++dq)
          for (std::int64_t dr = -10; dr <= 10; ++dr) {
            const lattice::Idx3 K{c.k.p + dp, c.k.q + dq, c.k.r + dr};
            if (lattice::irreducible_depth(J, K) != J) continue;
            if (l0 && !lattice::in_L0(J, K)) continue;
            const double d = dist(lattice::dyadic_point({J, K}), x0);
            if (d < R) delta_min[static_cast<std::size_t>(J)] = std::min(delta_min[static_cast<std::size_t>(J)], d);
          }
    }
    for (int j = std::max(j_lo, field.j_min()); j <= std::min(j_hi, field.j_max()); ++j) {
      double cj = 0.0;
      for (int J = 0; J <= j; ++J) {
        if (delta_min[static_cast<std::size_t>(J)] == kInf) continue;
        const double v = std::abs(field.value_at_depth(j, J));
        if (v == 0.0) continue;
        const double denom = std::pow(1.0 + pow2d(j) * delta_min[static_cast<std::size_t>(J)], s);
        cj = std::max(cj, v * pow2d(double(j) * s) / denom);
      }
      if (cj > 0.0) res.c_per_j.emplace_back(j, cj);
    }
  } else {
    for (int j = std::max(j_lo, field.j_min()); j <= std::min(j_hi, field.j_max()); ++j) {
      const double w = R * pow2d(j);
      if (w > 32.0) throw std::domain_error("two_regime_check: R 2^j window too large at scale " + std::to_string(j));
      const auto iw = static_cast<std::int64_t>(std::ceil(w)) + 1;
      const lattice::DyadicIndex c = lattice::locate(x0, j);
      double cj = 0.0;
      for (std::int64_t dp = -iw; dp <= iw; ++dp)
        for (std::int64_t dq = -iw; dq <= iw; ++dq)
          for (std::int64_t dr = -2 * iw * iw - 4 * iw; dr <= 2 * iw * iw + 4 * iw; ++dr) {
            const lattice::Idx3 k{c.k.p + dp, c.k.q + dq, c.k.r + dr};
            const double d = dist(lattice::dyadic_point({j, k}), x0);
            if (d >= R) continue;
            const double v = field.max_abs_value(j, k);
            if (v == 0.0) continue;
            cj = std::max(cj, v * pow2d(double(j) * s) / std::pow(1.0 + pow2d(j) * d, s));
          }
      if (cj > 0.0) res.c_per_j.emplace_back(j, cj);
    }
  }

  for (const auto& [j, cj] : res.c_per_j) res.fitted_C = std::max(res.fitted_C, cj);
  if (res.c_per_j.size() >= 3) {
    std::vector<std::pair<double, double>> pts;
    for (const auto& [j, cj] : res.c_per_j) pts.emplace_back(double(j), std::log2(cj));
    res.growth_slope = lls(pts).first;
    res.holds = res.growth_slope <= 0.1;
  } else {
    res.holds = !res.c_per_j.empty();
  }
  return res;
}

std::int64_t coefficient_counting(const synth::CoefficientField& field, int j, double h,
                                  double C0) {
  const double threshold = C0 * pow2d(-double(j) * h);
  if (j < field.j_min() || j > field.j_max()) return 0;
  if (field.depth_monotone() && field.support() == synth::Support::L0) {
    std::int64_t total = 0;
    for (int J = 0; J <= j; ++J) {
      if (std::abs(field.value_at_depth(j, J)) >= threshold) total += lattice::count_irreducible(J);
    }
    return total;
  }
  if (field.support() == synth::Support::L0 && j <= 6) {
    const std::int64_t sp = std::int64_t{1} << j;
    const std::int64_t sr = std::int64_t{1} << (2 * j);
    const std::int64_t total = sp * sp * sr;
    return scan::count_if(total, [&, j](std::int64_t t) {
      const std::int64_t kr = t % sr;
      const std::int64_t rem = t / sr;
      return field.max_abs_value(j, {rem / sp, rem % sp, kr}) >= threshold;
    });
  }
  throw std::domain_error("coefficient_counting: depth-class decomposition unavailable and j > 6");
}

double empirical_embedding_constant(const synth::CoefficientField& field,
                                    const synth::BesovParams& params, int j_lo, int j_hi) {
  double c0 = 0.0;
  for (int j = std::max(j_lo, field.j_min()); j <= std::min(j_hi, field.j_max()); ++j) {
    double sup = 0.0;
    if (field.depth_monotone()) {
      sup = std::abs(field.value_at_depth(j, 0));
    } else if (field.support() == synth::Support::L0 && j <= 6) {
      const std::int64_t sp = std::int64_t{1} << j;
      const std::int64_t sr = std::int64_t{1} << (2 * j);
      sup = scan::max_reduce(sp * sp * sr, [&, j](std::int64_t t) {
        const std::int64_t kr = t % sr;
        const std::int64_t rem = t / sr;
        return field.max_abs_value(j, {rem / sp, rem % sp, kr});
      });
    } else {
      throw std::domain_error("empirical_embedding_constant: suprema not computable");
    }
    c0 = std::max(c0, pow2d(double(j) * (params.s - params.Q / params.p)) * sup);
  }
  return c0;
}

double besov_spectrum_bound(double h, const synth::BesovParams& params) {
  const double edge = params.s - params.Q / params.p;
  if (h < edge) return -kInf;
  return std::min(double(params.Q), params.p * (h - edge));
}

SpectrumEstimate counting_spectrum(const synth::CoefficientField& field, int j_lo, int j_hi,
                                   const std::vector<double>& h_grid,
                                   std::optional<double> C0_threshold) {
  SpectrumEstimate out;
  const bool has_params = field.params().has_value();
  const synth::BesovParams params = has_params ? *field.params() : synth::BesovParams{};
  double C0;
  if (C0_threshold) {
    C0 = *C0_threshold;
  } else {
    // empirical embedding constant over the upper part of the window (the
    // first scales carry constant pollution)
    C0 = empirical_embedding_constant(field, params, std::min(j_lo + 2, j_hi), j_hi);
  }
  out.C0 = C0;

  double lemma_A = 0.0;
  if (has_params) {
    const synth::SeqNorm sn = synth::besov_seq_norm(field, params, j_lo, j_hi);
    for (const auto& [j, aj] : sn.a) lemma_A = std::max(lemma_A, aj);
  }
  out.lemma_margin = -kInf;

  const double beta_log = field.log_correction_beta();
  for (double h : h_grid) {
    std::vector<std::pair<double, double>> pts;
    for (int j = j_lo; j <= j_hi; ++j) {
      const std::int64_t n = coefficient_counting(field, j, h, C0);
      if (n > 0) {
        pts.emplace_back(double(j),
                         std::log2(double(n)) + params.p * beta_log * std::log2(double(j)));
      }
      if (has_params && n > 0) {
        const double cap = params.p * (std::log2(lemma_A) - std::log2(C0)) +
                           double(j) * params.p * (h - params.s + params.Q / params.p);
        const double margin = std::log2(double(n)) - cap;
        out.lemma_margin = std::max(out.lemma_margin, margin);
        if (margin > 1e-9) out.lemma_counts_ok = false;
      }
    }
    out.h.push_back(h);
    out.bound.push_back(besov_spectrum_bound(h, params));
    if (pts.size() < 4) {
      out.d_hat.push_back(-kInf);
    } else {
      out.d_hat.push_back(lls(pts).first);
    }
  }
  return out;
}

// ---- Taylor ----

DerivativeTable derivative_table(const std::function<double(const GPoint&)>& f, const GPoint& x0,
                                 int order, double step1, double step2) {
  using enum HDir;
  DerivativeTable t;
  auto d = [&](std::initializer_list<HDir> w, double step) {
    std::vector<HDir> word(w);
    return horizontal_derivative(f, x0, word, step);
  };
  t.f = f(x0);
  if (order >= 1) {
    t.X = d({X}, step1);
    t.Y = d({Y}, step1);
  }
  if (order >= 2) {
    t.XX = d({X, X}, step2);
    t.XY = d({X, Y}, step2);
    t.YY = d({Y, Y}, step2);
    t.Z = d({Z}, step1);
  }
  if (order >= 3) {
    t.XXX = d({X, X, X}, step2);
    t.XXY = d({X, X, Y}, step2);
    t.XYY = d({X, Y, Y}, step2);
    t.YYY = d({Y, Y, Y}, step2);
    t.XZ = d({X, Z}, step2);
    t.YZ = d({Y, Z}, step2);
  }
  return t;
}

double Poly::eval(const GPoint& y) const {
  double s = 0.0;
  for (const auto& [mono, c] : coef) {
    double t = c;
    for (int i = 0; i < mono[0]; ++i) t *= y.p;
    for (int i = 0; i < mono[1]; ++i) t *= y.q;
    for (int i = 0; i < mono[2]; ++i) t *= y.r;
    s += t;
  }
  return s;
}

Poly taylor_poly(const DerivativeTable& t, int order) {
  if (order < 0 || order > 3) throw std::domain_error("taylor_poly: order must be in {0,1,2,3}");
  Poly P;
  auto add = [&](int a, int b, int c, double v) {
    if (v != 0.0) P.coef[{a, b, c}] += v;
  };
  add(0, 0, 0, t.f);
  if (order >= 1) {
    add(1, 0, 0, t.X);
    add(0, 1, 0, t.Y);
  }
  if (order >= 2) {
    add(2, 0, 0, t.XX / 2.0);
    add(1, 1, 0, t.XY);
    add(0, 2, 0, t.YY / 2.0);
    add(1, 1, 0, 2.0 * t.Z);  // (2pq + r) Z f
    add(0, 0, 1, t.Z);
  }
  if (order >= 3) {
    add(3, 0, 0, t.XXX / 6.0);
    add(2, 1, 0, t.XXY / 2.0);
    add(1, 2, 0, t.XYY / 2.0);
    add(0, 3, 0, t.YYY / 6.0);
    add(2, 1, 0, 2.0 * t.XZ);  // (2pq + r)(p XZ + q YZ) f
    add(1, 2, 0, 2.0 * t.YZ);
    add(1, 0, 1, t.XZ);
    add(0, 1, 1, t.YZ);
  }
  return P;
}

double taylor_remainder_slope(const std::function<double(const GPoint&)>& f, const GPoint& x0,
                              int order, std::span<const double> radii, int n_dirs) {
  if (order > 3) throw std::domain_error("taylor_remainder_slope: order <= 3");
  if (radii.size() < 3) throw std::domain_error("taylor_remainder_slope: need >= 3 radii");
  const DerivativeTable t = derivative_table(f, x0, order);
  const Poly P = taylor_poly(t, order);

  const int n_alpha = std::max(4, n_dirs / 24);
  const int n_theta = 24;
  std::vector<GPoint> dirs;
  for (int ia = 0; ia < n_alpha; ++ia) {
    const double alpha = -constants::kPi / 2 + constants::kPi * (ia + 0.5) / n_alpha;
    const double rad = std::sqrt(std::abs(std::cos(alpha)));
    for (int it = 0; it < n_theta; ++it) {
      const double theta = 2.0 * constants::kPi * it / n_theta;
      dirs.push_back({rad * std::cos(theta), rad * std::sin(theta), std::sin(alpha)});
    }
  }

  const double scale0 = 1.0 + std::abs(t.f);
  std::vector<std::pair<double, double>> pts;
  bool all_tiny = true;
  for (double rho : radii) {
    double m = 0.0;
    for (const GPoint& u : dirs) {
      const GPoint y = dilate(rho, u);
      m = std::max(m, std::abs(f(mul(x0, y)) - P.eval(y)));
    }
    if (m > 1e-11 * scale0) all_tiny = false;
    if (m > 0.0) pts.emplace_back(std::log2(rho), std::log2(m));
  }
  if (all_tiny) return kInf;
  if (pts.size() < 2) return kInf;
  return lls(pts).first;
}

double hausdorff_premeasure(std::span<const GPoint> points, double s_exponent, double eta) {
  if (!(eta > 0.0)) throw std::domain_error("hausdorff_premeasure: eta > 0 required");
  if (points.empty()) return 0.0;
  // minimal j with 13^{1/4} 2^{-j} <= eta
  const int j = static_cast<int>(std::ceil(std::log2(constants::kCubeDiameterUnit / eta)));
  std::set<std::tuple<std::int64_t, std::int64_t, std::int64_t>> occupied;
  for (const GPoint& x : points) {
    const lattice::DyadicIndex idx = lattice::locate(x, j);
    occupied.insert({idx.k.p, idx.k.q, idx.k.r});
  }
  return static_cast<double>(occupied.size()) * std::pow(lattice::cube_diameter(j), s_exponent);
}

std::pair<double, double> lls(const std::vector<std::pair<double, double>>& pts) {
  const double n = static_cast<double>(pts.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [x, y] : pts) {
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) return {0.0, pts.empty() ? 0.0 : sy / n};
  const double a = (n * sxy - sx * sy) / denom;
  const double b = (sy - a * sx) / n;
  return {a, b};
}

double lower_envelope_slope(const std::vector<std::pair<double, double>>& pts) {
  if (pts.size() < 2) return 0.0;
  std::vector<std::pair<double, double>> hull;
  for (const auto& pt : pts) {
    while (hull.size() >= 2) {
      const auto& [x1, y1] = hull[hull.size() - 2];
      const auto& [x2, y2] = hull[hull.size() - 1];
      if ((y2 - y1) * (pt.first - x1) >= (pt.second - y1) * (x2 - x1)) {
        hull.pop_back();
      } else {
        break;
      }
    }
    hull.push_back(pt);
  }
  if (hull.size() < 2) return 0.0;
  struct Edge {
    double span;
    double slope;
  };
  std::vector<Edge> edges;
  for (std::size_t i = 0; i + 1 < hull.size(); ++i) {
    const double span = hull[i + 1].first - hull[i].first;
    edges.push_back({span, (hull[i + 1].second - hull[i].second) / span});
  }
  for (double min_span : {3.0, 2.0}) {
    double best = kInf;
    bool any = false;
    for (const Edge& e : edges) {
      if (e.span >= min_span) {
        best = std::min(best, e.slope);
        any = true;
      }
    }
    if (any) return best;
  }
  const Edge* longest = &edges.front();
  for (const Edge& e : edges)
    if (e.span > longest->span) longest = &e;
  return longest->slope;
}

}  // namespace hmfa::analysis
