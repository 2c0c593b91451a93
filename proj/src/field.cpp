#include "hmfa/field.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "hmfa/scan.hpp"

namespace hmfa::synth {

void BesovParams::validate() const {
  if (!(p >= 1.0) || !(q >= 1.0)) throw std::domain_error("BesovParams: p,q >= 1 required");
  if (!(s > double(Q) / p)) throw std::domain_error("BesovParams: s > Q/p required");
}

Rational normalized(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::domain_error("Rational: zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  return {num, den};
}

double SurrogateWavelet::eval(const GPoint& y) const {
  const double u = gauge_norm(y);
  return amplitude * (1.0 - u * u) * std::exp(-u / decay_rate);
}

double estar(double x) {
  if (x >= 0.0 && x < 2.0) return 1.0;
  return std::floor(x);
}

namespace {
double pow2d(double e) { return std::exp2(e); }
}  // namespace

CoefficientField CoefficientField::zero(int j_min, int j_max, Support support) {
  CoefficientField f;
  f.kind_ = Kind::Zero;
  f.support_ = support;
  f.j_min_ = j_min;
  f.j_max_ = j_max;
  f.depth_monotone_ = true;
  return f;
}

CoefficientField CoefficientField::besov_saturating(const BesovParams& params, int j_max) {
  params.validate();
  CoefficientField f;
  f.kind_ = Kind::BesovSaturating;
  f.support_ = Support::L0;
  f.j_min_ = 1;  // j^-beta is singular at 0: coefficients vanish for j < 1
  f.j_max_ = j_max;
  f.depth_monotone_ = true;
  f.params_ = params;
  return f;
}

CoefficientField CoefficientField::monofractal_round(CoefficientField base, double s, int N) {
  if (N < 1) throw std::domain_error("monofractal_round: N >= 1 required");
  CoefficientField f;
  f.kind_ = Kind::MonofractalRound;
  f.support_ = base.support_;
  f.j_min_ = base.j_min_;
  f.j_max_ = base.j_max_;
  f.depth_monotone_ = base.depth_monotone();
  f.round_s_ = s;
  f.round_N_ = N;
  f.base_ = std::make_shared<CoefficientField>(std::move(base));
  return f;
}

CoefficientField CoefficientField::custom(std::function<double(int, int, const lattice::Idx3&)> rule,
                                          Support support, int j_min, int j_max,
                                          bool depth_monotone,
                                          std::function<double(int, int)> depth_value) {
  CoefficientField f;
  f.kind_ = Kind::Custom;
  f.support_ = support;
  f.j_min_ = j_min;
  f.j_max_ = j_max;
  f.depth_monotone_ = depth_monotone;
  f.rule_ = std::move(rule);
  f.depth_value_ = std::move(depth_value);
  return f;
}

double CoefficientField::log_correction_beta() const {
  if (kind_ == Kind::BesovSaturating && params_) return params_->beta();
  return 0.0;
}

bool CoefficientField::in_support(int j, const lattice::Idx3& k) const {
  if (j < j_min_ || j > j_max_) return false;
  if (support_ == Support::All) return true;
  return lattice::in_L0(j, k);
}

double CoefficientField::value(int eps, int j, const lattice::Idx3& k) const {
  if (j < j_min_ || j > j_max_) return 0.0;
  if (!overlay_.empty()) {
    auto it = overlay_.find({eps, j, k});
    if (it != overlay_.end()) return it->second.to_double();
  }
  if (support_ == Support::L0 && !lattice::in_L0(j, k)) return 0.0;
  switch (kind_) {
    case Kind::Zero:
      return 0.0;
    case Kind::BesovSaturating: {
      const BesovParams& pr = *params_;
      const int J = lattice::irreducible_depth(j, k);
      const double expo = -double(j) * (pr.s - pr.Q / pr.p) - double(J) * pr.Q / pr.p;
      return pow2d(expo) / std::pow(double(j), pr.beta());
    }
    case Kind::MonofractalRound: {
      const double v = base_->value(eps, j, k);
      const double scale = pow2d(double(j) * round_s_ + round_N_);
      return estar(scale * v) / scale;
    }
    case Kind::Custom:
      return rule_(eps, j, k);
  }
  return 0.0;
}

double CoefficientField::max_abs_value(int j, const lattice::Idx3& k) const {
  // rule values are eps-independent for the built-in kinds
  double m = std::abs(value(1, j, k));
  if (!overlay_.empty()) {
    for (int eps = 2; eps <= eps_count(); ++eps) m = std::max(m, std::abs(value(eps, j, k)));
  } else if (kind_ == Kind::Custom) {
    for (int eps = 2; eps <= eps_count(); ++eps) m = std::max(m, std::abs(value(eps, j, k)));
  }
  return m;
}

double CoefficientField::value_at_depth(int j, int J) const {
  if (!depth_monotone()) throw std::domain_error("value_at_depth: field is not depth-monotone");
  if (j < j_min_ || j > j_max_) return 0.0;
  switch (kind_) {
    case Kind::Zero:
      return 0.0;
    case Kind::BesovSaturating: {
      const BesovParams& pr = *params_;
      const double expo = -double(j) * (pr.s - pr.Q / pr.p) - double(J) * pr.Q / pr.p;
      return pow2d(expo) / std::pow(double(j), pr.beta());
    }
    case Kind::MonofractalRound: {
      const double v = base_->value_at_depth(j, J);
      const double scale = pow2d(double(j) * round_s_ + round_N_);
      return estar(scale * v) / scale;
    }
    case Kind::Custom:
      if (!depth_value_) throw std::domain_error("value_at_depth: no per-depth rule");
      return depth_value_(j, J);
  }
  return 0.0;
}

void CoefficientField::set_overlay(int eps, int j, const lattice::Idx3& k, const Rational& v) {
  if (eps < 1 || eps > eps_count()) throw std::invalid_argument("overlay: eps out of range");
  if (j < j_min_ || j > j_max_) throw std::invalid_argument("overlay: j outside j-range");
  if (support_ == Support::L0 && !lattice::in_L0(j, k))
    throw std::invalid_argument("overlay: site outside the L0 support");
  overlay_[{eps, j, k}] = v;
}

namespace {

// sum over L0 sites at scale j of |d|^p, all eps (exact depth-class path)
double scale_lp_sum_closed(const CoefficientField& field, const BesovParams& params, int j) {
  double s = 0.0;
  for (int J = 0; J <= j; ++J) {
    const double v = std::abs(field.value_at_depth(j, J));
    if (v == 0.0) continue;
    s += static_cast<double>(lattice::count_irreducible(J)) * std::pow(v, params.p);
  }
  return 15.0 * s;
}

double scale_lp_sum_brute(const CoefficientField& field, const BesovParams& params, int j) {
  const std::int64_t sp = std::int64_t{1} << j;
  const std::int64_t sr = std::int64_t{1} << (2 * j);
  const std::int64_t total = sp * sp * sr;
  return scan::blocked_sum(total, [&, j](std::int64_t t) {
    const std::int64_t kr = t % sr;
    const std::int64_t rem = t / sr;
    const lattice::Idx3 k{rem / sp, rem % sp, kr};
    double site = 0.0;
    for (int eps = 1; eps <= field.eps_count(); ++eps) {
      const double v = std::abs(field.value(eps, j, k));
      if (v != 0.0) site += std::pow(v, params.p);
    }
    return site;
  });
}

double lq_of(const std::vector<std::pair<int, double>>& a, double q) {
  if (std::isinf(q)) {
    double m = 0.0;
    for (const auto& [j, v] : a) m = std::max(m, v);
    return m;
  }
  double s = 0.0;
  for (const auto& [j, v] : a) s += std::pow(v, q);
  return std::pow(s, 1.0 / q);
}

}  // namespace

SeqNorm besov_seq_norm(const CoefficientField& field, const BesovParams& params, int j_lo,
                       int j_hi) {
  SeqNorm out;
  const bool overlay_only = field.kind() == CoefficientField::Kind::Zero;
  for (int j = std::max(j_lo, field.j_min()); j <= std::min(j_hi, field.j_max()); ++j) {
    double lp = 0.0;
    if (field.depth_monotone() && field.support() == Support::L0) {
      lp = scale_lp_sum_closed(field, params, j);
    } else if (overlay_only) {
      for (const auto& [key, v] : field.overlay())
        if (key.j == j) lp += std::pow(std::abs(v.to_double()), params.p);
    } else if (field.support() == Support::L0 && j <= 6) {
      lp = scale_lp_sum_brute(field, params, j);  // overlays included via value()
    } else {
      throw std::domain_error(
          "besov_seq_norm: need a depth-monotone rule on L0 support (or j <= 6 for enumeration)");
    }
    const double aj = pow2d(double(j) * (params.s - params.Q / params.p)) * std::pow(lp, 1.0 / params.p);
    out.a.emplace_back(j, aj);
  }
  out.lq_aggregate = lq_of(out.a, params.q);
  return out;
}

SeqNorm besov_seq_norm_brute(const CoefficientField& field, const BesovParams& params, int j_lo,
                             int j_hi) {
  if (j_hi > 6) throw std::domain_error("besov_seq_norm_brute: j_hi <= 6");
  if (field.support() != Support::L0)
    throw std::domain_error("besov_seq_norm_brute: L0 support required");
  SeqNorm out;
  for (int j = std::max(j_lo, field.j_min()); j <= std::min(j_hi, field.j_max()); ++j) {
    const double lp = scale_lp_sum_brute(field, params, j);
    const double aj = pow2d(double(j) * (params.s - params.Q / params.p)) * std::pow(lp, 1.0 / params.p);
    out.a.emplace_back(j, aj);
  }
  out.lq_aggregate = lq_of(out.a, params.q);
  return out;
}

SupNormResult holder_sup_norm(const CoefficientField& field, double s, int j_lo, int j_hi) {
  SupNormResult res;
  std::vector<std::pair<int, double>> per_scale;
  for (int j = std::max(j_lo, field.j_min()); j <= std::min(j_hi, field.j_max()); ++j) {
    double sup = 0.0;
    if (field.depth_monotone()) {
      // nonincreasing in depth: attained at the minimal depth present
      // (depth 0, the origin class, is always present on L0 and All supports)
      sup = std::abs(field.value_at_depth(j, 0));
    } else if (field.kind() == CoefficientField::Kind::Zero) {
      sup = 0.0;  // overlay-only; handled below
    } else if (field.support() == Support::L0 && j <= 6) {
      const std::int64_t sp = std::int64_t{1} << j;
      const std::int64_t sr = std::int64_t{1} << (2 * j);
      const std::int64_t total = sp * sp * sr;
      sup = -scan::min_reduce(total, [&, j](std::int64_t t) {
        const std::int64_t kr = t % sr;
        const std::int64_t rem = t / sr;
        return -field.max_abs_value(j, {rem / sp, rem % sp, kr});
      });
    } else {
      throw std::domain_error("holder_sup_norm: per-scale supremum not computable");
    }
    for (const auto& [key, v] : field.overlay())
      if (key.j == j) sup = std::max(sup, std::abs(v.to_double()));
    per_scale.emplace_back(j, pow2d(double(j) * s) * sup);
  }
  for (const auto& [j, v] : per_scale) {
    if (v > res.value) {
      res.value = v;
      res.attained_j = j;
    }
  }
  // growth across the window top signals divergence of the sup over all j
  if (per_scale.size() >= 4) {
    const double head = per_scale[per_scale.size() / 2].second;
    const double tail = per_scale.back().second;
    if (tail > 4.0 * std::max(head, 1e-300) && tail > 1e3 * per_scale.front().second) {
      res.divergent = true;
    }
  }
  return res;
}

double eval_function(const CoefficientField& field, const GPoint& x, const SurrogateWavelet& psi,
                     int j_cap) {
  double total = 0.0;
  const double reach = 10.0 * psi.decay_rate;  // truncation: exp tail below 5e-5 of peak
  const auto w = static_cast<std::int64_t>(std::ceil(reach)) + 1;
  const auto wr = static_cast<std::int64_t>(std::ceil(reach * reach)) + 1;
  for (int j = field.j_min(); j <= std::min(j_cap, field.j_max()); ++j) {
    const double two_j = std::exp2(double(j));
    const double up = x.p * two_j, uq = x.q * two_j, ur = x.r * two_j * two_j;
    const auto cp = static_cast<std::int64_t>(std::floor(up));
    const auto cq = static_cast<std::int64_t>(std::floor(uq));
    for (std::int64_t kp = cp - w; kp <= cp + w; ++kp)
      for (std::int64_t kq = cq - w; kq <= cq + w; ++kq) {
        // shear-corrected column center in the r index
        const auto cr = static_cast<std::int64_t>(
            std::floor(ur - 2.0 * (double(kq) * up - double(kp) * uq)));
        for (std::int64_t dr = -wr; dr <= wr; ++dr) {
          const lattice::Idx3 k{kp, kq, cr + dr};
          if (!field.in_support(j, k) && field.overlay().empty()) continue;
          const GPoint base = lattice::dyadic_point({j, k});
          const GPoint arg = dilate(two_j, mul(inv(base), x));
          if (gauge_norm(arg) > reach) continue;
          const double psi_v = psi.eval(arg);
          if (field.kind() != CoefficientField::Kind::Custom && field.overlay().empty()) {
            // built-in rules are identical across eps
            const double de = field.value(1, j, k);
            if (de != 0.0) total += field.eps_count() * de * psi_v;
          } else {
            for (int eps = 1; eps <= field.eps_count(); ++eps) {
              const double de = field.value(eps, j, k);
              if (de != 0.0) total += de * psi_v;
            }
          }
        }
      }
  }
  return total;
}

}  // namespace hmfa::synth
