#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hmfa/lattice.hpp"

// Coefficient fields: assignments (eps,j,k) -> d, represented procedurally
// (scales j >= 8 have more than 2^32 sites, so fields are rules, never
// materialized arrays) with a sparse exact overlay for hand-crafted cases.
namespace hmfa::synth {

struct BesovParams {
  double s = 2.0;
  double p = 2.0;
  double q = 2.0;
  int Q = 4;

  double beta() const { return 1.0 / p + 2.0 / q; }
  // throws std::domain_error unless p,q >= 1 and s > Q/p
  void validate() const;
};

// exact rational overlay value
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
  friend bool operator==(const Rational&, const Rational&) = default;
};

Rational normalized(std::int64_t num, std::int64_t den);

struct SurrogateWavelet {
  double decay_rate = 1.0;         // r0
  double amplitude = 1.0;          // C0
  int vanishing_moment_order = 0;  // nominal only; no moment machinery is built on it
  // oscillating prefactor (1 - ||y||^2) * exp(-||y||/r0), scaled by amplitude;
  // satisfies |psi| <= C0' exp(-||y||/r0') by construction. Plotting aid only:
  // no regularity claim is derived from point values.
  double eval(const GPoint& y) const;
};

enum class Support { L0, All };

struct OverlayKey {
  int eps = 1;
  int j = 0;
  lattice::Idx3 k;

  friend auto operator<=>(const OverlayKey&, const OverlayKey&) = default;
};

class CoefficientField {
 public:
  enum class Kind { Zero, BesovSaturating, MonofractalRound, Custom };

  static CoefficientField zero(int j_min = 1, int j_max = 24, Support support = Support::L0);

  // d(eps,j,k) = 2^{-j(s-Q/p) - J Q/p} / j^beta for x_{j,k} in [0,1)^3 and
  // j >= 1 (0 otherwise), J the irreducible depth of (j,k); identical across
  // eps; depth-monotone.
  static CoefficientField besov_saturating(const BesovParams& params, int j_max = 24);

  // coefficient-wise rounding 2^{-js-N} E*(2^{js+N} d) applied on the base
  // field's support; E* is the non-zero integer part.
  static CoefficientField monofractal_round(CoefficientField base, double s, int N);

  // test/extension hook: arbitrary rule; depth_value optional per-depth form
  static CoefficientField custom(std::function<double(int, int, const lattice::Idx3&)> rule,
                                 Support support, int j_min, int j_max, bool depth_monotone,
                                 std::function<double(int, int)> depth_value = nullptr);

  Kind kind() const { return kind_; }
  Support support() const { return support_; }
  int j_min() const { return j_min_; }
  int j_max() const { return j_max_; }
  int eps_count() const { return 15; }
  bool depth_monotone() const { return depth_monotone_ && overlay_.empty(); }
  const std::optional<BesovParams>& params() const { return params_; }
  double round_s() const { return round_s_; }
  int round_N() const { return round_N_; }

  // log-factor exponent for scale fits: beta for the saturating rule, else 0
  double log_correction_beta() const;

  double value(int eps, int j, const lattice::Idx3& k) const;
  double max_abs_value(int j, const lattice::Idx3& k) const;  // max over eps

  // requires depth_monotone(); the rule's value at any site of depth J
  double value_at_depth(int j, int J) const;

  // overlay must target a site inside support and j-range
  void set_overlay(int eps, int j, const lattice::Idx3& k, const Rational& v);
  const std::map<OverlayKey, Rational>& overlay() const { return overlay_; }

  bool in_support(int j, const lattice::Idx3& k) const;

  const CoefficientField* base() const { return base_.get(); }

 private:
  CoefficientField() = default;

  Kind kind_ = Kind::Zero;
  Support support_ = Support::L0;
  int j_min_ = 1;
  int j_max_ = 24;
  bool depth_monotone_ = true;
  std::optional<BesovParams> params_;
  double round_s_ = 0.0;
  int round_N_ = 0;
  std::shared_ptr<const CoefficientField> base_;
  std::function<double(int, int, const lattice::Idx3&)> rule_;
  std::function<double(int, int)> depth_value_;
  std::map<OverlayKey, Rational> overlay_;
};

// non-zero integer part: 1 on [0,2), floor otherwise; maps into Z\{0} with
// |x - E*(x)| <= 1 on all of R
double estar(double x);

struct SeqNorm {
  std::vector<std::pair<int, double>> a;  // (j, a_j)
  double lq_aggregate = 0.0;
};

// a_j = || 2^{j(s-Q/p)} d^eps_{j,k} ||_{l^p over (eps,k)} and its l^q
// aggregate over the window. Exact depth-class counting for depth-monotone
// L0 fields; brute enumeration for small j otherwise.
SeqNorm besov_seq_norm(const CoefficientField& field, const BesovParams& params, int j_lo,
                       int j_hi);

// enumeration oracle (j_hi <= 6): sums |d|^p over L0 sites directly
SeqNorm besov_seq_norm_brute(const CoefficientField& field, const BesovParams& params, int j_lo,
                             int j_hi);

struct SupNormResult {
  double value = 0.0;
  bool divergent = false;
  int attained_j = 0;
};

// sup over (eps,j,k) of 2^{js}|d|; per-scale sup of depth-monotone rules is
// attained at the minimal available depth. Growth across the window top is
// reported as divergence.
SupNormResult holder_sup_norm(const CoefficientField& field, double s, int j_lo, int j_hi);

// sum over the support of d * psi(2^j o (x_{j,k}^{-1} * x)) up to j_cap
double eval_function(const CoefficientField& field, const GPoint& x, const SurrogateWavelet& psi,
                     int j_cap);

}  // namespace hmfa::synth
