#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "hmfa/field.hpp"
#include "hmfa/group.hpp"
#include "hmfa/lattice.hpp"

// Regularity and spectrum estimation from coefficient fields: wavelet
// leaders, global/pointwise Hoelder exponents, counting spectra with their
// theoretical bound curves, Taylor verification, Hausdorff pre-measures.
namespace hmfa::analysis {

enum class FitMode { Raw, LogCorrected };
enum class LeaderMode { ExactStructured, Windowed };

struct ExponentEstimate {
  double value = 0.0;
  bool infinite = false;
  FitMode mode = FitMode::Raw;
  std::vector<std::pair<int, double>> samples;  // (j, log2 of the per-scale statistic)
  double residual = 0.0;                        // max deviation from the fitted line
};

// D_j(f,x) = sup{ |d^eps_{j',k'}| : j' >= j, C_{j',k'} inside Lambda_j(x) }.
// ExactStructured requires a depth-monotone field: the supremum is located
// through the minimal irreducible depth present in Lambda_j(x), via exact
// dyadic containment (no enumeration). Windowed enumerates j' - j <= delta
// and is a lower bound for D_j; delta > 8 is refused (cost 2^{4 delta}).
double leaders(const synth::CoefficientField& field, const GPoint& x, int j, int j_cap,
               LeaderMode mode, int delta = 4);

// hhat from per-scale suprema of |d| (Raw: anchored liminf slope over the
// window tail; LogCorrected: lower-envelope slope of the beta-corrected
// log-curve). All-zero fields report an infinite exponent.
ExponentEstimate global_exponent(const synth::CoefficientField& field, int j_lo, int j_hi,
                                 FitMode mode = FitMode::LogCorrected);

// hhat from log2 D_j; fewer than 4 usable scales is an error.
ExponentEstimate pointwise_exponent(const synth::CoefficientField& field, const GPoint& x,
                                    int j_lo, int j_hi, FitMode mode = FitMode::LogCorrected,
                                    LeaderMode lmode = LeaderMode::ExactStructured, int j_cap = -1);

struct TwoRegimeResult {
  bool holds = false;
  double fitted_C = 0.0;                         // minimal C over the scanned sites
  double growth_slope = 0.0;                     // slope of log2 C_j against j
  std::vector<std::pair<int, double>> c_per_j;   // (j, minimal C at scale j)
};

// Minimal C with |d| <= C 2^{-js} (1 + 2^j delta(x_{j,k}, x0))^s over all
// sites with delta(x_{j,k}, x0) < R; holds iff log2 C_j stays bounded in j.
TwoRegimeResult two_regime_check(const synth::CoefficientField& field, const GPoint& x0, double s,
                                 double R, int j_lo, int j_hi);

// #N_f(j,h) = #{k : exists eps with |d^eps_{j,k}| >= C0 2^{-jh}} over the L0
// support; exact depth-class counting for depth-monotone fields, enumeration
// for j <= 6 otherwise.
std::int64_t coefficient_counting(const synth::CoefficientField& field, int j, double h,
                                  double C0);

// sup over j in [j_lo, j_hi] (and eps,k) of 2^{j(s-Q/p)} |d|.
double empirical_embedding_constant(const synth::CoefficientField& field,
                                    const synth::BesovParams& params, int j_lo, int j_hi);

double besov_spectrum_bound(double h, const synth::BesovParams& params);  // -inf below s-Q/p

struct SpectrumEstimate {
  std::vector<double> h;
  std::vector<double> d_hat;      // -inf marker: all counts empty
  std::vector<double> bound;      // besov_spectrum_bound at each h
  double C0 = 0.0;
  bool lemma_counts_ok = true;    // #N <= (A/C0)^p 2^{jp(h-s+Q/p)} at every scanned (j,h)
  double lemma_margin = 0.0;      // max over scans of log2(#N) - log2(bound)
};

// dhat(h) = slope of log2 #N_f(j,h) + p*beta*log2 j against j over the
// window. C0 defaults to the empirical embedding constant over the upper
// part of the window [j_lo+2, j_hi].
SpectrumEstimate counting_spectrum(const synth::CoefficientField& field, int j_lo, int j_hi,
                                   const std::vector<double>& h_grid,
                                   std::optional<double> C0_threshold = std::nullopt);

// ---- Taylor machinery ----

// horizontal-derivative table at x0, up to homogeneous degree 3
struct DerivativeTable {
  double f = 0, X = 0, Y = 0, Z = 0;
  double XX = 0, XY = 0, YY = 0;
  double XXX = 0, XXY = 0, XYY = 0, YYY = 0;
  double XZ = 0, YZ = 0;
};

DerivativeTable derivative_table(const std::function<double(const GPoint&)>& f, const GPoint& x0,
                                 int order, double step1 = 1e-4, double step2 = 1e-3);

// polynomial in (p,q,r); keys are monomial exponents (a,b,c), hom degree a+b+2c
struct Poly {
  std::map<std::array<int, 3>, double> coef;
  double eval(const GPoint& y) const;
};

// right Taylor polynomial of homogeneous degree <= order (order <= 3) from a
// derivative table, with the fixed coefficient choice
//   f + pX + qY + (p^2 XX + 2pq XY + q^2 YY)/2 + (2pq+r) Z
//     + (p^3 XXX + 3p^2q XXY + 3pq^2 XYY + q^3 YYY)/6 + (2pq+r)(p XZ + q YZ)
Poly taylor_poly(const DerivativeTable& t, int order);

// slope of log max_{||y||=rho} |f(x0 y) - P(y)| against log rho; +inf when the
// remainder vanishes identically (f polynomial of degree <= order).
double taylor_remainder_slope(const std::function<double(const GPoint&)>& f, const GPoint& x0,
                              int order, std::span<const double> radii, int n_dirs = 240);

// greedy dyadic-cube cover upper estimate of the Hausdorff pre-measure:
// smallest j with cube diameter <= eta, occupied cubes, sum diam^s.
double hausdorff_premeasure(std::span<const GPoint> points, double s_exponent, double eta);

// ---- shared fitting helpers (exposed for tests) ----

// ordinary least squares y = a*x + b; returns {a, b}
std::pair<double, double> lls(const std::vector<std::pair<double, double>>& pts);

// slope of the lower convex envelope of (x,y): the least slope among hull
// edges of horizontal span >= 3 (fallback >= 2, then the longest edge)
double lower_envelope_slope(const std::vector<std::pair<double, double>>& pts);

}  // namespace hmfa::analysis
