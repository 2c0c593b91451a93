#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "hmfa/field.hpp"
#include "hmfa/scan.hpp"

using namespace hmfa;
using namespace hmfa::synth;

namespace {
const BesovParams kP222{2.0, 2.0, 2.0, 4};
}

TEST_CASE("besov params validation") {
  CHECK_NOTHROW(kP222.validate());
  CHECK(kP222.beta() == doctest::Approx(1.5));
  BesovParams bad{0.5, 2.0, 2.0, 4};  // s <= Q/p
  CHECK_THROWS_AS(bad.validate(), std::domain_error);
  BesovParams badp{3.0, 0.5, 2.0, 4};
  CHECK_THROWS_AS(badp.validate(), std::domain_error);
}

TEST_CASE("saturating field values") {
  const auto F = CoefficientField::besov_saturating(kP222);
  // j=1, k odd: J=1 -> 2^{-0-2}/1 = 1/4
  CHECK(F.value(1, 1, {1, 0, 0}) == doctest::Approx(0.25).epsilon(1e-15));
  // j=4, (4,6,8) reduces to J=2 -> 2^{-4}/8 = 2^{-7}
  CHECK(F.value(1, 4, {4, 6, 8}) == doctest::Approx(std::exp2(-7.0)).epsilon(1e-15));
  // outside [0,1)^3: zero
  CHECK(F.value(1, 3, {-1, 2, 2}) == 0.0);
  CHECK(F.value(1, 3, {8, 0, 0}) == 0.0);
  // outside the j range: zero (j < 1, the log factor is singular at 0)
  CHECK(F.value(1, 0, {0, 0, 0}) == 0.0);
  // identical across eps, depth-monotone
  CHECK(F.value(7, 4, {4, 6, 8}) == F.value(1, 4, {4, 6, 8}));
  CHECK(F.depth_monotone());
  for (int j = 1; j <= 8; ++j)
    for (int J = 1; J <= j; ++J)
      CHECK(F.value_at_depth(j, J) <= F.value_at_depth(j, J - 1));
  // depth-class value agrees with sites of that depth
  CHECK(F.value_at_depth(4, 2) == F.value(1, 4, {4, 6, 8}));
}

TEST_CASE("non-zero integer part") {
  CHECK(estar(0.0) == 1.0);
  CHECK(estar(1.999) == 1.0);
  CHECK(estar(2.0) == 2.0);
  CHECK(estar(5.3) == 5.0);
  CHECK(estar(-0.4) == -1.0);
  CHECK(estar(-3.7) == -4.0);
  for (std::uint64_t i = 0; i < 10'000; ++i) {
    const double x = scan::uab(1, i, -50, 50);
    const double e = estar(x);
    CHECK(e != 0.0);
    CHECK(e == std::round(e));
    CHECK(std::abs(x - e) <= 1.0);
  }
}

TEST_CASE("monofractal rounding") {
  const auto F = CoefficientField::besov_saturating(kP222, 12);
  const auto R = CoefficientField::monofractal_round(F, kP222.s, 3);
  CHECK(R.depth_monotone());
  const double s = kP222.s;
  const int N = 3;
  // zero input coefficient -> E*(0) = 1 branch
  const auto Z = CoefficientField::monofractal_round(CoefficientField::zero(1, 12), s, N);
  CHECK(Z.value(1, 4, {0, 0, 0}) == doctest::Approx(std::exp2(-4.0 * s - N)).epsilon(1e-15));
  // floor branch: input 5.3 * 2^{-js-N} -> 5 * 2^{-js-N}
  {
    auto rule = [s](int, int j, const lattice::Idx3&) { return 5.3 * std::exp2(-j * s - 3); };
    auto Cf = CoefficientField::custom(rule, Support::L0, 1, 12, false);
    const auto right = CoefficientField::monofractal_round(Cf, s, 3);
    CHECK(right.value(1, 4, {1, 2, 3}) == doctest::Approx(5.0 * std::exp2(-4 * s - 3)).epsilon(1e-13));
  }
  // negative branch: -0.4 * u -> -1 * u
  {
    auto rule = [s](int, int j, const lattice::Idx3&) { return -0.4 * std::exp2(-j * s - 3); };
    auto Cf = CoefficientField::custom(rule, Support::L0, 1, 12, false);
    const auto r = CoefficientField::monofractal_round(Cf, s, 3);
    CHECK(r.value(1, 5, {0, 0, 0}) == doctest::Approx(-std::exp2(-5 * s - 3)).epsilon(1e-13));
  }
  // sandwich bounds hold exactly at every coefficient (j <= 4 exhaustive)
  for (int j = 1; j <= 4; ++j) {
    const std::int64_t sp = 1 << j, sr = 1 << (2 * j);
    for (std::int64_t kp = 0; kp < sp; ++kp)
      for (std::int64_t kq = 0; kq < sp; ++kq)
        for (std::int64_t kr = 0; kr < sr; ++kr) {
          const lattice::Idx3 k{kp, kq, kr};
          const double in = F.value(1, j, k);
          const double out = R.value(1, j, k);
          CHECK(std::exp2(j * s) * std::abs(out - in) <= std::exp2(-double(N)) * (1 + 1e-12));
          CHECK(std::abs(out) >= std::exp2(-j * s - N) * (1 - 1e-12));
        }
  }
  CHECK_THROWS_AS(CoefficientField::monofractal_round(CoefficientField::zero(), s, 0),
                  std::domain_error);
}

TEST_CASE("sequence norms") {
  const auto F = CoefficientField::besov_saturating(kP222);
  const SeqNorm closed = besov_seq_norm(F, kP222, 1, 5);
  const SeqNorm brute = besov_seq_norm_brute(F, kP222, 1, 5);
  REQUIRE(closed.a.size() == brute.a.size());
  for (std::size_t i = 0; i < closed.a.size(); ++i) {
    CHECK(closed.a[i].second ==
          doctest::Approx(brute.a[i].second).epsilon(1e-12));
  }
  // aggregate finite; the displayed inequality holds
  const SeqNorm sn = besov_seq_norm(F, kP222, 1, 14);
  CHECK(std::isfinite(sn.lq_aggregate));
  for (const auto& [j, aj] : sn.a) {
    const double bound = std::pow(15.0, 1.0) * std::pow(double(j), -1.5) *
                         std::pow(1.0 + j / 16.0, 0.5);
    CHECK(aj <= bound * (1 + 1e-12));
  }
  // zero field: all a_j = 0
  const SeqNorm zn = besov_seq_norm(CoefficientField::zero(), kP222, 1, 8);
  for (const auto& [j, aj] : zn.a) CHECK(aj == 0.0);
  // single coefficient: a_{j0} = 2^{j0(s-Q/p)}
  auto single = CoefficientField::zero(1, 12);
  single.set_overlay(1, 3, {1, 2, 3}, {1, 1});
  const SeqNorm s1 = besov_seq_norm(single, kP222, 1, 6);
  for (const auto& [j, aj] : s1.a) {
    if (j == 3)
      CHECK(aj == doctest::Approx(std::exp2(3 * (kP222.s - 2.0))).epsilon(1e-14));
    else
      CHECK(aj == 0.0);
  }
  // absolute homogeneity: scaling all coefficients scales every a_j
  auto scaled_rule = [&F](int eps, int j, const lattice::Idx3& k) { return -2.5 * F.value(eps, j, k); };
  auto scaled = CoefficientField::custom(scaled_rule, Support::L0, 1, 24, false);
  const SeqNorm ssn = besov_seq_norm_brute(scaled, kP222, 1, 4);
  const SeqNorm fsn = besov_seq_norm_brute(F, kP222, 1, 4);
  for (std::size_t i = 0; i < ssn.a.size(); ++i)
    CHECK(ssn.a[i].second == doctest::Approx(2.5 * fsn.a[i].second).epsilon(1e-12));
}

TEST_CASE("holder sup norm") {
  // d = 2^{-js} everywhere -> sup = 1
  auto rule = [](int, int j, const lattice::Idx3&) { return std::exp2(-2.0 * j); };
  auto drule = [](int j, int) { return std::exp2(-2.0 * j); };
  auto C = CoefficientField::custom(rule, Support::L0, 1, 20, true, drule);
  const auto r = holder_sup_norm(C, 2.0, 1, 20);
  CHECK(!r.divergent);
  CHECK(r.value == doctest::Approx(1.0).epsilon(1e-14));

  // the saturating field diverges at s, is finite (attained at j=1) at s-Q/p
  const auto F = CoefficientField::besov_saturating(kP222);
  CHECK(holder_sup_norm(F, kP222.s, 1, 20).divergent);
  const auto fin = holder_sup_norm(F, 0.0, 1, 20);
  CHECK(!fin.divergent);
  CHECK(fin.attained_j == 1);
  CHECK(fin.value == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("surrogate evaluation") {
  const SurrogateWavelet psi{1.0, 1.0};
  // envelope bound |psi| <= C0' exp(-||x||/r0') by construction
  for (std::uint64_t i = 0; i < 2000; ++i) {
    const GPoint y{scan::uab(2, 3 * i, -4, 4), scan::uab(2, 3 * i + 1, -4, 4),
                   scan::uab(2, 3 * i + 2, -16, 16)};
    const double u = gauge_norm(y);
    CHECK(std::abs(psi.eval(y)) <= 3.0 * std::exp(-u / 2.0) + 1e-12);
  }
  // zero field evaluates to zero
  const auto Z = CoefficientField::zero(1, 6);
  CHECK(eval_function(Z, {0.3, 0.4, 0.2}, psi, 6) == 0.0);
  // a single coefficient gives one scaled kernel bump
  auto single = CoefficientField::zero(1, 6, Support::All);
  single.set_overlay(1, 2, {1, 1, 1}, {1, 1});
  const GPoint base = lattice::dyadic_point({2, {1, 1, 1}});
  const double at_center = eval_function(single, base, psi, 6);
  CHECK(at_center == doctest::Approx(psi.eval({0, 0, 0})).epsilon(1e-12));
  // translation covariance: the k-shifted field at k-shifted points
  // reproduces the original values
  auto shifted = CoefficientField::zero(1, 6, Support::All);
  const lattice::Idx3 shift{1, -1, 2};
  shifted.set_overlay(1, 2,
                      lattice::imul(lattice::Idx3{4 * shift.p, 4 * shift.q, 16 * shift.r}, {1, 1, 1}),
                      {1, 1});
  const GPoint zshift = lattice::dyadic_point({0, shift});
  for (const GPoint& probe :
       {base, mul(base, GPoint{0.1, 0.05, -0.02}), mul(base, GPoint{-0.2, 0.1, 0.3})}) {
    const double orig = eval_function(single, probe, psi, 6);
    const double moved = eval_function(shifted, mul(zshift, probe), psi, 6);
    CHECK(moved == doctest::Approx(orig).epsilon(1e-12));
  }
}

TEST_CASE("overlay rules") {
  auto f = CoefficientField::zero(1, 10);
  f.set_overlay(2, 3, {1, 2, 3}, normalized(-3, 4));
  CHECK(f.value(2, 3, {1, 2, 3}) == -0.75);
  CHECK(f.value(1, 3, {1, 2, 3}) == 0.0);
  CHECK(!f.depth_monotone());  // overlays invalidate the depth-class shortcut
  CHECK_THROWS_AS(f.set_overlay(1, 3, {-1, 0, 0}, {1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(f.set_overlay(0, 3, {1, 0, 0}, {1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(f.set_overlay(1, 11, {1, 0, 0}, {1, 2}), std::invalid_argument);
}
