#include "hmfa/verify.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

#include "hmfa/analysis.hpp"
#include "hmfa/field.hpp"
#include "hmfa/group.hpp"
#include "hmfa/io.hpp"
#include "hmfa/lattice.hpp"
#include "hmfa/scan.hpp"

namespace hmfa::verify {

namespace {

GPoint rand_point(std::uint64_t seed, std::uint64_t i, double span_pq, double span_r) {
  const std::uint64_t b = i * 4u;
  return {scan::uab(seed, b + 0, -span_pq, span_pq), scan::uab(seed, b + 1, -span_pq, span_pq),
          scan::uab(seed, b + 2, -span_r, span_r)};
}

void row(std::vector<CheckRow>& rows, const std::string& name, bool ok, const std::string& detail) {
  rows.push_back({name, ok ? Status::Pass : Status::Fail, detail});
}

std::string num(double v) { return io::fmt(v); }

}  // namespace

std::vector<CheckRow> group_suite(std::int64_t mc_samples, std::uint64_t seed) {
  std::vector<CheckRow> rows;

  {  // associativity over random triples
    double worst = 0.0;
    for (std::int64_t i = 0; i < 10'000; ++i) {
      const GPoint a = rand_point(seed, 3 * i, 10.0, 100.0);
      const GPoint b = rand_point(seed, 3 * i + 1, 10.0, 100.0);
      const GPoint c = rand_point(seed, 3 * i + 2, 10.0, 100.0);
      const GPoint l = mul(mul(a, b), c), r = mul(a, mul(b, c));
      worst = std::max({worst, std::abs(l.p - r.p), std::abs(l.q - r.q), std::abs(l.r - r.r)});
    }
    row(rows, "group associativity (1e4 triples)", worst <= 1e-12, "max residual " + num(worst));
  }
  {  // homogeneity of the gauge norm under dilations
    double worst = 0.0;
    for (int e = -10; e <= 10; ++e) {
      const double lam = std::exp2(double(e));
      for (std::int64_t i = 0; i < 500; ++i) {
        const GPoint x = rand_point(seed ^ 77, i, 5.0, 25.0);
        const double lhs = gauge_norm(dilate(lam, x));
        const double rhs = lam * gauge_norm(x);
        if (rhs > 0) worst = std::max(worst, std::abs(lhs - rhs) / rhs);
      }
    }
    row(rows, "gauge homogeneity (lambda = 2^-10..2^10)", worst <= 1e-12, "max rel residual " + num(worst));
  }
  {  // left invariance of the distance
    double worst = 0.0;
    for (std::int64_t i = 0; i < 10'000; ++i) {
      const GPoint z = rand_point(seed ^ 99, 3 * i, 5.0, 25.0);
      const GPoint x = rand_point(seed ^ 99, 3 * i + 1, 5.0, 25.0);
      const GPoint y = rand_point(seed ^ 99, 3 * i + 2, 5.0, 25.0);
      worst = std::max(worst, std::abs(dist(mul(z, x), mul(z, y)) - dist(x, y)));
    }
    row(rows, "left invariance of dist (1e4 triples)", worst <= 1e-10, "max residual " + num(worst));
  }
  {  // inverse round-trip
    double worst = 0.0;
    for (std::int64_t i = 0; i < 1'000; ++i) {
      const GPoint x = rand_point(seed ^ 111, i, 10.0, 100.0);
      const GPoint e = mul(x, inv(x));
      worst = std::max({worst, std::abs(e.p), std::abs(e.q), std::abs(e.r)});
    }
    row(rows, "x * inv(x) = identity", worst == 0.0, "max residual " + num(worst));
  }
  {  // Monte Carlo ball volume
    const double v = mc_unit_ball_volume(mc_samples, seed);
    const double rel = std::abs(v - constants::kBallVolumeUnit) / constants::kBallVolumeUnit;
    row(rows, "MC unit ball volume = pi^2/2 (0.5%)", rel <= 5e-3,
        "measured " + num(v) + " vs " + num(constants::kBallVolumeUnit) + ", rel " + num(rel));
  }
  {  // commutator [X,Y] = -4Z on f = r
    auto f = [](const GPoint& x) { return x.r; };
    const std::vector<HDir> xy{HDir::X, HDir::Y}, yx{HDir::Y, HDir::X};
    const double v = horizontal_derivative(f, {0.3, -0.2, 0.5}, xy, 1e-3) -
                     horizontal_derivative(f, {0.3, -0.2, 0.5}, yx, 1e-3);
    row(rows, "[X,Y] f = -4 Zf on f = r", std::abs(v + 4.0) <= 1e-8, "commutator " + num(v));
  }
  {  // commutator annihilates smooth functions at order >= 1.8
    auto f = [](const GPoint& x) { return std::sin(x.p) * std::cos(x.q) * std::exp(0.3 * x.r); };
    const GPoint x0{0.4, 0.1, -0.3};
    auto resid = [&](double h) {
      const std::vector<HDir> xy{HDir::X, HDir::Y}, yx{HDir::Y, HDir::X}, z{HDir::Z};
      return horizontal_derivative(f, x0, xy, h) - horizontal_derivative(f, x0, yx, h) +
             4.0 * horizontal_derivative(f, x0, z, h);
    };
    const double r1 = std::abs(resid(0.2));
    const double r2 = std::abs(resid(0.1));
    const double order = std::log2(r1 / r2);
    row(rows, "FD commutator residual order under step halving", order >= 1.8,
        "observed order " + num(order));
  }
  {  // quasi-triangle constant: empirical lower bound (reported)
    const double g1 = quasi_triangle_constant(1'000'000, seed);
    rows.push_back({"quasi-triangle constant gamma_1 lower bound", Status::Report,
                    "max ratio over 1e6 pairs: " + num(g1) + " (>= 1 via collinear pair)"});
    const double cap = 4.0;
    row(rows, "gamma_1 estimate within implementation cap", g1 >= 1.0 && g1 <= cap,
        num(g1) + " in [1, " + num(cap) + "]");
  }
  {  // Haar invariance proxy: MC volume of z*B equals vol(B)
    const GPoint z{0.7, -0.4, 0.9};
    const double lo[3] = {0.0, 0.0, 0.0}, hi[3] = {1.0, 1.0, 1.0};
    // z*B bounding box: p,q shift; r shifts and shears by 2(z_q p - z_p q)
    const double rlo = z.r + lo[2] - 2.0 * std::abs(z.p) - 2.0 * std::abs(z.q);
    const double rhi = z.r + hi[2] + 2.0 * std::abs(z.p) + 2.0 * std::abs(z.q);
    const std::int64_t n = 2'000'000;
    const double boxv = (hi[0] - lo[0] + 0.0 + 1.0) * 1.0 * (rhi - rlo);  // p in [z.p, z.p+1]: width 1... see below
    (void)boxv;
    std::int64_t hits = scan::count_if(n, [&](std::int64_t i) {
      const std::uint64_t b = static_cast<std::uint64_t>(i) * 4u;
      GPoint y{scan::uab(seed ^ 5, b, z.p, z.p + 1.0), scan::uab(seed ^ 5, b + 1, z.q, z.q + 1.0),
               scan::uab(seed ^ 5, b + 2, rlo, rhi)};
      const GPoint w = mul(inv(z), y);
      return w.p >= 0 && w.p < 1 && w.q >= 0 && w.q < 1 && w.r >= 0 && w.r < 1;
    });
    const double vol = (1.0) * (1.0) * (rhi - rlo) * double(hits) / double(n);
    row(rows, "Haar proxy: vol(z*B) = vol(B) (MC)", std::abs(vol - 1.0) <= 5e-3,
        "measured " + num(vol) + " vs 1");
  }
  return rows;
}

std::vector<CheckRow> lattice_suite() {
  using namespace lattice;
  std::vector<CheckRow> rows;

  const std::vector<Idx3> brute = neighbor_scan_bruteforce();
  row(rows, "touching cubes of C_0: 34 + self", brute.size() == 35,
      "found " + std::to_string(brute.size()) + " (incl. the cube itself)");
  {
    std::vector<Idx3> eff(xi_effective().begin(), xi_effective().end());
    std::sort(eff.begin(), eff.end());
    row(rows, "effective Xi table = brute-force scan", eff == brute, "35 triples agree");
  }
  {
    std::vector<Idx3> printed(xi_printed().begin(), xi_printed().end());
    std::sort(printed.begin(), printed.end());
    std::vector<Idx3> mirrored;
    mirrored.reserve(printed.size());
    for (const Idx3& k : printed) mirrored.push_back({k.q, k.p, k.r});
    std::sort(mirrored.begin(), mirrored.end());
    const bool verbatim = printed == brute;
    const bool mirror = mirrored == brute;
    std::ostringstream os;
    os << "verbatim match: " << (verbatim ? "yes" : "NO") << "; (p<->q) mirror match: "
       << (mirror ? "yes" : "no")
       << " -- printed table is consistent with the opposite shear convention; "
          "the oracle-derived table is used throughout";
    rows.push_back({"printed Xi table vs brute force (reported)", Status::Report, os.str()});
  }
  {
    const auto scan43 = ball_overlap_scan();
    const auto ref43 = ball_overlap_reference();
    row(rows, "ball overlap set: 43 cubes", scan43.size() == 43 && scan43 == ref43,
        "scan found " + std::to_string(scan43.size()) + ", matches the closed-form condition");
  }
  {
    const double d = cube_diameter_estimate(200'000, 4242);
    row(rows, "diam C_0 = 13^{1/4}", std::abs(d - constants::kCubeDiameterUnit) <= 1e-3,
        "sampled " + num(d) + " vs " + num(constants::kCubeDiameterUnit));
    row(rows, "diam C_{j,k} < 2^{1-j} (j=0)", constants::kCubeDiameterUnit < 2.0,
        num(constants::kCubeDiameterUnit) + " < 2");
  }
  {
    bool ok = true;
    std::string detail;
    for (int j = 0; j <= 5; ++j) {
      const std::int64_t e = count_L0_enumerated(j);
      if (e != count_L0(j)) {
        ok = false;
        detail = "j=" + std::to_string(j) + ": " + std::to_string(e) + " != " + std::to_string(count_L0(j));
        break;
      }
    }
    row(rows, "#L0(j) = 2^{4j} by enumeration (j <= 5)", ok, ok ? "exact match" : detail);
  }
  {
    bool ok = true;
    for (int J = 0; J <= 4; ++J)
      if (count_irreducible_enumerated(J) != count_irreducible(J)) ok = false;
    row(rows, "irreducible counts 15*2^{4(J-1)} by parity scan (J <= 4)", ok,
        ok ? "exact match (J=0 class: 1)" : "mismatch");
  }
  {
    bool ok = true;
    for (int j = 0; j <= 8; ++j) {
      std::int64_t s = 0;
      for (int J = 0; J <= j; ++J) s += count_irreducible(J);
      if (s != count_L0(j)) ok = false;
    }
    row(rows, "telescoping: sum_J #irr(J) = 2^{4j} (j <= 8)", ok, "exact integer identity");
  }
  {  // partition: every sampled point lies in exactly one cube
    bool ok = true;
    for (std::int64_t i = 0; i < 2000 && ok; ++i) {
      const std::uint64_t b = i * 4u;
      const GPoint x{scan::u01(7, b), scan::u01(7, b + 1), scan::u01(7, b + 2)};
      for (int j = 0; j <= 3; ++j) {
        const DyadicIndex loc = locate(x, j);
        int hits = 0;
        for (std::int64_t dp = -2; dp <= 2; ++dp)
          for (std::int64_t dq = -2; dq <= 2; ++dq)
            for (std::int64_t dr = -8; dr <= 8; ++dr) {
              const DyadicIndex c{j, {loc.k.p + dp, loc.k.q + dq, loc.k.r + dr}};
              if (cube_contains(c, x)) {
                ++hits;
                if (!(c == loc)) ok = false;
              }
            }
        if (hits != 1) ok = false;
      }
    }
    row(rows, "partition: unique containing cube (j <= 3, sampled)", ok, "locate agrees with membership");
  }
  {  // neighborhood sufficiency: close pairs share a Lambda
    bool ok = true;
    std::int64_t checked = 0;
    for (std::int64_t i = 0; i < 10'000; ++i) {
      const std::uint64_t b = i * 8u;
      const int j = 2 + int(scan::mix(13, b) % 6);
      const GPoint x{scan::uab(13, b + 1, 0.1, 0.9), scan::uab(13, b + 2, 0.1, 0.9),
                     scan::uab(13, b + 3, 0.1, 0.9)};
      const GPoint u{scan::uab(13, b + 4, -0.4, 0.4), scan::uab(13, b + 5, -0.4, 0.4),
                     scan::uab(13, b + 6, -0.4, 0.4)};
      const double nu = gauge_norm(u);
      if (nu == 0.0) continue;
      const GPoint y = mul(x, dilate(std::exp2(-double(j)) * 0.99 / nu, u));
      if (dist(x, y) >= std::exp2(-double(j))) continue;
      ++checked;
      bool found = false;
      // candidate tilde-k: cells around the cubes of x and y
      for (const GPoint& anchor : {x, y}) {
        const DyadicIndex c = locate(anchor, j);
        for (std::int64_t dp = -1; dp <= 1 && !found; ++dp)
          for (std::int64_t dq = -1; dq <= 1 && !found; ++dq)
            for (std::int64_t dr = -3; dr <= 3 && !found; ++dr) {
              const DyadicIndex cand{j, {c.k.p + dp, c.k.q + dq, c.k.r + dr}};
              bool in_x = false, in_y = false;
              for (const DyadicIndex& cell : neighborhood(cand)) {
                if (cube_contains(cell, x)) in_x = true;
                if (cube_contains(cell, y)) in_y = true;
              }
              if (in_x && in_y) found = true;
            }
        if (found) break;
      }
      if (!found) ok = false;
    }
    row(rows, "close pairs share a Lambda_{j,k} (1e4 pairs)", ok,
        std::to_string(checked) + " pairs with delta < 2^{-j} all covered");
  }
  {  // locate: frozen example and base-point identity
    const DyadicIndex got = locate({0.6, 0.2, 0.9}, 1);
    const bool ex = got.k == Idx3{1, 0, 4};
    bool base_ok = true;
    for (std::int64_t i = 0; i < 500; ++i) {
      const int j = int(scan::mix(17, i) % 8);
      const Idx3 k{std::int64_t(scan::mix(18, i) % 64), std::int64_t(scan::mix(19, i) % 64),
                   std::int64_t(scan::mix(20, i) % 1024)};
      if (!(locate(dyadic_point({j, k}), j) == DyadicIndex{j, k})) base_ok = false;
    }
    row(rows, "locate: membership example and base points", ex && base_ok,
        "locate(0.6,0.2,0.9; j=1) = (1,0,4); x_{j,k} locates to (j,k)");
  }
  return rows;
}

std::vector<CheckRow> carnot_suite(const std::optional<carnot::StratificationSpec>& extra,
                                   std::int64_t mc_samples, std::uint64_t seed) {
  using namespace carnot;
  std::vector<CheckRow> rows;
  const StratificationSpec h = heisenberg_spec();
  const StratificationSpec e = engel_spec();
  const StratificationSpec a3 = abelian_spec(3);

  row(rows, "Heisenberg spec valid", validate_spec(h).valid(), "layers (2,1), [X1,X2] = -4 X3");
  row(rows, "Engel spec valid", validate_spec(e).valid(), "layers (2,1,1)");
  row(rows, "abelian spec valid", validate_spec(a3).valid(), "layers (3), step 1");
  {
    StratificationSpec bad({2, 1}, {{1, 2, 1, 1.0}});  // lands in layer 1: grading violation
    row(rows, "grading violation detected", !validate_spec(bad).valid(),
        validate_spec(bad).failures.empty() ? "" : validate_spec(bad).failures.front());
  }
  row(rows, "Q_G: Heisenberg 4, Engel 7, abelian d",
      h.hom_dim() == 4 && e.hom_dim() == 7 && a3.hom_dim() == 3, "exact");
  {
    double worst = 0.0;
    for (std::int64_t i = 0; i < 10'000; ++i) {
      const GPoint x = rand_point(seed ^ 31, 2 * i, 2.0, 4.0);
      const GPoint y = rand_point(seed ^ 31, 2 * i + 1, 2.0, 4.0);
      const CPoint bx = bch_mul(h, {x.p, x.q, x.r}, {y.p, y.q, y.r});
      const GPoint g = mul(x, y);
      worst = std::max({worst, std::abs(bx[0] - g.p), std::abs(bx[1] - g.q), std::abs(bx[2] - g.r)});
    }
    row(rows, "BCH = Heisenberg group law (1e4 pairs)", worst <= 1e-12, "max residual " + num(worst));
  }
  {
    double worst = 0.0;
    for (const StratificationSpec* sp : {&h, &e, &a3}) {
      const auto d = static_cast<std::size_t>(sp->total_dim());
      for (std::int64_t i = 0; i < 3000; ++i) {
        CPoint x(d), y(d), z(d);
        for (std::size_t c = 0; c < d; ++c) {
          x[c] = scan::uab(seed ^ 41, i * 16 + c, -2, 2);
          y[c] = scan::uab(seed ^ 42, i * 16 + c, -2, 2);
          z[c] = scan::uab(seed ^ 43, i * 16 + c, -2, 2);
        }
        const CPoint l = bch_mul(*sp, bch_mul(*sp, x, y), z);
        const CPoint r = bch_mul(*sp, x, bch_mul(*sp, y, z));
        for (std::size_t c = 0; c < d; ++c) worst = std::max(worst, std::abs(l[c] - r[c]));
      }
    }
    row(rows, "BCH associativity (Heisenberg/Engel/abelian)", worst <= 1e-10,
        "max residual " + num(worst));
  }
  {
    double worst = 0.0;
    for (std::int64_t i = 0; i < 2000; ++i) {
      CPoint x(4), y(4);
      for (std::size_t c = 0; c < 4; ++c) {
        x[c] = scan::uab(seed ^ 51, i * 16 + c, -2, 2);
        y[c] = scan::uab(seed ^ 52, i * 16 + c, -2, 2);
      }
      const double lam = std::exp2(scan::uab(seed ^ 53, i, -3, 3));
      const CPoint l = c_dilate(e, lam, bch_mul(e, x, y));
      const CPoint r = bch_mul(e, c_dilate(e, lam, x), c_dilate(e, lam, y));
      for (std::size_t c = 0; c < 4; ++c)
        worst = std::max(worst, std::abs(l[c] - r[c]) / std::max(1.0, std::abs(l[c])));
    }
    row(rows, "dilations are BCH automorphisms (Engel)", worst <= 1e-10, "max rel residual " + num(worst));
  }
  {
    double worst = 0.0;
    for (std::int64_t i = 0; i < 2000; ++i) {
      CPoint x(3);
      for (std::size_t c = 0; c < 3; ++c) x[c] = scan::uab(seed ^ 61, i * 8 + c, -2, 2);
      const double lam = std::exp2(scan::uab(seed ^ 62, i, -4, 4));
      const double lhs = c_gauge_norm(h, c_dilate(h, lam, x));
      const double rhs = lam * c_gauge_norm(h, x);
      if (rhs > 0) worst = std::max(worst, std::abs(lhs - rhs) / rhs);
    }
    row(rows, "gauge homogeneity under dilations", worst <= 1e-12, "max rel residual " + num(worst));
  }
  {
    const double eh = volume_scaling_exponent(h, mc_samples, seed);
    const double ee = volume_scaling_exponent(e, mc_samples, seed ^ 3);
    const double ea = volume_scaling_exponent(a3, mc_samples, seed ^ 4);
    const bool ok = std::abs(eh - 4.0) <= 0.05 && std::abs(ee - 7.0) <= 0.05 && std::abs(ea - 3.0) <= 0.05;
    row(rows, "volume-scaling exponent = Q_G (MC, 0.05)", ok,
        "H: " + num(eh) + ", Engel: " + num(ee) + ", R^3: " + num(ea));
  }
  {
    const auto rep = sampling_check(h, integer_lattice(), 2.0, 200, seed, {0, 0, 0}, {4, 4, 4});
    row(rows, "(C1): balls B(x,2) meet Z^3 (Heisenberg)", rep.c1_holds(),
        "min " + std::to_string(rep.min_points) + ", max " + std::to_string(rep.max_points));
    const auto rep0 = sampling_check(h, integer_lattice(), 0.1, 100, seed ^ 9, {0, 0, 0}, {4, 4, 4});
    row(rows, "(C1) fails for tiny radius", rep0.min_points == 0,
        "min " + std::to_string(rep0.min_points) + " at M = 0.1");
  }
  if (extra) {
    const auto rep = validate_spec(*extra);
    std::ostringstream os;
    os << "Q_G = " << extra->hom_dim() << ", step " << extra->step() << ", dim " << extra->total_dim();
    if (!rep.valid()) {
      os << "; failures:";
      for (const auto& f : rep.failures) os << " [" << f << "]";
    }
    row(rows, "user spec validation", rep.valid(), os.str());
  }
  return rows;
}

std::vector<CheckRow> besov_suite() {
  using namespace synth;
  std::vector<CheckRow> rows;
  const BesovParams params{2.0, 2.0, 2.0, 4};
  const CoefficientField F = CoefficientField::besov_saturating(params, 24);

  {  // frozen values of the saturating rule
    const double v1 = F.value(1, 1, {1, 0, 0});       // J = 1
    const double v2 = F.value(3, 4, {4, 6, 8});       // reduces to depth 2
    const bool ok = std::abs(v1 - 0.25) <= 1e-15 && std::abs(v2 - std::exp2(-7.0)) <= 1e-18 &&
                    F.value(1, 3, {-1, 0, 0}) == 0.0;
    row(rows, "saturating rule values (1/4, 2^-7, outside 0)", ok,
        "d(1,(1,0,0)) = " + num(v1) + ", d(4,(4,6,8)) = " + num(v2));
  }
  {  // closed-form a_j equals brute enumeration
    const SeqNorm closed = besov_seq_norm(F, params, 1, 5);
    const SeqNorm brute = besov_seq_norm_brute(F, params, 1, 5);
    double worst = 0.0;
    for (std::size_t i = 0; i < closed.a.size(); ++i) {
      worst = std::max(worst, std::abs(closed.a[i].second - brute.a[i].second) /
                                  std::max(brute.a[i].second, 1e-300));
    }
    row(rows, "a_j closed form = brute enumeration (j <= 5)", worst <= 1e-12,
        "max rel diff " + num(worst));
  }
  {  // the sequence inequality and l^q membership
    const SeqNorm sn = besov_seq_norm(F, params, 1, 14);
    bool ok = true;
    const double beta = params.beta();
    for (const auto& [j, aj] : sn.a) {
      const double bound = std::pow(15.0, 2.0 / params.p) * std::pow(double(j), -beta) *
                           std::pow(1.0 + double(j) * std::exp2(-4.0), 1.0 / params.p);
      if (aj > bound * (1.0 + 1e-12)) ok = false;
    }
    row(rows, "a_j <= 15^{2/p} j^{-beta} (1 + j 2^{-4})^{1/p} (j <= 14)", ok,
        "l^q aggregate " + num(sn.lq_aggregate) + " (finite)");
  }
  {  // Hoelder sup-norms of the saturating field
    const auto div = holder_sup_norm(F, params.s, 1, 20);
    const auto fin = holder_sup_norm(F, params.s - params.Q / params.p, 1, 20);
    row(rows, "sup 2^{js}|d| diverges at s; finite at s - Q/p", div.divergent && !fin.divergent,
        "shifted sup " + num(fin.value) + " attained at j = " + std::to_string(fin.attained_j));
  }
  {  // rounding sandwich, every coefficient up to j = 5
    const CoefficientField R1 = CoefficientField::monofractal_round(F, params.s, 3);
    bool ok = true;
    const double s = params.s;
    const int N = 3;
    for (int j = 1; j <= 5 && ok; ++j) {
      const std::int64_t sp = std::int64_t{1} << j;
      const std::int64_t sr = std::int64_t{1} << (2 * j);
      for (std::int64_t kp = 0; kp < sp && ok; ++kp)
        for (std::int64_t kq = 0; kq < sp && ok; ++kq)
          for (std::int64_t kr = 0; kr < sr && ok; ++kr) {
            const lattice::Idx3 k{kp, kq, kr};
            const double in = F.value(1, j, k);
            const double out = R1.value(1, j, k);
            if (std::exp2(double(j) * s) * std::abs(out - in) > std::exp2(-double(N)) + 1e-15) ok = false;
            if (std::abs(out) < std::exp2(-double(j) * s - N) * (1.0 - 1e-12)) ok = false;
          }
    }
    row(rows, "rounding sandwich bounds exact (j <= 5, all sites)", ok,
        "2^{js}|out-in| <= 2^{-N} and |out| >= 2^{-js-N}");
  }
  {  // counting: closed form equals enumeration at j = 5
    const double C0 = analysis::empirical_embedding_constant(F, params, 3, 14);
    bool ok = true;
    for (double hh : {0.5, 1.0, 1.5}) {
      const auto closed = analysis::coefficient_counting(F, 5, hh, C0);
      const CoefficientField Fe = CoefficientField::custom(
          [&F](int eps, int j, const lattice::Idx3& k) { return F.value(eps, j, k); }, Support::L0,
          1, 24, false);
      const auto brute = analysis::coefficient_counting(Fe, 5, hh, C0);
      if (closed != brute) ok = false;
    }
    row(rows, "N_f(5,h): depth-class count = enumeration", ok, "exact integers");
  }
  return rows;
}

bool print_rows(std::ostream& os, const std::vector<CheckRow>& rows) {
  bool ok = true;
  for (const auto& r : rows) {
    const char* tag = r.status == Status::Pass ? "PASS" : r.status == Status::Fail ? "FAIL" : "INFO";
    os << "[" << tag << "] " << r.name << ": " << r.detail << "\n";
    if (r.status == Status::Fail) ok = false;
  }
  return ok;
}

}  // namespace hmfa::verify
