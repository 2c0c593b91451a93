#include "hmfa/carnot.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "hmfa/scan.hpp"

namespace hmfa::carnot {

StratificationSpec::StratificationSpec(std::vector<int> layer_dims, std::vector<Bracket> brackets)
    : layers_(std::move(layer_dims)) {
  if (layers_.empty()) throw std::invalid_argument("StratificationSpec: at least one layer");
  for (int q : layers_)
    if (q <= 0) throw std::invalid_argument("StratificationSpec: layer dims must be positive");
  d_ = std::accumulate(layers_.begin(), layers_.end(), 0);
  hom_dim_ = 0;
  sigma_.resize(static_cast<std::size_t>(d_));
  int at = 0;
  for (std::size_t l = 0; l < layers_.size(); ++l) {
    hom_dim_ += static_cast<int>(l + 1) * layers_[l];
    for (int t = 0; t < layers_[l]; ++t) sigma_[static_cast<std::size_t>(at++)] = static_cast<int>(l + 1);
  }
  sigma_lcm_ = 1;
  for (int s : sigma_) sigma_lcm_ = std::lcm(sigma_lcm_, s);
  c_.assign(static_cast<std::size_t>(d_) * d_ * d_, 0.0);
  for (const Bracket& b : brackets) {
    if (b.i < 1 || b.i > d_ || b.j < 1 || b.j > d_ || b.l < 1 || b.l > d_)
      throw std::invalid_argument("StratificationSpec: bracket index out of range");
    const std::size_t i = static_cast<std::size_t>(b.i - 1);
    const std::size_t j = static_cast<std::size_t>(b.j - 1);
    const std::size_t l = static_cast<std::size_t>(b.l - 1);
    c_[(i * d_ + j) * d_ + l] = b.value;
    c_[(j * d_ + i) * d_ + l] = -b.value;
  }
}

double StratificationSpec::structure_constant(int i, int j, int l) const {
  return c_[(static_cast<std::size_t>(i) * d_ + j) * d_ + l];
}

std::vector<double> StratificationSpec::bracket(const std::vector<double>& u,
                                                const std::vector<double>& v) const {
  std::vector<double> out(static_cast<std::size_t>(d_), 0.0);
  for (int i = 0; i < d_; ++i) {
    if (u[static_cast<std::size_t>(i)] == 0.0) continue;
    for (int j = 0; j < d_; ++j) {
      const double uv = u[static_cast<std::size_t>(i)] * v[static_cast<std::size_t>(j)];
      if (uv == 0.0) continue;
      for (int l = 0; l < d_; ++l) {
        const double c = structure_constant(i, j, l);
        if (c != 0.0) out[static_cast<std::size_t>(l)] += uv * c;
      }
    }
  }
  return out;
}

namespace {

// rank of a set of vectors over R, by row echelon with partial pivoting
int rank_of(std::vector<std::vector<double>> rows) {
  const double tol = 1e-12;
  int rank = 0;
  const int cols = rows.empty() ? 0 : static_cast<int>(rows[0].size());
  int lead = 0;
  for (int r = 0; r < static_cast<int>(rows.size()) && lead < cols; ++lead) {
    int piv = -1;
    double best = tol;
    for (int i = r; i < static_cast<int>(rows.size()); ++i) {
      if (std::abs(rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(lead)]) > best) {
        best = std::abs(rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(lead)]);
        piv = i;
      }
    }
    if (piv < 0) continue;
    std::swap(rows[static_cast<std::size_t>(r)], rows[static_cast<std::size_t>(piv)]);
    const double p = rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(lead)];
    for (int i = r + 1; i < static_cast<int>(rows.size()); ++i) {
      const double f = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(lead)] / p;
      if (f == 0.0) continue;
      for (int c = lead; c < cols; ++c)
        rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)] -=
            f * rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
    }
    ++r;
    ++rank;
  }
  return rank;
}

}  // namespace

ValidationReport validate_spec(const StratificationSpec& spec) {
  ValidationReport rep;
  const int d = spec.total_dim();
  const double tol = 1e-12;

  // antisymmetry is enforced structurally at construction; re-check anyway
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int l = 0; l < d; ++l)
        if (std::abs(spec.structure_constant(i, j, l) + spec.structure_constant(j, i, l)) > tol) {
          rep.failures.push_back("antisymmetry violated at (" + std::to_string(i + 1) + "," +
                                 std::to_string(j + 1) + "," + std::to_string(l + 1) + ")");
        }

  // grading: c[i][j][l] = 0 unless sigma_l = sigma_i + sigma_j
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int l = 0; l < d; ++l) {
        const double c = spec.structure_constant(i, j, l);
        if (c != 0.0 && spec.sigma(l) != spec.sigma(i) + spec.sigma(j)) {
          rep.failures.push_back("grading violated: bracket (" + std::to_string(i + 1) + "," +
                                 std::to_string(j + 1) + ") -> " + std::to_string(l + 1) +
                                 " crosses layers");
        }
      }

  // Jacobi identity on all basis triples
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j)
      for (int k = j + 1; k < d; ++k) {
        for (int m = 0; m < d; ++m) {
          double s = 0.0;
          for (int l = 0; l < d; ++l) {
            s += spec.structure_constant(i, j, l) * spec.structure_constant(l, k, m);
            s += spec.structure_constant(j, k, l) * spec.structure_constant(l, i, m);
            s += spec.structure_constant(k, i, l) * spec.structure_constant(l, j, m);
          }
          if (std::abs(s) > tol) {
            rep.failures.push_back("Jacobi identity fails on triple (" + std::to_string(i + 1) +
                                   "," + std::to_string(j + 1) + "," + std::to_string(k + 1) + ")");
            break;
          }
        }
      }

  // generating condition: [n_1, n_k] spans n_{k+1}
  {
    int at = 0;
    std::vector<std::pair<int, int>> layer_range;  // [begin,end) per layer
    for (int q : spec.layers()) {
      layer_range.emplace_back(at, at + q);
      at += q;
    }
    for (std::size_t k = 0; k + 1 < layer_range.size(); ++k) {
      const auto [b1, e1] = layer_range[0];
      const auto [bk, ek] = layer_range[k];
      const auto [bn, en] = layer_range[k + 1];
      std::vector<std::vector<double>> images;
      for (int i = b1; i < e1; ++i)
        for (int j = bk; j < ek; ++j) {
          std::vector<double> v(static_cast<std::size_t>(en - bn), 0.0);
          for (int l = bn; l < en; ++l)
            v[static_cast<std::size_t>(l - bn)] = spec.structure_constant(i, j, l);
          images.push_back(std::move(v));
        }
      if (rank_of(images) < en - bn) {
        rep.failures.push_back("stratification not generating: [n_1, n_" + std::to_string(k + 1) +
                               "] does not span layer " + std::to_string(k + 2));
      }
    }
  }

  // homogeneous dimension consistency
  {
    int q = 0;
    for (std::size_t l = 0; l < spec.layers().size(); ++l)
      q += static_cast<int>(l + 1) * spec.layers()[l];
    if (q != spec.hom_dim()) rep.failures.push_back("hom_dim mismatch");
  }
  return rep;
}

CPoint bch_mul(const StratificationSpec& spec, const CPoint& a, const CPoint& b) {
  if (spec.step() > 3)
    throw std::domain_error("bch_mul: truncated BCH implemented for step <= 3 only");
  const std::size_t d = static_cast<std::size_t>(spec.total_dim());
  if (a.size() != d || b.size() != d) throw std::invalid_argument("bch_mul: dimension mismatch");
  std::vector<double> ab = spec.bracket(a, b);
  std::vector<double> aab = spec.bracket(a, ab);
  std::vector<double> bba = spec.bracket(b, spec.bracket(b, a));
  CPoint out(d);
  for (std::size_t i = 0; i < d; ++i) {
    out[i] = a[i] + b[i] + 0.5 * ab[i] + (aab[i] + bba[i]) / 12.0;
  }
  return out;
}

CPoint c_inv(const CPoint& x) {
  CPoint out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = -x[i];
  return out;
}

CPoint c_dilate(const StratificationSpec& spec, double lambda, const CPoint& x) {
  if (!(lambda > 0.0)) throw std::domain_error("c_dilate: lambda must be > 0");
  CPoint out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    out[i] = std::pow(lambda, spec.sigma(static_cast<int>(i))) * x[i];
  return out;
}

double c_gauge_norm(const StratificationSpec& spec, const CPoint& x) {
  const int two_sigma = 2 * spec.sigma_lcm();
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    s += std::pow(std::abs(x[i]), double(two_sigma) / spec.sigma(static_cast<int>(i)));
  }
  return std::pow(s, 1.0 / two_sigma);
}

double c_dist(const StratificationSpec& spec, const CPoint& x, const CPoint& y) {
  return c_gauge_norm(spec, bch_mul(spec, c_inv(x), y));
}

int hom_dim(const StratificationSpec& spec) { return spec.hom_dim(); }

double mc_gauge_ball_volume(const StratificationSpec& spec, double radius, std::int64_t n,
                            std::uint64_t seed) {
  const int d = spec.total_dim();
  // B(0, radius) sits inside the box prod_i [-radius^{sigma_i}, radius^{sigma_i}]
  std::vector<double> half(static_cast<std::size_t>(d));
  double box_vol = 1.0;
  for (int i = 0; i < d; ++i) {
    half[static_cast<std::size_t>(i)] = std::pow(radius, spec.sigma(i));
    box_vol *= 2.0 * half[static_cast<std::size_t>(i)];
  }
  std::int64_t hits = scan::count_if(n, [&](std::int64_t t) {
    CPoint x(static_cast<std::size_t>(d));
    const std::uint64_t b = static_cast<std::uint64_t>(t) * 16u;
    for (int i = 0; i < d; ++i) {
      x[static_cast<std::size_t>(i)] = scan::uab(seed, b + static_cast<std::uint64_t>(i),
                                                 -half[static_cast<std::size_t>(i)],
                                                 half[static_cast<std::size_t>(i)]);
    }
    return c_gauge_norm(spec, x) < radius;
  });
  return box_vol * static_cast<double>(hits) / static_cast<double>(n);
}

double volume_scaling_exponent(const StratificationSpec& spec, std::int64_t n, std::uint64_t seed) {
  const double v1 = mc_gauge_ball_volume(spec, 1.0, n, seed);
  const double v2 = mc_gauge_ball_volume(spec, 2.0, n, seed ^ 0x5bd1e995u);
  return std::log2(v2 / v1);
}

LatticeEnumerator integer_lattice() {
  return [](const std::vector<double>& lo, const std::vector<double>& hi,
            const std::function<void(const CPoint&)>& yield) {
    const std::size_t d = lo.size();
    std::vector<std::int64_t> cur(d), a(d), b(d);
    for (std::size_t i = 0; i < d; ++i) {
      a[i] = static_cast<std::int64_t>(std::ceil(lo[i]));
      b[i] = static_cast<std::int64_t>(std::floor(hi[i]));
      if (a[i] > b[i]) return;
      cur[i] = a[i];
    }
    while (true) {
      CPoint x(d);
      for (std::size_t i = 0; i < d; ++i) x[i] = static_cast<double>(cur[i]);
      yield(x);
      std::size_t i = 0;
      while (i < d) {
        if (++cur[i] <= b[i]) break;
        cur[i] = a[i];
        ++i;
      }
      if (i == d) break;
    }
  };
}

SamplingCheckReport sampling_check(const StratificationSpec& spec, const LatticeEnumerator& lattice,
                                   double M, int center_count, std::uint64_t seed,
                                   const std::vector<double>& center_lo,
                                   const std::vector<double>& center_hi) {
  if (!lattice) throw std::domain_error("sampling_check: lattice enumerator required");
  if (!(M > 0.0)) throw std::domain_error("sampling_check: M must be > 0");
  const int d = spec.total_dim();
  SamplingCheckReport rep;
  rep.min_points = std::numeric_limits<std::int64_t>::max();
  rep.max_points = 0;
  for (int c = 0; c < center_count; ++c) {
    CPoint x(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) {
      x[static_cast<std::size_t>(i)] =
          scan::uab(seed, static_cast<std::uint64_t>(c) * 16u + static_cast<std::uint64_t>(i),
                    center_lo[static_cast<std::size_t>(i)], center_hi[static_cast<std::size_t>(i)]);
    }
    // window: gamma = x * z with |z_i| <= M^{sigma_i}; bound |gamma_i - x_i|
    // through the BCH terms by interval arithmetic on the structure constants.
    std::vector<double> lo(static_cast<std::size_t>(d)), hi(static_cast<std::size_t>(d));
    std::vector<double> b1(static_cast<std::size_t>(d)), xa(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) {
      b1[static_cast<std::size_t>(i)] = std::pow(M, spec.sigma(i));
      xa[static_cast<std::size_t>(i)] = std::abs(x[static_cast<std::size_t>(i)]);
    }
    auto abs_bracket = [&](const std::vector<double>& u, const std::vector<double>& v) {
      std::vector<double> out(static_cast<std::size_t>(d), 0.0);
      for (int i = 0; i < d; ++i)
        for (int jj = 0; jj < d; ++jj)
          for (int l = 0; l < d; ++l)
            out[static_cast<std::size_t>(l)] += std::abs(spec.structure_constant(i, jj, l)) *
                                                u[static_cast<std::size_t>(i)] *
                                                v[static_cast<std::size_t>(jj)];
      return out;
    };
    const std::vector<double> b2 = abs_bracket(xa, b1);
    const std::vector<double> b3 = abs_bracket(xa, b2);
    const std::vector<double> b3p = abs_bracket(b1, b2);
    for (int i = 0; i < d; ++i) {
      const std::size_t ii = static_cast<std::size_t>(i);
      const double margin = b1[ii] + 0.5 * b2[ii] + (b3[ii] + b3p[ii]) / 12.0 + 1.0;
      lo[ii] = x[ii] - margin;
      hi[ii] = x[ii] + margin;
    }
    std::int64_t cnt = 0;
    lattice(lo, hi, [&](const CPoint& g) {
      if (c_dist(spec, x, g) < M) ++cnt;
    });
    rep.min_points = std::min(rep.min_points, cnt);
    rep.max_points = std::max(rep.max_points, cnt);
  }
  if (center_count == 0) rep.min_points = 0;
  return rep;
}

StratificationSpec heisenberg_spec() {
  return StratificationSpec({2, 1}, {{1, 2, 3, -4.0}});
}

StratificationSpec engel_spec() {
  return StratificationSpec({2, 1, 1}, {{1, 2, 3, 1.0}, {1, 3, 4, 1.0}});
}

StratificationSpec abelian_spec(int d) { return StratificationSpec({d}, {}); }

}  // namespace hmfa::carnot
