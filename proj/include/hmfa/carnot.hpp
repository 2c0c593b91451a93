#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

// Generic stratified nilpotent (Carnot) group arithmetic in exponential
// coordinates of the first kind, driven by a user-supplied stratification.
// The Heisenberg group is reproducible as the layers-(2,1) instance with
// [X1,X2] = -4 X3.
namespace hmfa::carnot {

struct Bracket {
  int i = 0;  // 1-based basis indices
  int j = 0;
  int l = 0;
  double value = 0.0;
};

class StratificationSpec {
 public:
  StratificationSpec(std::vector<int> layer_dims, std::vector<Bracket> brackets);

  int total_dim() const { return d_; }
  int step() const { return static_cast<int>(layers_.size()); }
  int hom_dim() const { return hom_dim_; }          // Q_G = sum k*q_k
  int sigma(int i) const { return sigma_[static_cast<std::size_t>(i)]; }  // layer weight of basis i, 0-based
  int sigma_lcm() const { return sigma_lcm_; }
  const std::vector<int>& layers() const { return layers_; }

  // c[i][j][l], 0-based indices.
  double structure_constant(int i, int j, int l) const;

  // Lie bracket of coordinate vectors.
  std::vector<double> bracket(const std::vector<double>& u, const std::vector<double>& v) const;

 private:
  std::vector<int> layers_;
  int d_ = 0;
  int hom_dim_ = 0;
  int sigma_lcm_ = 1;
  std::vector<int> sigma_;
  std::vector<double> c_;  // dense d^3 table (groups here are small)
};

using CPoint = std::vector<double>;

struct ValidationReport {
  std::vector<std::string> failures;
  bool valid() const { return failures.empty(); }
};

// Checks antisymmetry, the grading (brackets land in layer sigma_i+sigma_j),
// the Jacobi identity on all basis triples, the generating condition
// [n_1, n_k] = n_{k+1} (rank check) and Q_G = sum k q_k.
ValidationReport validate_spec(const StratificationSpec& spec);

// Truncated BCH product a+b+1/2[a,b]+1/12([a,[a,b]]+[b,[b,a]]); exact for
// step <= 3 (all higher brackets vanish). Step >= 4 specs are rejected.
CPoint bch_mul(const StratificationSpec& spec, const CPoint& a, const CPoint& b);

CPoint c_inv(const CPoint& x);

CPoint c_dilate(const StratificationSpec& spec, double lambda, const CPoint& x);

// (sum_i |x_i|^{2 sigma / sigma_i})^{1/(2 sigma)}, sigma = lcm of the weights.
double c_gauge_norm(const StratificationSpec& spec, const CPoint& x);

double c_dist(const StratificationSpec& spec, const CPoint& x, const CPoint& y);

int hom_dim(const StratificationSpec& spec);

// Monte Carlo volume of the gauge ball B(0, radius) (box rejection sampling;
// deterministic in seed, thread-count independent).
double mc_gauge_ball_volume(const StratificationSpec& spec, double radius, std::int64_t n,
                            std::uint64_t seed);

// log2( vol B(0,2) / vol B(0,1) ) — the volume-scaling exponent, equal to the
// homogeneous dimension.
double volume_scaling_exponent(const StratificationSpec& spec, std::int64_t n, std::uint64_t seed);

struct SamplingCheckReport {
  std::int64_t min_points = 0;
  std::int64_t max_points = 0;
  bool c1_holds() const { return min_points >= 1; }
};

// Counts lattice points of the integer lattice Z^d inside gauge balls
// B(x, M) over sampled centers; reports min/max (property (C1) holds iff
// min >= 1). The lattice is supplied as an enumerator over integer boxes.
using LatticeEnumerator =
    std::function<void(const std::vector<double>& lo, const std::vector<double>& hi,
                       const std::function<void(const CPoint&)>& yield)>;

LatticeEnumerator integer_lattice();

SamplingCheckReport sampling_check(const StratificationSpec& spec, const LatticeEnumerator& lattice,
                                   double M, int center_count, std::uint64_t seed,
                                   const std::vector<double>& center_lo,
                                   const std::vector<double>& center_hi);

// Shipped specs.
StratificationSpec heisenberg_spec();
StratificationSpec engel_spec();
StratificationSpec abelian_spec(int d);

}  // namespace hmfa::carnot
