#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <unordered_set>
#include <vector>

#include "hmfa/group.hpp"

// Anisotropic dyadic structure of the Heisenberg group: dyadic points
// x_{j,k} = 2^{-j} o k for k in Z^3, cubes C_{j,k} = x_{j,k} * (2^{-j} o C_0)
// with C_0 = [0,1)^3, the 35-cube neighborhoods Lambda_{j,k}, irreducibility,
// counting formulas and dyadic approximation rates.
namespace hmfa::lattice {

struct Idx3 {
  std::int64_t p = 0;
  std::int64_t q = 0;
  std::int64_t r = 0;

  friend bool operator==(const Idx3&, const Idx3&) = default;
  friend auto operator<=>(const Idx3&, const Idx3&) = default;
};

struct Idx3Hash {
  std::size_t operator()(const Idx3& k) const noexcept {
    std::uint64_t h = 0x9e3779b97f4a7c15ull;
    for (std::int64_t v : {k.p, k.q, k.r}) {
      h ^= static_cast<std::uint64_t>(v) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }
};

using IdxSet = std::unordered_set<Idx3, Idx3Hash>;

struct DyadicIndex {
  int j = 0;
  Idx3 k;

  friend bool operator==(const DyadicIndex&, const DyadicIndex&) = default;
};

// Z^3 is a subgroup: integer group law and inverse.
inline Idx3 imul(const Idx3& a, const Idx3& b) {
  return {a.p + b.p, a.q + b.q, a.r + b.r + 2 * (a.q * b.p - a.p * b.q)};
}
inline Idx3 iinv(const Idx3& k) { return {-k.p, -k.q, -k.r}; }

GPoint dyadic_point(const DyadicIndex& idx);

// The unique k with x in C_{j,k} (half-open cubes partition the space).
DyadicIndex locate(const GPoint& x, int j);

// Exact membership test x in C_{j,k}.
bool cube_contains(const DyadicIndex& idx, const GPoint& x);

// The 35-entry neighbor table as printed in the reference table (verbatim).
const std::array<Idx3, 35>& xi_printed();

// The oracle-consistent table: k' such that closure(C_{0,k'}) touches
// closure(C_0) under the group law above. This is the (p<->q) mirror image of
// the printed table; neighborhood() uses it. The discrepancy is surfaced by
// the verification suite, never silently patched.
const std::array<Idx3, 35>& xi_effective();

// Exact brute-force scan for the touching set over a lattice window.
std::vector<Idx3> neighbor_scan_bruteforce(int window_pq = 3, int window_r = 9);

// Lambda_{j,k} = union over k' in Xi of C_{j, k*k'} (effective table).
std::array<DyadicIndex, 35> neighborhood(const DyadicIndex& idx);

double cube_diameter(int j);  // 13^{1/4} * 2^{-j}

// Sampling + vertex-enumeration estimate of diam C_0.
double cube_diameter_estimate(std::int64_t samples, std::uint64_t seed);

// The 43 triples k' with B(x_{0,k'},1) meeting B(0,1), per the closed-form
// condition: (k1=k2=0, |k3|<=1) or (1 <= k1^2+k2^2 <= 2, |k3|<=2).
std::vector<Idx3> ball_overlap_reference();

// Numeric oracle: scans the window and classifies each k' by minimizing
// max(||y||, ||k'^{-1} y||) (balls intersect iff the min is < 1).
std::vector<Idx3> ball_overlap_scan(int window_pq = 3, int window_r = 8);

std::vector<DyadicIndex> ball_overlap_set(const DyadicIndex& idx);

// Half-distance between B(0,1) and B(k,1): min over y of max of the two
// gauge distances. Deterministic multistart coordinate descent.
double ball_half_distance(const Idx3& k);

// Irreducible version (J,K) of (j,k): decrement J while all of
// k_p = 0 (mod 2), k_q = 0 (mod 2), k_r = 0 (mod 4); integer points are
// irreducible at J = 0.
DyadicIndex irreducible(const DyadicIndex& idx);
int irreducible_depth(int j, const Idx3& k);

bool in_L0(int j, const Idx3& k);  // x_{j,k} in [0,1)^3

std::int64_t count_L0(int j);            // 2^{4j} (j in [0,15])
std::int64_t count_irreducible(int J);   // 15 * 2^{4(J-1)} for J >= 1; 1 for J = 0
std::int64_t count_L0_enumerated(int j);
std::int64_t count_irreducible_enumerated(int J);

double rate_set_dimension(double xi);  // Q/xi for xi >= 1

// Per-scale minimal distances to the dyadic set plus the rate estimate.
// Rate credits use irreducible bookkeeping: the best candidate at scale j is
// replaced by its irreducible version (J,K) and credited log2(C/m)/J; depth-0
// approximants carry no attributable rate and are skipped.
struct RateSample {
  int j = 0;            // queried scale
  int depth = 0;        // irreducible depth of the minimizer
  double min_dist = 0;  // m_j
  double credit = 0;    // log2(C/m_j)/depth (0 if not attributable)
};

struct RateResult {
  std::vector<RateSample> samples;
  double xi_hat = 1.0;
  bool dyadic = false;  // some m_j == 0: rate reported as infinite
};

RateResult approx_rate(const GPoint& x, const std::vector<int>& scales, int window = 3);

// A point whose dyadic approximation rate is xi (up to the resolution the
// construction depth and double precision permit): p = sum_m 2^{-a_m} with
// a_1 = 2, a_{m+1} = max(ceil(xi a_m), a_m + 1), q = r = 0. Terms beyond the
// 52-bit significand window are dropped. xi below 1.25 uses the period-2 bit
// pattern (the ceil recursion degenerates toward a dyadic limit there); an
// infinite xi returns a dyadic point.
GPoint point_with_rate(double xi, int depth);

// The designed truncation scales a_m of point_with_rate (for probing).
std::vector<int> rate_probe_scales(double xi, int depth);

// ---- exact cube geometry (used by the leader machinery) ----

// Scale-j indices met by the cube (jp, kpp), jp >= j: a single (m_p, m_q)
// column and a contiguous m_r range. Exact integer arithmetic.
struct HitSet {
  std::int64_t mp = 0, mq = 0;
  std::int64_t r_lo = 0, r_hi = 0;  // inclusive
};
HitSet cube_hit_indices(int jp, const Idx3& kpp, int j);

bool cube_contained(int jp, const Idx3& kpp, int j, const IdxSet& cells);

// Exact bounding box of a union of scale-j cubes; [lo,hi) in each coordinate.
struct BBox {
  double p_lo = 0, p_hi = 0, q_lo = 0, q_hi = 0, r_lo = 0, r_hi = 0;
};
BBox cells_bbox(int j, const IdxSet& cells);

}  // namespace hmfa::lattice
