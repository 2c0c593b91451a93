// Benchmark: OpenMP kernels vs their serial reference implementations.
#include <chrono>
#include <cstdio>

#include "hmfa/field.hpp"
#include "hmfa/group.hpp"
#include "hmfa/lattice.hpp"
#include "hmfa/scan.hpp"

using hclock = std::chrono::high_resolution_clock;

template <class F>
double time_ms(F&& f) {
  const auto t0 = hclock::now();
  f();
  const auto t1 = hclock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

int main() {
  using namespace hmfa;
  std::printf("threads: %d\n", scan::thread_count());
  std::printf("%-34s %12s %12s %8s\n", "kernel", "serial ms", "parallel ms", "speedup");

  volatile double sinkd = 0;
  volatile long long sinki = 0;

  {
    const std::int64_t n = 10'000'000;
    double vs = 0, vp = 0;
    const double ts = time_ms([&] { vs = mc_unit_ball_volume_serial(n, 7); });
    const double tp = time_ms([&] { vp = mc_unit_ball_volume(n, 7); });
    sinkd = vs + vp;
    std::printf("%-34s %12.1f %12.1f %7.2fx   %s\n", "MC ball volume (1e7)", ts, tp, ts / tp,
                vs == vp ? "bit-identical" : "MISMATCH");
  }
  {
    auto work_serial = [] {
      const std::int64_t sp = 64 + 2, sr = 4096 + 2;
      return scan::serial::count_if(sp * sp * sr, [=](std::int64_t t) {
        const std::int64_t kr = t % sr - 1;
        const std::int64_t rem = t / sr;
        const GPoint x = lattice::dyadic_point({6, {rem / sp - 1, rem % sp - 1, kr}});
        return x.p >= 0 && x.p < 1 && x.q >= 0 && x.q < 1 && x.r >= 0 && x.r < 1;
      });
    };
    long long cs = 0, cp = 0;
    const double ts = time_ms([&] { cs = work_serial(); });
    const double tp = time_ms([&] { cp = lattice::count_L0_enumerated(6); });
    sinki = cs + cp;
    std::printf("%-34s %12.1f %12.1f %7.2fx   %s\n", "L0 enumeration (j=6, 16.7M)", ts, tp, ts / tp,
                cs == cp ? "bit-identical" : "MISMATCH");
  }
  {
    const synth::BesovParams params{2, 2, 2, 4};
    const auto F = synth::CoefficientField::besov_saturating(params);
    auto sum_at = [&](bool serial) {
      const int j = 5;
      const std::int64_t sp = 32, sr = 1024;
      auto f = [&](std::int64_t t) {
        const std::int64_t kr = t % sr;
        const std::int64_t rem = t / sr;
        const double v = F.value(1, j, {rem / sp, rem % sp, kr});
        return v * v;
      };
      return serial ? scan::serial::blocked_sum(sp * sp * sr, f)
                    : scan::blocked_sum(sp * sp * sr, f);
    };
    double vs = 0, vp = 0;
    const double ts = time_ms([&] { vs = sum_at(true); });
    const double tp = time_ms([&] { vp = sum_at(false); });
    sinkd = sinkd + vs + vp;
    std::printf("%-34s %12.1f %12.1f %7.2fx   %s\n", "coefficient l^2 sum (j=5, 1M)", ts, tp,
                ts / tp, vs == vp ? "bit-identical" : "MISMATCH");
  }
  {
    double vs = 0, vp = 0;
    const double ts = time_ms([&] {
      double best = 0;
      for (const auto& k : lattice::ball_overlap_reference())
        best += lattice::ball_half_distance(k);
      vs = best;
    });
    const double tp = time_ms([&] { vp = double(lattice::ball_overlap_scan().size()); });
    sinkd = sinkd + vs + vp;
    std::printf("%-34s %12.1f %12.1f %7s\n", "ball-overlap minimizations", ts, tp, "-");
  }
  (void)sinkd;
  (void)sinki;
  return 0;
}
