#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "dipsim/ring.hpp"

using namespace dipsim;

TEST_CASE("far-detuned profile reduces to the bare dipole tail") {
  RingProfile p = ring_profile(21, 10.0 * ring_debye_frequency());
  REQUIRE(p.distances.size() == 10);
  for (size_t k = 0; k < p.distances.size(); ++k) {
    const double want = 0.5 / std::pow(double(p.distances[k]), 3.0);
    CHECK(p.g_total[k] == doctest::Approx(want).epsilon(0.05));
  }
}

TEST_CASE("low-band drive gives a slowly varying positive profile") {
  RingProfile p = ring_profile(21, ring_midpoint_drive(21, 1));
  for (int d = 1; d <= 6; ++d) CHECK(p.g_total[d - 1] > 0.0);
  // slowly varying: neighboring couplings stay within a factor two
  for (int d = 1; d <= 5; ++d) {
    CHECK(p.g_total[d] > 0.4 * p.g_total[d - 1]);
    CHECK(p.g_total[d] < 2.5 * p.g_total[d - 1]);
  }
  // frozen regression of the leading entries
  CHECK(p.g_total[0] == doctest::Approx(0.2693650548).epsilon(1e-8));
  CHECK(p.g_total[1] == doctest::Approx(0.3184467900).epsilon(1e-8));
  CHECK(p.g_total[2] == doctest::Approx(0.3356367446).epsilon(1e-8));
  CHECK(p.g_total[3] == doctest::Approx(0.3236437715).epsilon(1e-8));
}

TEST_CASE("high-band drive alternates site to site") {
  RingProfile p = ring_profile(21, ring_midpoint_drive(21, 9));
  for (int d = 1; d <= 4; ++d)
    CHECK(p.g_total[d - 1] * p.g_total[d] < 0.0);
}

TEST_CASE("profile is symmetric under d -> N - d") {
  const double w = ring_midpoint_drive(21, 3);
  for (int d = 1; d <= 10; ++d)
    CHECK(ring_mediated_half(21, w, d) ==
          doctest::Approx(ring_mediated_half(21, w, 21 - d)));
}

TEST_CASE("aligned and alternating configurations do not displace") {
  for (int n : {20, 40}) {
    const double w = ring_midpoint_drive(n, 1);
    CHECK(displacement_bound(n, 0.1, w, ring_fm_configuration(n)).value == 0.0);
    CHECK(displacement_bound(n, 0.1, w, ring_afm_configuration(n)).value == 0.0);
  }
}

TEST_CASE("structure factors are bounded by one and by 1/sqrt(N) in RMS") {
  const int n = 21;
  std::mt19937_64 rng(4711);
  double sum_sq = 0.0;
  long count = 0;
  for (int trial = 0; trial < 10000; ++trial) {
    auto cfg = ring_random_configuration(n, rng());
    DisplacementEstimate est =
        displacement_bound(n, 0.1, ring_midpoint_drive(n, 1), cfg);
    CHECK(est.structure.cwiseAbs().maxCoeff() <= 1.0);
    sum_sq += est.structure.squaredNorm();
    count += est.structure.size();
  }
  const double rms = std::sqrt(sum_sq / count);
  CHECK(rms <= 1.0 / std::sqrt(double(n)));
  // E[S_n^2] = 1/(2N); 3 sigma of the sample mean is far below the gap here.
  CHECK(rms == doctest::Approx(1.0 / std::sqrt(2.0 * n)).epsilon(0.05));
}

TEST_CASE("random-configuration displacement obeys the eps sqrt(N) bound") {
  // Pinned coefficient: median values stay below C eps sqrt(N) with C = 0.6
  // for band drives, low or mid.
  for (int n : {11, 21, 41}) {
    for (int band : {1, std::max(1, n / 4)}) {
      const double med = displacement_median_random(
          n, 0.1, ring_midpoint_drive(n, band), 200, 99);
      CHECK(med < 0.6 * 0.1 * std::sqrt(double(n)));
    }
  }
}

TEST_CASE("displacement scales as sqrt(N) for a fixed band fraction") {
  auto med = [](int n) {
    const int band = std::max(1, int(std::lround(0.4 * n)));
    return displacement_median_random(n, 0.1, ring_midpoint_drive(n, band),
                                      200, 20260808);
  };
  const double m11 = med(11), m21 = med(21), m41 = med(41);
  CHECK(m21 / m11 == doctest::Approx(std::sqrt(21.0 / 11.0)).epsilon(0.3));
  CHECK(m41 / m11 == doctest::Approx(std::sqrt(41.0 / 11.0)).epsilon(0.3));
}

TEST_CASE("displacement errors") {
  CHECK_THROWS_AS(displacement_bound(10, 0.1, 1.0, {1, -1}), DimensionMismatch);
  CHECK_THROWS_AS(
      displacement_bound(10, 0.1, ring_frequency(10, 2),
                         ring_random_configuration(10, 1)),
      ResonantDrive);
}

TEST_CASE("seeded medians are reproducible") {
  const double a =
      displacement_median_random(21, 0.1, ring_midpoint_drive(21, 1), 50, 12345);
  const double b =
      displacement_median_random(21, 0.1, ring_midpoint_drive(21, 1), 50, 12345);
  CHECK(a == b);
}
