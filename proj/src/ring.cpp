#include "dipsim/ring.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace dipsim {

RingProfile ring_profile(int n_molecules, double omega_tilde,
                         RingFormula formula) {
  if (n_molecules < 3) throw SimError("ring_profile: need at least 3 sites");
  RingProfile p;
  p.n_molecules = n_molecules;
  p.omega_tilde = omega_tilde;
  for (int d = 1; d <= n_molecules / 2; ++d) {
    const double bare = ring_bare_half(n_molecules, d);
    const double med = ring_mediated_half(n_molecules, omega_tilde, d, formula);
    p.distances.push_back(d);
    p.g_bare_half.push_back(bare);
    p.g_mediated_half.push_back(med);
    p.g_total.push_back(bare + med);
  }
  return p;
}

double ring_midpoint_drive(int n_molecules, int k) {
  return 0.5 * (ring_frequency(n_molecules, k) + ring_frequency(n_molecules, k + 1));
}

DisplacementEstimate displacement_bound(int n_molecules, double epsilon,
                                        double omega_tilde,
                                        const std::vector<int>& spins) {
  if (static_cast<int>(spins.size()) != n_molecules)
    throw DimensionMismatch("displacement_bound: spin configuration size");
  const int m = n_molecules / 2;
  DisplacementEstimate est;
  est.structure = Eigen::VectorXd::Zero(m);
  double sum = 0.0;
  for (int n = 1; n <= m; ++n) {
    double s = 0.0;
    for (int j = 0; j < n_molecules; ++j)
      s += std::cos(2.0 * std::numbers::pi * j * n / n_molecules) * spins[j];
    s /= n_molecules;
    // FM/AFM structure factors vanish identically; clip the rounding residue
    // of the geometric sums (any real S_n is at least 1/N).
    if (std::abs(s) < 1e-12) s = 0.0;
    est.structure[n - 1] = s;

    const double wn = ring_frequency(n_molecules, n);
    double gn = ring_g_tilde(n_molecules, n);
    if (std::abs(gn) < 1e-12) gn = 0.0;
    if (wn == 0.0 || gn == 0.0 || s == 0.0) continue;
    const double detuning = omega_tilde - wn;
    if (std::abs(detuning) < 1e-9)
      throw ResonantDrive("displacement_bound: omega_tilde on a phonon mode");
    sum += (epsilon / wn) * (gn / detuning) *
           (2.0 * std::numbers::pi * n / n_molecules) * s;
  }
  est.value = std::abs(sum);
  est.sqrt_n_coefficient =
      est.value / (epsilon * std::sqrt(double(n_molecules)));
  return est;
}

std::vector<int> ring_fm_configuration(int n_molecules) {
  return std::vector<int>(n_molecules, 1);
}

std::vector<int> ring_afm_configuration(int n_molecules) {
  std::vector<int> s(n_molecules);
  for (int j = 0; j < n_molecules; ++j) s[j] = (j % 2 == 0) ? 1 : -1;
  return s;
}

std::vector<int> ring_random_configuration(int n_molecules, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<int> s(n_molecules);
  for (int j = 0; j < n_molecules; ++j) s[j] = (rng() & 1) ? 1 : -1;
  return s;
}

double displacement_median_random(int n_molecules, double epsilon,
                                  double omega_tilde, int samples,
                                  std::uint64_t seed) {
  std::vector<double> values;
  values.reserve(samples);
  for (int k = 0; k < samples; ++k) {
    auto cfg = ring_random_configuration(n_molecules, seed + k);
    values.push_back(
        displacement_bound(n_molecules, epsilon, omega_tilde, cfg).value);
  }
  std::sort(values.begin(), values.end());
  const size_t mid = values.size() / 2;
  if (values.size() % 2 == 1) return values[mid];
  return 0.5 * (values[mid - 1] + values[mid]);
}

}  // namespace dipsim
