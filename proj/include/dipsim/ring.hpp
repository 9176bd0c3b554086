#pragma once
#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "dipsim/couplings.hpp"

namespace dipsim {

/// Total coupling versus site distance on the homogeneous ring.
struct RingProfile {
  int n_molecules = 0;
  double omega_tilde = 0.0;
  std::vector<int> distances;       // 1 .. floor(N/2)
  std::vector<double> g_total;      // Gbar0/2 + Gbar1/2
  std::vector<double> g_bare_half;
  std::vector<double> g_mediated_half;
};

RingProfile ring_profile(int n_molecules, double omega_tilde,
                         RingFormula formula = RingFormula::NearestNeighbor);

/// Midpoint drive (wtilde_k + wtilde_{k+1})/2 between two ring modes.
double ring_midpoint_drive(int n_molecules, int k);

/// Relative displacement of neighboring sites in the spin-dependent
/// displaced frame, with its mode-resolved spin structure factor.
struct DisplacementEstimate {
  double value = 0.0;          // |delta x_0 - delta x_1|, units of a
  double sqrt_n_coefficient = 0.0;  // value / (eps sqrt(N))
  Eigen::VectorXd structure;   // S_n, n = 1..N/2
};

/// S_n = (1/N) sum_j cos(2 pi j n / N) sigma_j and the resulting
/// |delta x_0 - delta x_1| for one spin configuration (entries +-1).
DisplacementEstimate displacement_bound(int n_molecules, double epsilon,
                                        double omega_tilde,
                                        const std::vector<int>& spins);

std::vector<int> ring_fm_configuration(int n_molecules);
std::vector<int> ring_afm_configuration(int n_molecules);
std::vector<int> ring_random_configuration(int n_molecules, std::uint64_t seed);

/// Median displacement over `samples` random configurations (seeded).
double displacement_median_random(int n_molecules, double epsilon,
                                  double omega_tilde, int samples,
                                  std::uint64_t seed);

}  // namespace dipsim
