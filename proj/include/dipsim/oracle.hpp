#pragma once
#include <Eigen/Dense>
#include <vector>

#include "dipsim/dynamics.hpp"
#include "dipsim/integrate.hpp"

namespace dipsim {

/// Spin (x) phonon state on a Fock space truncated at n_max quanta per mode.
/// Index layout: spin index major, mode occupations lexicographic (first
/// listed mode slowest). `mode_ids` selects which spectrum modes carry a
/// Fock factor; uncoupled modes may be omitted without changing the spin
/// dynamics.
struct FullState {
  int n_sites = 0;
  int n_max = 0;
  std::vector<int> mode_ids;
  Eigen::VectorXcd amps;

  int levels() const { return n_max + 1; }
  int n_modes() const { return static_cast<int>(mode_ids.size()); }
  long fock_dim() const;
  long dim() const { return (1L << n_sites) * fock_dim(); }

  static FullState from_spin(const SpinState& spin, std::vector<int> mode_ids,
                             int n_max);
  /// Product Fock state |occ_0, occ_1, ...> (x) spin.
  static FullState from_spin_occupations(const SpinState& spin,
                                         std::vector<int> mode_ids, int n_max,
                                         const std::vector<int>& occupations);
  /// All modes of the coupling set, spin (x) vacuum.
  static FullState vacuum(const SpinState& spin, const CouplingSet& cs,
                          int n_max);
};

/// Extra Hamiltonian terms dropped from the effective model, re-enabled for
/// error budgeting. All flags off reproduces the default assembly.
struct ResidualFlags {
  bool single_spin_term = false;   // eps cos(wt) sum_i sigma_i sum_j G0_ij
  bool average_bare_coupling = false;  // replace cos^2(wt) by its mean 1/2
};

struct IntegrationReport {
  FullState state;
  double max_leak = 0.0;    // top-Fock-level population, max over time & modes
  long steps = 0;
  long rejected = 0;
  double norm_drift = 0.0;  // | ||psi(t)|| - ||psi(0)|| |
};

/// Integrate the full time-dependent Hamiltonian in the phonon interaction
/// picture, matrix-free.
IntegrationReport evolve_full(const FullState& initial, const CouplingSet& cs,
                              double t_final, const StepControl& ctrl = {},
                              const ResidualFlags& flags = {},
                              double leak_tol = 1e-6);

/// Partial trace over the phonon factors.
SpinDensity reduce_spin(const FullState& state);

/// Weighted Fock product states covering the thermal ensemble up to tail_tol.
struct ThermalSample {
  double weight = 0.0;
  std::vector<int> occupations;
};

std::vector<ThermalSample> thermal_initial(const ThermalSpec& thermal,
                                           const Eigen::VectorXd& mode_freqs,
                                           const std::vector<int>& mode_ids,
                                           int n_max, double tail_tol = 1e-3);

/// Exact mixed-state propagation: evolve every ensemble member and average
/// the reduced spin density matrices.
SpinDensity evolve_thermal(const SpinState& spin, const CouplingSet& cs,
                           const ThermalSpec& thermal, double t_final,
                           int n_max, const StepControl& ctrl = {},
                           double tail_tol = 1e-3, double leak_tol = 1e-6);

/// <target| Tr_p rho(t) |target> sampled at the given (ascending) times,
/// from a single evolution.
std::vector<double> evolve_fidelity_trace(const FullState& initial,
                                          const CouplingSet& cs,
                                          const SpinState& target,
                                          const std::vector<double>& times,
                                          const StepControl& ctrl = {},
                                          const ResidualFlags& flags = {},
                                          double leak_tol = 1e-6);

}  // namespace dipsim
