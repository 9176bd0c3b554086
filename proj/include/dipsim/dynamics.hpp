#pragma once
#include <Eigen/Dense>
#include <complex>
#include <optional>

#include "dipsim/couplings.hpp"
#include "dipsim/errors.hpp"

namespace dipsim {

/// Pure spin state over the 2^N sigma-z product basis. Site i maps to bit i
/// (site 0 is the least significant bit); |g> is bit 0 with sigma-z = +1,
/// |e> is bit 1 with sigma-z = -1.
struct SpinState {
  int n_sites = 0;
  Eigen::VectorXcd amps;

  int dim() const { return 1 << n_sites; }
  double norm() const { return amps.norm(); }
  /// sigma-z eigenvalue of site i in basis state `index`.
  static int sz(int index, int site) { return (index >> site) & 1 ? -1 : +1; }

  static SpinState basis_state(int n_sites, int index);
  /// ((|g> + |e>)/sqrt2)^N
  static SpinState product_plus(int n_sites);
  /// ((|g> - |e>)/sqrt2)^N, the paramagnetic ground state for Bx > 0.
  static SpinState product_minus(int n_sites);
};

struct SpinDensity {
  Eigen::MatrixXcd rho;

  double trace() const { return rho.trace().real(); }
  double purity() const { return (rho * rho).trace().real(); }
};

/// Phonon bath temperature, either as k_B T / (hbar nu) or per-mode mean
/// occupations. coth(hbar omega_n / 2 k_B T) = 1 + 2 nbar_n.
struct ThermalSpec {
  double temperature = 0.0;
  std::optional<Eigen::VectorXd> nbar_per_mode;

  double coth_factor(double omega, int mode_index = -1) const;
  double nbar(double omega, int mode_index = -1) const;
};

/// Displacement amplitudes and accumulated two-spin phases at one time.
struct PhaseLedger {
  Eigen::MatrixXcd alpha;  // modes x sites
  Eigen::MatrixXd phi0;    // bare phase, sites x sites
  Eigen::MatrixXd phi1;    // phonon-mediated phase
  double t = 0.0;
};

/// alpha_{n,i}(t); t in units 1/nu, couplings converted internally.
Eigen::MatrixXcd displacement_amplitudes(const CouplingSet& cs, double t);

/// Phi0_ij(t) and Phi1_ij(t); the secular slopes recover the total coupling:
/// (Phi0 + Phi1)/t -> G_ij for large t.
PhaseLedger accumulated_phases(const CouplingSet& cs, double t);

/// Decoherence exponent F_n(t, s, r) summed over modes.
double decoherence_exponent(const Eigen::MatrixXcd& alpha,
                            const CouplingSet& cs, const ThermalSpec& thermal,
                            int s, int r);

/// Reduced spin density matrix after evolving `initial` (x) thermal phonons.
SpinDensity reduced_density(const SpinState& initial, const CouplingSet& cs,
                            const ThermalSpec& thermal, double t);

/// Closed-form purity of the reduced spin state.
double purity(const SpinState& initial, const CouplingSet& cs,
              const ThermalSpec& thermal, double t);

/// <target| rho |target>.
double graph_fidelity(const SpinDensity& rho, const SpinState& target);

/// Time pi/(4 G_12) in units 1/nu for the crystal's total couplings.
double graph_time(const CouplingSet& cs);

}  // namespace dipsim
