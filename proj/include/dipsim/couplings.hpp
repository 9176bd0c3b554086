#pragma once
#include <Eigen/Dense>
#include <vector>

#include "dipsim/crystal.hpp"
#include "dipsim/errors.hpp"

namespace dipsim {

/// Dipole modulation drive. omega is in units nu for the harmonic trap and
/// in units D/(hbar a^3 sqrt(gamma)) (omega-tilde) for the ring.
struct DriveSpec {
  double omega = 0.0;
  double margin_factor = 10.0;  // |omega - omega_n| >= factor * max_i g_{n,i}/2
  bool enforce_margin = true;
};

/// All coupling matrices for one crystal and one drive frequency.
/// Matrix entries are normalized to the dipole-dipole energy D eps^2/(hbar a^3);
/// g_spin_phonon holds the dimensionless gbar_{n,i} with rows indexed by mode.
struct CouplingSet {
  Eigen::MatrixXd g_bare;         // Gbar0_ij = 1/|x_i - x_j|^3
  Eigen::MatrixXd g_spin_phonon;  // gbar_{n,i}
  Eigen::VectorXd mode_freqs;     // omega_n / nu
  Eigen::MatrixXd g_mediated;     // Gbar1_ij(omega)
  Eigen::MatrixXd g_total;        // (Gbar0 + Gbar1)/2
  double g_rms = 0.0;             // sqrt(sum_{i<j} G_ij^2 / n_pairs)
  // Context needed to convert to physical (trap-frequency) units.
  double omega = 0.0;
  double epsilon = 0.0;
  double dipole_scale = 0.0;

  int n_sites() const { return static_cast<int>(g_bare.rows()); }
  int n_modes() const { return static_cast<int>(mode_freqs.size()); }
  /// Coupling unit in units of nu: physical G = coupling_unit() * Gbar.
  double coupling_unit() const { return epsilon * epsilon * dipole_scale; }
  /// Spin-phonon coupling g_{n,i} in units nu.
  double phys_spin_phonon(int n, int i) const;
  Eigen::MatrixXd phys_spin_phonon_matrix() const;
};

Eigen::MatrixXd bare_couplings(const EquilibriumConfig& eq);

Eigen::MatrixXd spin_phonon_couplings(const EquilibriumConfig& eq,
                                      const PhononSpectrum& spectrum);

/// Minimum allowed detuning from each mode, in units nu. Modes with zero
/// coupling (COM) impose no margin.
Eigen::VectorXd detuning_margins(const Eigen::MatrixXd& g_sp,
                                 const PhononSpectrum& spectrum,
                                 const CrystalSpec& spec,
                                 double margin_factor);

Eigen::MatrixXd mediated_couplings(const Eigen::MatrixXd& g_sp,
                                   const PhononSpectrum& spectrum,
                                   const DriveSpec& drive,
                                   const CrystalSpec& spec);

struct TotalCouplings {
  Eigen::MatrixXd g;
  double g_rms = 0.0;
};

TotalCouplings total_couplings(const Eigen::MatrixXd& bare,
                               const Eigen::MatrixXd& mediated);

/// Open interval of allowed modulation frequencies; hi may be +inf.
struct OmegaInterval {
  double lo = 0.0;
  double hi = 0.0;
};

std::vector<OmegaInterval> valid_regions(const Eigen::MatrixXd& g_sp,
                                         const PhononSpectrum& spectrum,
                                         const CrystalSpec& spec,
                                         double margin_factor = 10.0);

/// Assemble the full CouplingSet for a harmonic-trap crystal at one drive.
CouplingSet compute_couplings(const CrystalSpec& spec,
                              const EquilibriumConfig& eq,
                              const PhononSpectrum& spectrum,
                              const DriveSpec& drive);

// --- ring lattice -----------------------------------------------------------

enum class RingFormula { NearestNeighbor, ExactLatticeSum };

/// Mode coupling amplitude gtilde_n; the nearest-neighbor form is
/// 6 sin(2 pi n / N), the exact form sums sin(2 pi n d / N)/d^4 over images.
double ring_g_tilde(int n_molecules, int n,
                    RingFormula formula = RingFormula::NearestNeighbor);

/// Minimum-image bare coupling Gbar0_ij/2 = 1/(2 d^3).
double ring_bare_half(int n_molecules, int distance);

/// Phonon-mediated Gbar1_ij/2 as a function of the site distance.
double ring_mediated_half(int n_molecules, double omega_tilde, int distance,
                          RingFormula formula = RingFormula::NearestNeighbor);

/// Same quantity assembled from the complex plane-wave couplings
/// g_{n,j} ~ -i e^{i 2 pi j n / N}; gamma cancels identically, which the
/// tests pin down numerically.
double ring_mediated_half_from_modes(int n_molecules, double omega_tilde,
                                     int distance, double gamma,
                                     double epsilon);

}  // namespace dipsim
