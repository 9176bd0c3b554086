#pragma once
#include <Eigen/Dense>
#include <complex>
#include <optional>

#include "dipsim/errors.hpp"

namespace dipsim {

enum class Trap { Harmonic, Ring };

/// Trap geometry and physical constants in dimensionless units.
///
/// Harmonic chain: lengths in units of the minimum lattice spacing a,
/// frequencies in units of the axial trap frequency nu.
/// Ring: lengths in units of the (constant) lattice spacing a, frequencies
/// in units of D/(hbar a^3), where D = mu0^2/(4 pi eps0).
struct CrystalSpec {
  int n_molecules = 3;
  Trap trap = Trap::Harmonic;
  double epsilon = 0.1;       // dipole modulation depth, << 1
  double gamma = 100.0;       // ring only: D m/(hbar^2 a), must be >> 1
  double dipole_scale = 0.5;  // harmonic only: (D/hbar a^3) / nu

  void validate() const;
  bool epsilon_warning() const { return epsilon > 0.2; }
};

/// Classical equilibrium of the harmonic-trap chain, positions in units of a
/// (minimum spacing == 1 by construction).
struct EquilibriumConfig {
  Eigen::VectorXd positions;  // strictly increasing
  double residual = 0.0;      // max |force| at the solution
  std::optional<double> xi;   // min spacing in units of (D/m nu^2)^{1/5}
};

/// Phonon frequencies (ascending, units nu for the harmonic trap) and
/// orthonormal mode vectors; modes.row(n) is c_{n,i}.
struct PhononSpectrum {
  Eigen::VectorXd frequencies;
  Eigen::MatrixXd modes;
  int zero_modes = 0;
};

struct NewtonOptions {
  int max_iterations = 200;
  double tolerance = 1e-12;  // inf-norm of the dimensionless force
};

/// Solve the force balance  u_i - 3 sum_{j!=i} (u_i-u_j)/|u_i-u_j|^5 = 0
/// by damped Newton from an equally spaced initial guess.
EquilibriumConfig solve_equilibrium(const CrystalSpec& spec,
                                    const NewtonOptions& opt = {});

/// Diagonalize the dynamical matrix at the equilibrium; eigenvalues are
/// the squared frequencies in units nu^2.
PhononSpectrum phonon_modes(const CrystalSpec& spec,
                            const EquilibriumConfig& eq);

/// One plane-wave mode of the homogeneous ring, n in [-N/2, N/2].
struct RingMode {
  double omega = 0.0;           // omega-tilde, units D/(hbar a^3 sqrt(gamma))
  Eigen::VectorXcd phases;      // c_{n,j} = e^{i 2 pi j n / N} / sqrt(N)
};

/// Nearest-neighbor dispersion 2*sqrt(12)*|sin(pi n / N)|.
double ring_frequency(int n_molecules, int n);

/// Dispersion including every minimum-image neighbor of the 1/r^3 lattice.
double ring_frequency_exact(int n_molecules, int n);

RingMode ring_mode(const CrystalSpec& spec, int n);

/// Debye frequency 2*sqrt(12) of the ring lattice.
inline double ring_debye_frequency() { return 2.0 * std::sqrt(12.0); }

}  // namespace dipsim
