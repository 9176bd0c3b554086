#pragma once
#include <Eigen/Dense>
#include <string>
#include <vector>

#include "dipsim/dynamics.hpp"
#include "dipsim/integrate.hpp"

namespace dipsim {

/// Transverse-field Ising model H = Bx sum_i sigma^x_i + sum_{i<j} G_ij
/// sigma^z_i sigma^z_j, couplings and field in the same (dimensionless) unit.
struct IsingSpec {
  Eigen::MatrixXd couplings;
  double field = 0.0;

  int n_sites() const { return static_cast<int>(couplings.rows()); }
  void validate() const;
};

/// Named three-spin states with the sign conventions used throughout.
enum class NamedState {
  GHZ,                // (|ggg> - |eee>)/sqrt2
  WSuperposition,     // (|gge>+|egg>+|geg>-|eeg>-|gee>-|ege>)/sqrt6
  AFMS,               // (|geg> - |ege>)/sqrt2
  AFMA,               // (|gge>+|egg>-|eeg>-|gee>)/2
  Graph3,             // Ising-evolved (|g>+|e>)^3 at G t = pi/4
  ParamagneticMinus,  // |--->
};

SpinState named_state(NamedState which);

enum class SpinOrder { FM, AFMS, AFMA, Paramagnetic, Mixed };

struct OrderLabel {
  SpinOrder order = SpinOrder::Mixed;
  double p_fm = 0.0;    // P_ggg + P_eee
  double p_afms = 0.0;  // P_ege + P_geg
  double p_afma = 0.0;  // four-state overlap
};

std::string to_string(SpinOrder order);

struct GroundState {
  double energy = 0.0;
  SpinState state;
  int degeneracy = 1;
};

/// Lowest eigenpair by dense diagonalization (N <= 12). At field = 0 the
/// degenerate manifold is resolved by an infinitesimal transverse field so
/// the symmetry-adapted superposition is returned; the degeneracy count
/// comes from the classical spectrum.
GroundState ground_state(const IsingSpec& spec);

/// Minimum of sum_{i<j} G_ij s_i s_j over all 2^N classical configurations.
double classical_ground_energy(const Eigen::MatrixXd& couplings);

OrderLabel classify_order(const SpinState& state);

struct PhasePoint {
  double omega = 0.0;
  double bx_over_grms = 0.0;
  double p_fm = 0.0;
  double p_afms = 0.0;
  double p_afma = 0.0;
  SpinOrder order = SpinOrder::Mixed;
};

/// Scan order parameters of the N=3 harmonic crystal over drive frequency
/// and transverse field. Frequencies inside the forbidden detuning bands are
/// skipped unless include_forbidden is set.
std::vector<PhasePoint> phase_diagram(const CrystalSpec& spec,
                                      const std::vector<double>& omegas,
                                      const std::vector<double>& bx_ratios,
                                      bool include_forbidden = false,
                                      int threads = 1);

/// Gaussian turn-off of the transverse field, B(t) = b0 * Grms *
/// exp(-t^2/decay); time in units of the inverse coupling.
struct SweepSchedule {
  double b0_over_grms = 10.0;
  double decay = 50.0 * 3.14159265358979323846;
  double t_final = 40.0;
  double sample_dt = 0.25;
  bool record_states = false;  // keep psi(t) at every sample
};

struct SweepSample {
  double t = 0.0;
  double bx_over_grms = 0.0;
  std::vector<double> overlaps;
};

struct SweepResult {
  std::vector<SweepSample> trajectory;
  std::vector<SpinState> states;  // filled when record_states is set
  SpinState final_state;
};

/// Integrate the Schroedinger equation with the time-dependent field and
/// record |<named|psi(t)>|^2 for each requested state.
SweepResult adiabatic_sweep(const Eigen::MatrixXd& couplings,
                            const SweepSchedule& schedule,
                            const SpinState& initial,
                            const std::vector<NamedState>& observables,
                            const StepControl& ctrl = {});

/// Exact diagonal phase evolution under sum_{i<j} G_ij sigma^z sigma^z.
SpinState ising_evolve(const Eigen::MatrixXd& couplings,
                       const SpinState& initial, double t);

}  // namespace dipsim
