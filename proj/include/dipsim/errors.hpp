#pragma once
#include <stdexcept>
#include <string>

namespace dipsim {

// Base class for all simulator errors.
struct SimError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Equilibrium solver ran out of iterations; message carries best residual.
struct NonConvergence : SimError { using SimError::SimError; };
// Hessian eigenvalue below -1e-10: the configuration is not a minimum.
struct NegativeEigenvalue : SimError { using SimError::SimError; };
// Modulation frequency violates the minimum-detuning margin of a coupled mode.
struct ResonantDrive : SimError { using SimError::SimError; };
// Population in the top Fock level exceeded leak_tol; n_max too small.
struct TruncationLeak : SimError { using SimError::SimError; };
// Adaptive integrator step size underflowed.
struct StepFailure : SimError { using SimError::SimError; };
struct DimensionMismatch : SimError { using SimError::SimError; };
// Adiabatic state tracking lost a state between grid points.
struct TrackingAmbiguity : SimError { using SimError::SimError; };
// Dipole curves of the requested state pair do not intersect on the grid.
struct NoCrossing : SimError { using SimError::SimError; };
struct OutsideLinearWindow : SimError { using SimError::SimError; };
struct ConfigError : SimError { using SimError::SimError; };

}  // namespace dipsim
