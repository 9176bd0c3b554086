#pragma once
#include <Eigen/Dense>
#include <vector>

#include "dipsim/errors.hpp"

namespace dipsim {

/// Rigid rotor in a dc bias field, M = 0 block. Energies in units of the
/// rotational constant B, fields in units B/mu_c, dipoles in units mu_c.
struct RotorSpec {
  int j_max = 12;
  Eigen::VectorXd field_grid;  // strictly increasing E_dc values

  void validate() const;
};

struct StarkOptions {
  bool auto_refine = true;     // refine internally where tracking overlap < 0.9
  int max_refine_depth = 16;
};

/// Adiabatically tracked eigenstates along the field grid. Row s of
/// `energies`/`dipoles` follows the state that starts as |J=s, M=0> at the
/// first grid point, through avoided crossings by overlap continuity.
struct StarkMap {
  int j_max = 0;
  Eigen::VectorXd fields;
  Eigen::MatrixXd energies;  // states x grid
  Eigen::MatrixXd dipoles;   // <mu_z>/mu_c, states x grid
  std::vector<Eigen::MatrixXd> eigenvectors;  // per grid point, cols = tracked
};

StarkMap stark_map(const RotorSpec& spec, const StarkOptions& opt = {});

struct SweetSpot {
  double field = 0.0;     // E_0, units B/mu_c
  double dipole = 0.0;    // mu_0, units mu_c
  double slope_a = 0.0;   // d<mu>/dE of the first state at E_0
  double slope_b = 0.0;
  int state_a = 0;
  int state_b = 0;
};

/// Root of mu_b(E) - mu_a(E) on the tracked curves, refined by local
/// re-diagonalization.
SweetSpot find_sweet_spot(const StarkMap& map, int state_a, int state_b);

/// Maximal symmetric interval around E_0 where both dipole curves stay
/// within `tolerance` (units mu_c) of their tangent lines at E_0.
struct FieldWindow {
  double lo = 0.0;
  double hi = 0.0;
};

FieldWindow linear_window(const StarkMap& map, const SweetSpot& sweet,
                          double tolerance = 0.005);

/// Modulation depth eps = |d mu/dE|_{E0} * E_ac / |mu_0| for an ac field of
/// amplitude E_ac (units B/mu_c). Throws if E_ac leaves the linear window.
double modulation_depth(const StarkMap& map, const SweetSpot& sweet,
                        double e_ac, double window_tolerance = 0.005);

/// Dipole of the ground rotor state from second-order perturbation theory,
/// <mu_z>/mu_c = E/3 + O(E^3); used as an independent small-field check.
double perturbative_ground_dipole(double field);

}  // namespace dipsim
