#include "dipsim/rotor.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace dipsim {

void RotorSpec::validate() const {
  if (j_max < 6) throw SimError("RotorSpec: j_max must be >= 6 for convergence");
  if (field_grid.size() < 2) throw SimError("RotorSpec: need at least 2 grid points");
  for (int k = 0; k + 1 < field_grid.size(); ++k)
    if (field_grid[k + 1] <= field_grid[k])
      throw SimError("RotorSpec: field grid must be strictly increasing");
}

namespace {

// <J+1,0|cos theta|J,0> = (J+1)/sqrt((2J+1)(2J+3))
Eigen::MatrixXd cos_theta_matrix(int j_max) {
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(j_max + 1, j_max + 1);
  for (int j = 0; j < j_max; ++j) {
    const double v = (j + 1.0) / std::sqrt((2.0 * j + 1.0) * (2.0 * j + 3.0));
    c(j, j + 1) = c(j + 1, j) = v;
  }
  return c;
}

struct Diagonalized {
  Eigen::VectorXd energies;
  Eigen::MatrixXd vectors;  // columns
};

Diagonalized diagonalize_at(int j_max, const Eigen::MatrixXd& cos_m,
                            double field) {
  Eigen::MatrixXd h = -field * cos_m;
  for (int j = 0; j <= j_max; ++j) h(j, j) += double(j) * (j + 1);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
  if (es.info() != Eigen::Success) throw SimError("stark_map: eigensolver failed");
  return {es.eigenvalues(), es.eigenvectors()};
}

// Assign eigenvectors at `next` to the tracked columns of `prev` by maximal
// overlap, refining the field interval where continuity is poor.
Eigen::MatrixXd track_segment(int j_max, const Eigen::MatrixXd& cos_m,
                              const Eigen::MatrixXd& prev, double field_prev,
                              double field_next, int depth,
                              const StarkOptions& opt) {
  Diagonalized next = diagonalize_at(j_max, cos_m, field_next);
  const int n = j_max + 1;
  Eigen::MatrixXd assigned(n, n);
  std::vector<bool> used(n, false);
  double worst = 1.0;
  for (int s = 0; s < n; ++s) {
    int best = -1;
    double best_ov = -1.0;
    for (int k = 0; k < n; ++k) {
      if (used[k]) continue;
      const double ov = std::abs(prev.col(s).dot(next.vectors.col(k)));
      if (ov > best_ov) {
        best_ov = ov;
        best = k;
      }
    }
    used[best] = true;
    Eigen::VectorXd v = next.vectors.col(best);
    if (prev.col(s).dot(v) < 0) v = -v;  // keep a continuous phase
    assigned.col(s) = v;
    worst = std::min(worst, best_ov);
  }
  if (worst >= 0.9 || depth >= opt.max_refine_depth || !opt.auto_refine) {
    if (worst < 0.5) {
      std::ostringstream msg;
      msg << "stark_map: tracking overlap " << worst << " below 0.5 between E = "
          << field_prev << " and " << field_next << "; grid too coarse";
      throw TrackingAmbiguity(msg.str());
    }
    return assigned;
  }
  const double mid = 0.5 * (field_prev + field_next);
  Eigen::MatrixXd half =
      track_segment(j_max, cos_m, prev, field_prev, mid, depth + 1, opt);
  return track_segment(j_max, cos_m, half, mid, field_next, depth + 1, opt);
}

}  // namespace

StarkMap stark_map(const RotorSpec& spec, const StarkOptions& opt) {
  spec.validate();
  const int n = spec.j_max + 1;
  const Eigen::MatrixXd cos_m = cos_theta_matrix(spec.j_max);

  StarkMap map;
  map.j_max = spec.j_max;
  map.fields = spec.field_grid;
  map.energies.resize(n, spec.field_grid.size());
  map.dipoles.resize(n, spec.field_grid.size());
  map.eigenvectors.reserve(spec.field_grid.size());

  Diagonalized first = diagonalize_at(spec.j_max, cos_m, spec.field_grid[0]);
  Eigen::MatrixXd tracked = first.vectors;  // at E=0 eigenstates are |J,0> in order
  map.eigenvectors.push_back(tracked);

  auto fill_column = [&](int col, const Eigen::MatrixXd& vecs) {
    Eigen::MatrixXd h = -map.fields[col] * cos_m;
    for (int j = 0; j < n; ++j) h(j, j) += double(j) * (j + 1.0);
    for (int s = 0; s < n; ++s) {
      map.energies(s, col) = vecs.col(s).dot(h * vecs.col(s));
      map.dipoles(s, col) = vecs.col(s).dot(cos_m * vecs.col(s));
    }
  };
  fill_column(0, tracked);

  for (int k = 1; k < spec.field_grid.size(); ++k) {
    tracked = track_segment(spec.j_max, cos_m, tracked, map.fields[k - 1],
                            map.fields[k], 0, opt);
    map.eigenvectors.push_back(tracked);
    fill_column(k, tracked);
  }
  return map;
}

namespace {

// Re-diagonalize at an arbitrary field and return the dipole of the state
// tracked from the nearest grid point.
double tracked_dipole_at(const StarkMap& map, int state, double field) {
  const Eigen::MatrixXd cos_m = cos_theta_matrix(map.j_max);
  int nearest = 0;
  double best = std::numeric_limits<double>::infinity();
  for (int k = 0; k < map.fields.size(); ++k) {
    const double d = std::abs(map.fields[k] - field);
    if (d < best) {
      best = d;
      nearest = k;
    }
  }
  Diagonalized d = diagonalize_at(map.j_max, cos_m, field);
  const Eigen::VectorXd ref = map.eigenvectors[nearest].col(state);
  int pick = 0;
  double best_ov = -1.0;
  for (int k = 0; k <= map.j_max; ++k) {
    const double ov = std::abs(ref.dot(d.vectors.col(k)));
    if (ov > best_ov) {
      best_ov = ov;
      pick = k;
    }
  }
  if (best_ov < 0.5)
    throw TrackingAmbiguity("tracked_dipole_at: lost the state off-grid");
  return d.vectors.col(pick).dot(cos_m * d.vectors.col(pick));
}

}  // namespace

SweetSpot find_sweet_spot(const StarkMap& map, int state_a, int state_b) {
  if (state_a == state_b) throw SimError("find_sweet_spot: need two states");
  const int n = map.j_max + 1;
  if (state_a < 0 || state_b < 0 || state_a >= n || state_b >= n)
    throw DimensionMismatch("find_sweet_spot: state index out of range");

  // Bracket a sign change of mu_b - mu_a on the grid, skipping the zero-field
  // point where every dipole vanishes by parity.
  int bracket = -1;
  for (int k = 0; k + 1 < map.fields.size(); ++k) {
    if (map.fields[k] <= 0.0) continue;
    const double d0 = map.dipoles(state_b, k) - map.dipoles(state_a, k);
    const double d1 = map.dipoles(state_b, k + 1) - map.dipoles(state_a, k + 1);
    if (d0 == 0.0 || d0 * d1 < 0.0) {
      bracket = k;
      break;
    }
  }
  if (bracket < 0)
    throw NoCrossing("find_sweet_spot: dipole curves do not intersect on the grid");

  double lo = map.fields[bracket], hi = map.fields[bracket + 1];
  auto diff = [&](double e) {
    return tracked_dipole_at(map, state_b, e) - tracked_dipole_at(map, state_a, e);
  };
  double flo = diff(lo);
  for (int iter = 0; iter < 100 && hi - lo > 1e-12; ++iter) {
    const double mid = 0.5 * (lo + hi);
    const double fmid = diff(mid);
    if (flo * fmid <= 0.0)
      hi = mid;
    else {
      lo = mid;
      flo = fmid;
    }
  }

  SweetSpot s;
  s.state_a = state_a;
  s.state_b = state_b;
  s.field = 0.5 * (lo + hi);
  s.dipole = 0.5 * (tracked_dipole_at(map, state_a, s.field) +
                    tracked_dipole_at(map, state_b, s.field));
  const double h = 1e-4;
  s.slope_a = (tracked_dipole_at(map, state_a, s.field + h) -
               tracked_dipole_at(map, state_a, s.field - h)) / (2.0 * h);
  s.slope_b = (tracked_dipole_at(map, state_b, s.field + h) -
               tracked_dipole_at(map, state_b, s.field - h)) / (2.0 * h);
  return s;
}

FieldWindow linear_window(const StarkMap& map, const SweetSpot& sweet,
                          double tolerance) {
  auto deviation = [&](double e) {
    const double da = tracked_dipole_at(map, sweet.state_a, e) -
                      (sweet.dipole + sweet.slope_a * (e - sweet.field));
    const double db = tracked_dipole_at(map, sweet.state_b, e) -
                      (sweet.dipole + sweet.slope_b * (e - sweet.field));
    return std::max(std::abs(da), std::abs(db));
  };
  const double e_max = map.fields[map.fields.size() - 1];
  const double step = 1e-3 * std::max(1.0, sweet.field);
  double w = 0.0;
  while (true) {
    const double next = w + step;
    if (sweet.field + next > e_max || sweet.field - next < 0.0) break;
    if (deviation(sweet.field + next) > tolerance ||
        deviation(sweet.field - next) > tolerance)
      break;
    w = next;
  }
  return {sweet.field - w, sweet.field + w};
}

double modulation_depth(const StarkMap& map, const SweetSpot& sweet,
                        double e_ac, double window_tolerance) {
  if (e_ac == 0.0) return 0.0;
  if (e_ac < 0.0) throw SimError("modulation_depth: E_ac must be >= 0");
  FieldWindow window = linear_window(map, sweet, window_tolerance);
  const double half = 0.5 * (window.hi - window.lo);
  if (e_ac > half) {
    std::ostringstream msg;
    msg << "modulation_depth: E_ac = " << e_ac
        << " exceeds the linear window half-width " << half;
    throw OutsideLinearWindow(msg.str());
  }
  const double slope = 0.5 * (std::abs(sweet.slope_a) + std::abs(sweet.slope_b));
  return slope * e_ac / std::abs(sweet.dipole);
}

double perturbative_ground_dipole(double field) {
  // Second order in the field: mixing with |1,0> only, matrix element
  // 1/sqrt(3), level spacing 2B.
  return field / 3.0;
}

}  // namespace dipsim
