#include "dipsim/spinmodel.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <thread>

namespace dipsim {

using cplx = std::complex<double>;

void IsingSpec::validate() const {
  const int n = n_sites();
  if (couplings.cols() != n) throw DimensionMismatch("IsingSpec: square matrix");
  for (int i = 0; i < n; ++i) {
    if (couplings(i, i) != 0.0) throw SimError("IsingSpec: nonzero diagonal");
    for (int j = 0; j < n; ++j)
      if (couplings(i, j) != couplings(j, i))
        throw SimError("IsingSpec: couplings must be symmetric");
  }
}

namespace {

// sum_{i<j} G_ij s_i s_j for every basis state.
Eigen::VectorXd classical_energies(const Eigen::MatrixXd& g) {
  const int n = static_cast<int>(g.rows());
  const int dim = 1 << n;
  Eigen::VectorXd e = Eigen::VectorXd::Zero(dim);
  for (int s = 0; s < dim; ++s)
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        e[s] += g(i, j) * SpinState::sz(s, i) * SpinState::sz(s, j);
  return e;
}

double coupling_rms(const Eigen::MatrixXd& g) {
  const int n = static_cast<int>(g.rows());
  double s = 0.0;
  int pairs = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      s += g(i, j) * g(i, j);
      ++pairs;
    }
  return pairs ? std::sqrt(s / pairs) : 0.0;
}

}  // namespace

SpinState named_state(NamedState which) {
  // Basis indices for three sites, site 0 = least significant bit:
  // |ggg>=0 |egg>=1 |geg>=2 |eeg>=3 |gge>=4 |ege>=5 |gee>=6 |eee>=7.
  SpinState s;
  s.n_sites = 3;
  s.amps = Eigen::VectorXcd::Zero(8);
  const double r2 = std::sqrt(0.5);
  const double r6 = 1.0 / std::sqrt(6.0);
  switch (which) {
    case NamedState::GHZ:
      s.amps[0] = r2;
      s.amps[7] = -r2;
      break;
    case NamedState::WSuperposition:
      s.amps[4] = r6;
      s.amps[1] = r6;
      s.amps[2] = r6;
      s.amps[3] = -r6;
      s.amps[6] = -r6;
      s.amps[5] = -r6;
      break;
    case NamedState::AFMS:
      s.amps[2] = r2;
      s.amps[5] = -r2;
      break;
    case NamedState::AFMA:
      s.amps[4] = 0.5;
      s.amps[1] = 0.5;
      s.amps[3] = -0.5;
      s.amps[6] = -0.5;
      break;
    case NamedState::Graph3: {
      // Equal-coupling Ising evolution of (|g>+|e>)^3 at G t = pi/4: the
      // aligned configurations pick up the opposite phase of the mixed ones.
      const double a = std::pow(2.0, -1.5);
      for (int k = 0; k < 8; ++k) s.amps[k] = (k == 0 || k == 7) ? a : -a;
      break;
    }
    case NamedState::ParamagneticMinus:
      return SpinState::product_minus(3);
  }
  return s;
}

std::string to_string(SpinOrder order) {
  switch (order) {
    case SpinOrder::FM: return "FM";
    case SpinOrder::AFMS: return "AFMS";
    case SpinOrder::AFMA: return "AFMA";
    case SpinOrder::Paramagnetic: return "paramagnetic";
    case SpinOrder::Mixed: return "mixed";
  }
  return "?";
}

GroundState ground_state(const IsingSpec& spec) {
  spec.validate();
  const int n = spec.n_sites();
  if (n > 12) throw SimError("ground_state: dense diagonalization capped at N = 12");
  const int dim = 1 << n;
  const Eigen::VectorXd diag = classical_energies(spec.couplings);

  double field = spec.field;
  bool infinitesimal = false;
  if (field == 0.0) {
    // Resolve the degenerate manifold with a small field so the
    // symmetry-adapted superposition comes out instead of an arbitrary
    // eigenvector of the degenerate block. Three-flip manifolds split only
    // at third order, so the field cannot be smaller than the cube root of
    // the eigensolver resolution; 1e-3 splits them at ~1e-9 while admixing
    // excited states at ~1e-6 in probability.
    const double grms = coupling_rms(spec.couplings);
    field = 1e-3 * grms;
    infinitesimal = true;
  }

  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
  h.diagonal() = diag;
  for (int s = 0; s < dim; ++s)
    for (int i = 0; i < n; ++i) h(s ^ (1 << i), s) += field;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
  if (es.info() != Eigen::Success) throw SimError("ground_state: eigensolver failed");

  GroundState gs;
  gs.state.n_sites = n;
  gs.state.amps = es.eigenvectors().col(0).cast<cplx>();
  gs.energy = es.eigenvalues()[0];

  if (infinitesimal) {
    gs.energy = diag.minCoeff();
    const double tol = 1e-9 * std::max(1.0, std::abs(gs.energy));
    gs.degeneracy = 0;
    for (int s = 0; s < dim; ++s)
      if (diag[s] - gs.energy <= tol) ++gs.degeneracy;
  } else {
    const double tol = 1e-9 * std::max(1.0, std::abs(gs.energy));
    gs.degeneracy = 0;
    for (int k = 0; k < dim; ++k)
      if (es.eigenvalues()[k] - gs.energy <= tol) ++gs.degeneracy;
  }
  return gs;
}

double classical_ground_energy(const Eigen::MatrixXd& couplings) {
  return classical_energies(couplings).minCoeff();
}

OrderLabel classify_order(const SpinState& state) {
  if (state.n_sites != 3)
    throw DimensionMismatch("classify_order: three-site classification only");
  OrderLabel label;
  label.p_fm = std::norm(state.amps[0]) + std::norm(state.amps[7]);
  label.p_afms = std::norm(state.amps[2]) + std::norm(state.amps[5]);
  label.p_afma = std::norm(state.amps[1]) + std::norm(state.amps[3]) +
                 std::norm(state.amps[4]) + std::norm(state.amps[6]);
  // Majority thresholds sit halfway between each score's field-dominated
  // baseline (2/8 for the two-state families, 4/8 for AFMA) and one.
  if (label.p_fm > 0.5)
    label.order = SpinOrder::FM;
  else if (label.p_afms > 0.5)
    label.order = SpinOrder::AFMS;
  else if (label.p_afma > 0.75)
    label.order = SpinOrder::AFMA;
  else
    label.order = SpinOrder::Paramagnetic;
  return label;
}

std::vector<PhasePoint> phase_diagram(const CrystalSpec& spec,
                                      const std::vector<double>& omegas,
                                      const std::vector<double>& bx_ratios,
                                      bool include_forbidden, int threads) {
  EquilibriumConfig eq = solve_equilibrium(spec);
  PhononSpectrum sp = phonon_modes(spec, eq);

  std::vector<PhasePoint> grid;
  grid.reserve(omegas.size() * bx_ratios.size());
  for (double w : omegas)
    for (double b : bx_ratios) grid.push_back({w, b});

  auto work = [&](size_t begin, size_t end) {
    for (size_t k = begin; k < end; ++k) {
      PhasePoint& pt = grid[k];
      DriveSpec drive;
      drive.omega = pt.omega;
      drive.enforce_margin = !include_forbidden;
      CouplingSet cs;
      try {
        cs = compute_couplings(spec, eq, sp, drive);
      } catch (const ResonantDrive&) {
        pt.order = SpinOrder::Mixed;
        pt.p_fm = pt.p_afms = pt.p_afma =
            std::numeric_limits<double>::quiet_NaN();
        continue;
      }
      IsingSpec ising;
      ising.couplings = cs.g_total;
      ising.field = pt.bx_over_grms * cs.g_rms;
      GroundState gs = ground_state(ising);
      OrderLabel label = classify_order(gs.state);
      pt.p_fm = label.p_fm;
      pt.p_afms = label.p_afms;
      pt.p_afma = label.p_afma;
      pt.order = label.order;
    }
  };

  if (threads <= 1) {
    work(0, grid.size());
  } else {
    std::vector<std::thread> pool;
    const size_t chunk = (grid.size() + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
      const size_t b = std::min(grid.size(), t * chunk);
      const size_t e = std::min(grid.size(), b + chunk);
      if (b < e) pool.emplace_back(work, b, e);
    }
    for (auto& th : pool) th.join();
  }
  return grid;
}

SweepResult adiabatic_sweep(const Eigen::MatrixXd& couplings,
                            const SweepSchedule& schedule,
                            const SpinState& initial,
                            const std::vector<NamedState>& observables,
                            const StepControl& ctrl) {
  const int n = static_cast<int>(couplings.rows());
  if (initial.n_sites != n)
    throw DimensionMismatch("adiabatic_sweep: state/coupling size");
  const int dim = 1 << n;
  const Eigen::VectorXd diag = classical_energies(couplings);
  const double grms = coupling_rms(couplings);
  const double b0 = schedule.b0_over_grms * grms;

  auto field_at = [&](double t) {
    return b0 * std::exp(-t * t / schedule.decay);
  };
  auto deriv = [&](double t, const Eigen::VectorXcd& y, Eigen::VectorXcd& dy) {
    const double b = field_at(t);
    for (int s = 0; s < dim; ++s) {
      cplx acc = diag[s] * y[s];
      for (int i = 0; i < n; ++i) acc += b * y[s ^ (1 << i)];
      dy[s] = cplx(0, -1) * acc;
    }
  };

  std::vector<SpinState> targets;
  targets.reserve(observables.size());
  for (NamedState w : observables) targets.push_back(named_state(w));

  SweepResult result;
  Eigen::VectorXcd y = initial.amps;
  auto record = [&](double t, const Eigen::VectorXcd& psi) {
    SweepSample sample;
    sample.t = t;
    sample.bx_over_grms = grms > 0 ? field_at(t) / grms : 0.0;
    for (const auto& target : targets)
      sample.overlaps.push_back(std::norm(target.amps.dot(psi)));
    result.trajectory.push_back(std::move(sample));
    if (schedule.record_states) {
      SpinState snap;
      snap.n_sites = n;
      snap.amps = psi;
      result.states.push_back(std::move(snap));
    }
  };

  record(0.0, y);
  double next_sample = schedule.sample_dt;
  auto monitor = [&](double t, const Eigen::VectorXcd& psi) {
    if (t >= next_sample) {
      record(t, psi);
      next_sample += schedule.sample_dt;
    }
  };
  StepControl c = ctrl;
  c.max_dt = std::min(c.max_dt, schedule.sample_dt);
  integrate_rk45(deriv, y, 0.0, schedule.t_final, c, monitor);
  if (result.trajectory.back().t < schedule.t_final - 1e-9)
    record(schedule.t_final, y);

  result.final_state.n_sites = n;
  result.final_state.amps = y;
  return result;
}

SpinState ising_evolve(const Eigen::MatrixXd& couplings,
                       const SpinState& initial, double t) {
  const int n = static_cast<int>(couplings.rows());
  if (initial.n_sites != n)
    throw DimensionMismatch("ising_evolve: state/coupling size");
  const Eigen::VectorXd diag = classical_energies(couplings);
  SpinState out = initial;
  for (int s = 0; s < initial.dim(); ++s)
    out.amps[s] *= std::exp(cplx(0, -diag[s] * t));
  return out;
}

}  // namespace dipsim
