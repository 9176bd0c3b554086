#include "dipsim/crystal.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace dipsim {

namespace {

// Gradient of V = 1/2 sum u_i^2 + sum_{i<j} |u_i - u_j|^{-3} in units
// (D/m nu^2)^{1/5}; zero gradient is the force-balance condition.
Eigen::VectorXd potential_gradient(const Eigen::VectorXd& u) {
  const int n = static_cast<int>(u.size());
  Eigen::VectorXd g = u;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      const double d = u[i] - u[j];
      g[i] -= 3.0 * d / std::pow(std::abs(d), 5.0);
    }
  }
  return g;
}

// Hessian of the same potential: identity plus a graph Laplacian with
// weights 12/r^5, so it is positive definite for any ordered configuration.
Eigen::MatrixXd potential_hessian(const Eigen::VectorXd& u) {
  const int n = static_cast<int>(u.size());
  Eigen::MatrixXd h = Eigen::MatrixXd::Identity(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double k = 12.0 / std::pow(std::abs(u[i] - u[j]), 5.0);
      h(i, i) += k;
      h(j, j) += k;
      h(i, j) -= k;
      h(j, i) -= k;
    }
  }
  return h;
}

}  // namespace

void CrystalSpec::validate() const {
  if (n_molecules < 1) throw SimError("CrystalSpec: n_molecules must be >= 1");
  if (!(epsilon > 0.0) || epsilon > 0.5)
    throw SimError("CrystalSpec: epsilon must be in (0, 0.5]");
  if (trap == Trap::Ring && gamma <= 1.0)
    throw SimError("CrystalSpec: ring trap requires gamma > 1");
  if (trap == Trap::Harmonic && dipole_scale <= 0.0)
    throw SimError("CrystalSpec: dipole_scale must be positive");
}

EquilibriumConfig solve_equilibrium(const CrystalSpec& spec,
                                    const NewtonOptions& opt) {
  spec.validate();
  if (spec.trap != Trap::Harmonic)
    throw SimError("solve_equilibrium: harmonic trap only");
  const int n = spec.n_molecules;

  if (n == 1) {
    EquilibriumConfig eq;
    eq.positions = Eigen::VectorXd::Zero(1);
    eq.residual = 0.0;
    return eq;
  }

  // Equally spaced initial guess at the two-molecule spacing 6^{1/5}.
  const double xi2 = std::pow(6.0, 0.2);
  Eigen::VectorXd u(n);
  for (int i = 0; i < n; ++i) u[i] = (i - 0.5 * (n - 1)) * xi2;

  double best_residual = std::numeric_limits<double>::infinity();
  bool converged = false;
  for (int iter = 0; iter < opt.max_iterations; ++iter) {
    Eigen::VectorXd g = potential_gradient(u);
    const double res = g.cwiseAbs().maxCoeff();
    best_residual = std::min(best_residual, res);
    if (res < opt.tolerance) {
      converged = true;
      break;
    }
    Eigen::VectorXd step = potential_hessian(u).ldlt().solve(-g);
    // Backtracking keeps the ordering intact; the force law is stiff.
    double alpha = 1.0;
    const double g0 = g.norm();
    for (int bt = 0; bt < 60; ++bt) {
      Eigen::VectorXd trial = u + alpha * step;
      bool ordered = true;
      for (int i = 0; i + 1 < n; ++i)
        if (trial[i + 1] - trial[i] <= 1e-8) ordered = false;
      if (ordered && potential_gradient(trial).norm() < g0) {
        u = trial;
        break;
      }
      alpha *= 0.5;
      if (bt == 59) u += alpha * step;
    }
  }
  if (!converged) {
    std::ostringstream msg;
    msg << "solve_equilibrium: no convergence after " << opt.max_iterations
        << " iterations, best residual " << best_residual;
    throw NonConvergence(msg.str());
  }

  // The trap is reflection symmetric, so the solution is too; symmetrizing
  // removes the solver's rounding bias.
  Eigen::VectorXd u_sym = 0.5 * (u - u.reverse().eval());
  if (potential_gradient(u_sym).cwiseAbs().maxCoeff() <=
      potential_gradient(u).cwiseAbs().maxCoeff())
    u = u_sym;

  double spacing = std::numeric_limits<double>::infinity();
  for (int i = 0; i + 1 < n; ++i) spacing = std::min(spacing, u[i + 1] - u[i]);

  EquilibriumConfig eq;
  eq.positions = u / spacing;
  eq.residual = potential_gradient(u).cwiseAbs().maxCoeff();
  eq.xi = spacing;
  return eq;
}

PhononSpectrum phonon_modes(const CrystalSpec& spec,
                            const EquilibriumConfig& eq) {
  spec.validate();
  if (spec.trap != Trap::Harmonic)
    throw SimError("phonon_modes: harmonic trap only");
  if (eq.residual > 1e-8)
    throw SimError("phonon_modes: equilibrium residual " +
                   std::to_string(eq.residual) + " too large");
  const int n = static_cast<int>(eq.positions.size());

  PhononSpectrum sp;
  if (n == 1) {
    sp.frequencies = Eigen::VectorXd::Ones(1);
    sp.modes = Eigen::MatrixXd::Ones(1, 1);
    return sp;
  }

  // Dynamical matrix in trap units; positions are in units of a, and the
  // interaction stiffness scales as 12/(xi^5 r^5).
  const double xi5 = std::pow(eq.xi.value(), 5.0);
  Eigen::MatrixXd k = Eigen::MatrixXd::Identity(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double w =
          12.0 / (xi5 * std::pow(std::abs(eq.positions[i] - eq.positions[j]), 5.0));
      k(i, i) += w;
      k(j, j) += w;
      k(i, j) -= w;
      k(j, i) -= w;
    }
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(k);
  if (es.info() != Eigen::Success)
    throw SimError("phonon_modes: eigensolver failed");
  Eigen::VectorXd evals = es.eigenvalues();
  if (evals.minCoeff() < -1e-10) {
    std::ostringstream msg;
    msg << "phonon_modes: negative eigenvalue " << evals.minCoeff()
        << "; configuration is not a potential minimum";
    throw NegativeEigenvalue(msg.str());
  }

  sp.frequencies.resize(n);
  sp.modes.resize(n, n);
  sp.zero_modes = 0;
  for (int m = 0; m < n; ++m) {
    const double lambda = std::max(evals[m], 0.0);
    if (std::abs(evals[m]) < 1e-9) ++sp.zero_modes;
    sp.frequencies[m] = std::sqrt(lambda);
    Eigen::VectorXd v = es.eigenvectors().col(m);
    // Deterministic sign: first significant component positive.
    for (int i = 0; i < n; ++i) {
      if (std::abs(v[i]) > 1e-8) {
        if (v[i] < 0) v = -v;
        break;
      }
    }
    sp.modes.row(m) = v.transpose();
  }
  return sp;
}

double ring_frequency(int n_molecules, int n) {
  const double q = std::numbers::pi * static_cast<double>(n) / n_molecules;
  return 2.0 * std::sqrt(12.0) * std::abs(std::sin(q));
}

double ring_frequency_exact(int n_molecules, int n) {
  const double q = 2.0 * std::numbers::pi * static_cast<double>(n) / n_molecules;
  double lambda = 0.0;
  // Sum the 12/d^5 stiffness over all minimum-image neighbors; for even N
  // the antipodal site is a single image.
  for (int d = 1; d <= n_molecules / 2; ++d) {
    const double k = 12.0 / std::pow(static_cast<double>(d), 5.0);
    const double weight = (2 * d == n_molecules) ? 1.0 : 2.0;
    lambda += weight * k * (1.0 - std::cos(q * d));
  }
  return std::sqrt(std::max(lambda, 0.0));
}

RingMode ring_mode(const CrystalSpec& spec, int n) {
  spec.validate();
  if (spec.trap != Trap::Ring) throw SimError("ring_mode: ring trap only");
  const int nn = spec.n_molecules;
  if (n < -(nn / 2) || n > nn / 2)
    throw SimError("ring_mode: mode index outside [-N/2, N/2]");
  RingMode m;
  m.omega = ring_frequency(nn, n);
  m.phases.resize(nn);
  const double norm = 1.0 / std::sqrt(static_cast<double>(nn));
  for (int j = 0; j < nn; ++j) {
    const double arg = 2.0 * std::numbers::pi * j * n / nn;
    m.phases[j] = std::polar(norm, arg);
  }
  return m;
}

}  // namespace dipsim
