#include "dipsim/couplings.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <sstream>

namespace dipsim {

namespace {
constexpr double kZeroRowTol = 1e-10;  // clip rounding residue of uncoupled modes
}

double CouplingSet::phys_spin_phonon(int n, int i) const {
  return g_spin_phonon(n, i) * epsilon *
         std::sqrt(dipole_scale / (2.0 * mode_freqs[n]));
}

Eigen::MatrixXd CouplingSet::phys_spin_phonon_matrix() const {
  Eigen::MatrixXd g = g_spin_phonon;
  for (int n = 0; n < n_modes(); ++n)
    g.row(n) *= epsilon * std::sqrt(dipole_scale / (2.0 * mode_freqs[n]));
  return g;
}

Eigen::MatrixXd bare_couplings(const EquilibriumConfig& eq) {
  const int n = static_cast<int>(eq.positions.size());
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double r = std::abs(eq.positions[i] - eq.positions[j]);
      g(i, j) = g(j, i) = 1.0 / (r * r * r);
    }
  return g;
}

Eigen::MatrixXd spin_phonon_couplings(const EquilibriumConfig& eq,
                                      const PhononSpectrum& spectrum) {
  const int n = static_cast<int>(eq.positions.size());
  if (spectrum.modes.cols() != n)
    throw DimensionMismatch("spin_phonon_couplings: spectrum/equilibrium size");
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(n, n);
  if (n == 1) return g;
  const double pref = -3.0 / std::pow(eq.xi.value(), 2.5);
  for (int m = 0; m < n; ++m) {
    for (int i = 0; i < n; ++i) {
      double s = 0.0;
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        const double d = eq.positions[i] - eq.positions[j];
        s += d / std::pow(std::abs(d), 5.0) *
             (spectrum.modes(m, i) - spectrum.modes(m, j));
      }
      g(m, i) = pref * s;
    }
    // Uniform-translation modes do not stretch any pair; clip the rounding
    // residue so the COM row is identically zero.
    if (g.row(m).cwiseAbs().maxCoeff() < kZeroRowTol) g.row(m).setZero();
  }
  return g;
}

Eigen::VectorXd detuning_margins(const Eigen::MatrixXd& g_sp,
                                 const PhononSpectrum& spectrum,
                                 const CrystalSpec& spec,
                                 double margin_factor) {
  const int n_modes = static_cast<int>(g_sp.rows());
  Eigen::VectorXd m = Eigen::VectorXd::Zero(n_modes);
  for (int n = 0; n < n_modes; ++n) {
    const double gmax = g_sp.row(n).cwiseAbs().maxCoeff();
    if (gmax == 0.0) continue;
    const double phys = gmax * spec.epsilon *
                        std::sqrt(spec.dipole_scale / (2.0 * spectrum.frequencies[n]));
    m[n] = margin_factor * phys / 2.0;
  }
  return m;
}

Eigen::MatrixXd mediated_couplings(const Eigen::MatrixXd& g_sp,
                                   const PhononSpectrum& spectrum,
                                   const DriveSpec& drive,
                                   const CrystalSpec& spec) {
  const int n_modes = static_cast<int>(g_sp.rows());
  const int n = static_cast<int>(g_sp.cols());
  if (drive.omega <= 0.0) throw SimError("mediated_couplings: omega must be > 0");

  Eigen::VectorXd margins =
      detuning_margins(g_sp, spectrum, spec, drive.margin_factor);
  for (int m = 0; m < n_modes; ++m) {
    if (margins[m] == 0.0) continue;
    const double det = std::abs(drive.omega - spectrum.frequencies[m]);
    const double floor = drive.enforce_margin ? margins[m] : 1e-9;
    if (det < floor) {
      std::ostringstream msg;
      msg << "mediated_couplings: omega = " << drive.omega << " within "
          << det << " of mode " << m << " (omega_n = "
          << spectrum.frequencies[m] << ", margin " << margins[m] << ")";
      throw ResonantDrive(msg.str());
    }
  }

  Eigen::MatrixXd g1 = Eigen::MatrixXd::Zero(n, n);
  const double w2 = drive.omega * drive.omega;
  for (int m = 0; m < n_modes; ++m) {
    if (g_sp.row(m).cwiseAbs().maxCoeff() == 0.0) continue;
    const double wn = spectrum.frequencies[m];
    const double denom = w2 - wn * wn;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        const double c = g_sp(m, i) * g_sp(m, j) / denom;
        g1(i, j) += c;
        g1(j, i) += c;
      }
  }
  return g1;
}

TotalCouplings total_couplings(const Eigen::MatrixXd& bare,
                               const Eigen::MatrixXd& mediated) {
  if (bare.rows() != mediated.rows() || bare.cols() != mediated.cols())
    throw DimensionMismatch("total_couplings: matrix sizes differ");
  TotalCouplings t;
  t.g = 0.5 * (bare + mediated);
  t.g.diagonal().setZero();
  const int n = static_cast<int>(bare.rows());
  double s = 0.0;
  int pairs = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      s += t.g(i, j) * t.g(i, j);
      ++pairs;
    }
  t.g_rms = pairs > 0 ? std::sqrt(s / pairs) : 0.0;
  return t;
}

std::vector<OmegaInterval> valid_regions(const Eigen::MatrixXd& g_sp,
                                         const PhononSpectrum& spectrum,
                                         const CrystalSpec& spec,
                                         double margin_factor) {
  Eigen::VectorXd margins =
      detuning_margins(g_sp, spectrum, spec, margin_factor);
  // Collect forbidden bands of coupled modes and merge overlaps.
  std::vector<OmegaInterval> bands;
  for (int m = 0; m < margins.size(); ++m) {
    if (margins[m] == 0.0) continue;
    bands.push_back({spectrum.frequencies[m] - margins[m],
                     spectrum.frequencies[m] + margins[m]});
  }
  std::sort(bands.begin(), bands.end(),
            [](const OmegaInterval& a, const OmegaInterval& b) { return a.lo < b.lo; });
  std::vector<OmegaInterval> merged;
  for (const auto& b : bands) {
    if (!merged.empty() && b.lo <= merged.back().hi)
      merged.back().hi = std::max(merged.back().hi, b.hi);
    else
      merged.push_back(b);
  }

  std::vector<OmegaInterval> regions;
  double lo = 0.0;
  for (const auto& b : merged) {
    if (b.lo > lo) regions.push_back({lo, b.lo});
    lo = std::max(lo, b.hi);
  }
  regions.push_back({lo, std::numeric_limits<double>::infinity()});
  return regions;
}

CouplingSet compute_couplings(const CrystalSpec& spec,
                              const EquilibriumConfig& eq,
                              const PhononSpectrum& spectrum,
                              const DriveSpec& drive) {
  CouplingSet cs;
  cs.g_bare = bare_couplings(eq);
  cs.g_spin_phonon = spin_phonon_couplings(eq, spectrum);
  cs.mode_freqs = spectrum.frequencies;
  cs.g_mediated = mediated_couplings(cs.g_spin_phonon, spectrum, drive, spec);
  TotalCouplings t = total_couplings(cs.g_bare, cs.g_mediated);
  cs.g_total = t.g;
  cs.g_rms = t.g_rms;
  cs.omega = drive.omega;
  cs.epsilon = spec.epsilon;
  cs.dipole_scale = spec.dipole_scale;
  return cs;
}

// --- ring lattice -----------------------------------------------------------

double ring_g_tilde(int n_molecules, int n, RingFormula formula) {
  const double q = 2.0 * std::numbers::pi * static_cast<double>(n) / n_molecules;
  if (formula == RingFormula::NearestNeighbor) return 6.0 * std::sin(q);
  double s = 0.0;
  for (int d = 1; d <= (n_molecules - 1) / 2; ++d)
    s += std::sin(q * d) / std::pow(static_cast<double>(d), 4.0);
  return 6.0 * s;
}

namespace {
int min_image(int n_molecules, int distance) {
  int d = ((distance % n_molecules) + n_molecules) % n_molecules;
  return std::min(d, n_molecules - d);
}
}  // namespace

double ring_bare_half(int n_molecules, int distance) {
  const int d = min_image(n_molecules, distance);
  if (d == 0) return 0.0;
  return 0.5 / (static_cast<double>(d) * d * d);
}

double ring_mediated_half(int n_molecules, double omega_tilde, int distance,
                          RingFormula formula) {
  const int d = min_image(n_molecules, distance);
  if (d == 0) return 0.0;
  double s = 0.0;
  for (int n = 1; n <= n_molecules / 2; ++n) {
    const double wn = (formula == RingFormula::NearestNeighbor)
                          ? ring_frequency(n_molecules, n)
                          : ring_frequency_exact(n_molecules, n);
    const double gn = ring_g_tilde(n_molecules, n, formula);
    if (gn == 0.0) continue;
    const double denom = omega_tilde * omega_tilde - wn * wn;
    if (std::abs(omega_tilde - wn) < 1e-9)
      throw ResonantDrive("ring_mediated_half: omega_tilde on a phonon mode");
    const double arg = 2.0 * std::numbers::pi * d * n / n_molecules;
    s += gn * gn * std::cos(arg) / (n_molecules * denom);
  }
  return s;
}

double ring_mediated_half_from_modes(int n_molecules, double omega_tilde,
                                     int distance, double gamma,
                                     double epsilon) {
  // Assembles sum_n 2 g_{n,i} g*_{n,j} omega_n / (omega^2 - omega_n^2) from
  // the complex couplings g_{n,j} = -i sqrt(eps^2/(2 N sqrt(gamma) wtilde_n))
  // e^{i 2 pi j n/N} gtilde_n, in units D/(hbar a^3), then normalizes by
  // eps^2 and halves.
  const int d = min_image(n_molecules, distance);
  if (d == 0) return 0.0;
  using cplx = std::complex<double>;
  const double sqg = std::sqrt(gamma);
  cplx total = 0.0;
  for (int n = -(n_molecules / 2); n <= n_molecules / 2; ++n) {
    if (n == 0) continue;
    const double wt = ring_frequency(n_molecules, n);
    if (wt == 0.0) continue;
    const double gt = ring_g_tilde(n_molecules, n);
    const double wbar = wt / sqg;
    const double amp =
        std::sqrt(epsilon * epsilon / (2.0 * n_molecules * sqg * wt));
    const cplx gi = cplx(0, -1) * amp *
                    std::polar(1.0, 2.0 * std::numbers::pi * d * n / n_molecules) * gt;
    const cplx gj = cplx(0, -1) * amp * gt;  // site 0 phase
    const double wbar_drive = omega_tilde / sqg;
    total += 2.0 * gi * std::conj(gj) * wbar /
             (wbar_drive * wbar_drive - wbar * wbar);
  }
  return total.real() / (epsilon * epsilon) / 2.0;
}

}  // namespace dipsim
