#include "dipsim/oracle.hpp"

#include <cmath>
#include <complex>
#include <functional>
#include <sstream>

namespace dipsim {

using cplx = std::complex<double>;

long FullState::fock_dim() const {
  long d = 1;
  for (size_t m = 0; m < mode_ids.size(); ++m) d *= levels();
  return d;
}

FullState FullState::from_spin(const SpinState& spin, std::vector<int> mode_ids,
                               int n_max) {
  std::vector<int> occ(mode_ids.size(), 0);
  return from_spin_occupations(spin, std::move(mode_ids), n_max, occ);
}

FullState FullState::from_spin_occupations(const SpinState& spin,
                                           std::vector<int> mode_ids, int n_max,
                                           const std::vector<int>& occupations) {
  if (occupations.size() != mode_ids.size())
    throw DimensionMismatch("FullState: occupations/mode_ids size");
  FullState st;
  st.n_sites = spin.n_sites;
  st.n_max = n_max;
  st.mode_ids = std::move(mode_ids);
  const long fd = st.fock_dim();
  long fock_index = 0;
  for (size_t m = 0; m < occupations.size(); ++m) {
    if (occupations[m] < 0 || occupations[m] > n_max)
      throw TruncationLeak("FullState: initial occupation beyond n_max");
    fock_index = fock_index * st.levels() + occupations[m];
  }
  st.amps = Eigen::VectorXcd::Zero(st.dim());
  for (int s = 0; s < spin.dim(); ++s)
    st.amps[s * fd + fock_index] = spin.amps[s];
  return st;
}

FullState FullState::vacuum(const SpinState& spin, const CouplingSet& cs,
                            int n_max) {
  std::vector<int> ids(cs.n_modes());
  for (int m = 0; m < cs.n_modes(); ++m) ids[m] = m;
  return from_spin(spin, ids, n_max);
}

namespace {

// Matrix-free action of the interaction-picture Hamiltonian. All couplings
// are converted to trap-frequency units once, up front.
struct HamiltonianAction {
  int n_sites;
  int n_modes;
  int levels;
  long fock_dim;
  double omega;
  bool average_bare;
  bool single_spin;
  Eigen::VectorXd diag_bare;     // sum_{i<j} G0_ij s_i s_j per spin index
  Eigen::VectorXd diag_single;   // eps*C * sum_i s_i sum_{j != i} Gbar0_ij
  Eigen::VectorXd mode_freq;     // per included mode
  Eigen::MatrixXd weight;        // spin index x mode: sum_i g_{m,i} s_i
  std::vector<long> stride;
  Eigen::VectorXd sqrt_table;

  HamiltonianAction(const CouplingSet& cs, const FullState& st,
                    const ResidualFlags& flags)
      : n_sites(st.n_sites),
        n_modes(st.n_modes()),
        levels(st.levels()),
        fock_dim(st.fock_dim()),
        omega(cs.omega),
        average_bare(flags.average_bare_coupling),
        single_spin(flags.single_spin_term) {
    const int sdim = 1 << n_sites;
    const double unit = cs.coupling_unit();
    diag_bare.resize(sdim);
    diag_single.resize(sdim);
    for (int s = 0; s < sdim; ++s) {
      double e = 0.0, b = 0.0;
      for (int i = 0; i < n_sites; ++i) {
        double row = 0.0;
        for (int j = 0; j < n_sites; ++j) {
          if (j == i) continue;
          row += cs.g_bare(i, j);
          if (j > i) e += unit * cs.g_bare(i, j) * SpinState::sz(s, i) * SpinState::sz(s, j);
        }
        b += cs.epsilon * cs.dipole_scale * row * SpinState::sz(s, i);
      }
      diag_bare[s] = e;
      diag_single[s] = b;
    }
    mode_freq.resize(n_modes);
    weight.resize(sdim, n_modes);
    for (int m = 0; m < n_modes; ++m) {
      const int id = st.mode_ids[m];
      mode_freq[m] = cs.mode_freqs[id];
      for (int s = 0; s < sdim; ++s) {
        double w = 0.0;
        for (int i = 0; i < n_sites; ++i)
          w += cs.phys_spin_phonon(id, i) * SpinState::sz(s, i);
        weight(s, m) = w;
      }
    }
    stride.resize(n_modes);
    long acc = 1;
    for (int m = n_modes - 1; m >= 0; --m) {
      stride[m] = acc;
      acc *= levels;
    }
    sqrt_table.resize(levels + 1);
    for (int k = 0; k <= levels; ++k) sqrt_table[k] = std::sqrt(double(k));
  }

  void operator()(double t, const Eigen::VectorXcd& y,
                  Eigen::VectorXcd& dy) const {
    const double c = std::cos(omega * t);
    const double bare_env = average_bare ? 0.5 : c * c;
    const int sdim = 1 << n_sites;

    std::vector<cplx> phase(n_modes);
    for (int m = 0; m < n_modes; ++m)
      phase[m] = std::polar(1.0, -mode_freq[m] * t);  // e^{-i w_n t}, pairs a

    for (int s = 0; s < sdim; ++s) {
      const long base = long(s) * fock_dim;
      double diag = bare_env * diag_bare[s];
      if (single_spin) diag += c * diag_single[s];
      for (long f = 0; f < fock_dim; ++f)
        dy[base + f] = cplx(0, -1) * diag * y[base + f];

      for (int m = 0; m < n_modes; ++m) {
        const double w = weight(s, m);
        if (w == 0.0) continue;
        const double g = c * w;
        const cplx pa = phase[m];         // multiplies the lowering part
        const cplx pc = std::conj(pa);    // raising part
        const long str = stride[m];
        const long block = str * levels;
        for (long f0 = 0; f0 < fock_dim; f0 += block) {
          for (long r = 0; r < str; ++r) {
            const long off = base + f0 + r;
            for (int k = 0; k < levels; ++k) {
              cplx h = 0.0;
              if (k + 1 < levels)
                h += pa * sqrt_table[k + 1] * y[off + (k + 1) * str];
              if (k > 0) h += pc * sqrt_table[k] * y[off + (k - 1) * str];
              dy[off + k * str] += cplx(0, -g) * h;
            }
          }
        }
      }
    }
  }
};

double top_level_population(const FullState& st, const Eigen::VectorXcd& y) {
  const int levels = st.levels();
  const long fd = st.fock_dim();
  double worst = 0.0;
  for (int m = 0; m < st.n_modes(); ++m) {
    long str = 1;
    for (int mm = st.n_modes() - 1; mm > m; --mm) str *= levels;
    double pop = 0.0;
    const long block = str * levels;
    for (long s = 0; s < (1L << st.n_sites); ++s) {
      const long base = s * fd;
      for (long f0 = 0; f0 < fd; f0 += block)
        for (long r = 0; r < str; ++r)
          pop += std::norm(y[base + f0 + r + long(levels - 1) * str]);
    }
    worst = std::max(worst, pop);
  }
  return worst;
}

}  // namespace

IntegrationReport evolve_full(const FullState& initial, const CouplingSet& cs,
                              double t_final, const StepControl& ctrl,
                              const ResidualFlags& flags, double leak_tol) {
  if (initial.n_max < 3) throw SimError("evolve_full: n_max must be >= 3");
  IntegrationReport rep;
  rep.state = initial;
  if (t_final <= 0.0) return rep;

  HamiltonianAction ham(cs, initial, flags);
  const double norm0 = rep.state.amps.norm();

  double max_leak = 0.0;
  long check_counter = 0;
  auto monitor = [&](double /*t*/, const Eigen::VectorXcd& y) {
    // Leak check every few steps keeps the monitor off the critical path.
    if (++check_counter % 8 != 0) return;
    const double leak = top_level_population(rep.state, y);
    max_leak = std::max(max_leak, leak);
    if (leak > leak_tol) {
      std::ostringstream msg;
      msg << "evolve_full: top Fock level population " << leak
          << " exceeds leak_tol " << leak_tol << "; increase n_max";
      throw TruncationLeak(msg.str());
    }
  };

  IntegrationStats stats =
      integrate_rk45(ham, rep.state.amps, 0.0, t_final, ctrl, monitor);
  max_leak = std::max(max_leak, top_level_population(rep.state, rep.state.amps));
  if (max_leak > leak_tol)
    throw TruncationLeak("evolve_full: final top-level population " +
                         std::to_string(max_leak));
  rep.max_leak = max_leak;
  rep.steps = stats.steps;
  rep.rejected = stats.rejected;
  rep.norm_drift = std::abs(rep.state.amps.norm() - norm0);
  return rep;
}

SpinDensity reduce_spin(const FullState& state) {
  const int sdim = 1 << state.n_sites;
  const long fd = state.fock_dim();
  SpinDensity rho;
  rho.rho = Eigen::MatrixXcd::Zero(sdim, sdim);
  for (int s = 0; s < sdim; ++s)
    for (int r = 0; r < sdim; ++r) {
      cplx acc = 0.0;
      for (long f = 0; f < fd; ++f)
        acc += state.amps[s * fd + f] * std::conj(state.amps[r * fd + f]);
      rho.rho(s, r) = acc;
    }
  return rho;
}

std::vector<ThermalSample> thermal_initial(const ThermalSpec& thermal,
                                           const Eigen::VectorXd& mode_freqs,
                                           const std::vector<int>& mode_ids,
                                           int n_max, double tail_tol) {
  const int n_modes = static_cast<int>(mode_ids.size());
  std::vector<std::vector<double>> probs(n_modes);
  for (int m = 0; m < n_modes; ++m) {
    const int id = mode_ids[m];
    const double nb = thermal.nbar(mode_freqs[id], id);
    if (nb > double(n_max) / 4.0)
      throw TruncationLeak("thermal_initial: nbar too large for n_max");
    probs[m].resize(n_max + 1);
    for (int k = 0; k <= n_max; ++k)
      probs[m][k] = (nb == 0.0) ? (k == 0 ? 1.0 : 0.0)
                                : std::pow(nb, k) / std::pow(1.0 + nb, k + 1);
  }

  std::vector<ThermalSample> out;
  std::vector<int> occ(n_modes, 0);
  const double cutoff = tail_tol / std::max<long>(1, 1L << n_modes) / (n_max + 1);
  std::function<void(int, double)> recurse = [&](int m, double w) {
    if (w < cutoff) return;
    if (m == n_modes) {
      out.push_back({w, occ});
      return;
    }
    for (int k = 0; k <= n_max; ++k) {
      occ[m] = k;
      recurse(m + 1, w * probs[m][k]);
    }
    occ[m] = 0;
  };
  recurse(0, 1.0);

  double total = 0.0;
  for (const auto& s : out) total += s.weight;
  if (1.0 - total > tail_tol)
    throw TruncationLeak("thermal_initial: ensemble tail " +
                         std::to_string(1.0 - total) + " exceeds tail_tol");
  std::sort(out.begin(), out.end(),
            [](const ThermalSample& a, const ThermalSample& b) {
              return a.weight > b.weight;
            });
  return out;
}

std::vector<double> evolve_fidelity_trace(const FullState& initial,
                                          const CouplingSet& cs,
                                          const SpinState& target,
                                          const std::vector<double>& times,
                                          const StepControl& ctrl,
                                          const ResidualFlags& flags,
                                          double leak_tol) {
  if (target.dim() != (1 << initial.n_sites))
    throw DimensionMismatch("evolve_fidelity_trace: target size");
  HamiltonianAction ham(cs, initial, flags);
  const long fd = initial.fock_dim();
  const int sdim = 1 << initial.n_sites;

  auto fidelity = [&](const Eigen::VectorXcd& y) {
    double f = 0.0;
    for (long ph = 0; ph < fd; ++ph) {
      cplx acc = 0.0;
      for (int s = 0; s < sdim; ++s)
        acc += std::conj(target.amps[s]) * y[s * fd + ph];
      f += std::norm(acc);
    }
    return f;
  };

  Eigen::VectorXcd y = initial.amps;
  std::vector<double> out;
  out.reserve(times.size());
  double t = 0.0;
  for (double sample : times) {
    if (sample < t - 1e-12)
      throw SimError("evolve_fidelity_trace: times must be ascending");
    if (sample > t) {
      integrate_rk45(ham, y, t, sample, ctrl,
                     [](double, const Eigen::VectorXcd&) {});
      t = sample;
    }
    out.push_back(fidelity(y));
  }
  FullState probe = initial;
  probe.amps = y;
  const double leak = top_level_population(probe, y);
  if (leak > leak_tol)
    throw TruncationLeak("evolve_fidelity_trace: leak " + std::to_string(leak));
  return out;
}

SpinDensity evolve_thermal(const SpinState& spin, const CouplingSet& cs,
                           const ThermalSpec& thermal, double t_final,
                           int n_max, const StepControl& ctrl, double tail_tol,
                           double leak_tol) {
  // Only coupled modes need a Fock factor: modes with zero coupling never
  // enter the interaction-picture Hamiltonian, so their occupation is inert.
  std::vector<int> ids;
  for (int m = 0; m < cs.n_modes(); ++m)
    if (cs.g_spin_phonon.row(m).cwiseAbs().maxCoeff() != 0.0) ids.push_back(m);

  auto samples = thermal_initial(thermal, cs.mode_freqs, ids, n_max, tail_tol);
  const int sdim = spin.dim();
  SpinDensity avg;
  avg.rho = Eigen::MatrixXcd::Zero(sdim, sdim);
  double total = 0.0;
  for (const auto& sample : samples) {
    FullState st =
        FullState::from_spin_occupations(spin, ids, n_max, sample.occupations);
    IntegrationReport rep = evolve_full(st, cs, t_final, ctrl, {}, leak_tol);
    avg.rho += sample.weight * reduce_spin(rep.state).rho;
    total += sample.weight;
  }
  avg.rho /= total;  // renormalize the truncated ensemble
  return avg;
}

}  // namespace dipsim
