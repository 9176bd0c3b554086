#include "dipsim/experiment.hpp"
#include <cstdio>

#include <cmath>
#include <numbers>
#include <set>

#include "dipsim/couplings.hpp"
#include "dipsim/crystal.hpp"
#include "dipsim/dynamics.hpp"
#include "dipsim/oracle.hpp"
#include "dipsim/ring.hpp"
#include "dipsim/rotor.hpp"
#include "dipsim/spinmodel.hpp"

namespace dipsim {

using nlohmann::json;

namespace {

void check_keys(const json& doc, const std::set<std::string>& allowed) {
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  for (auto it = doc.begin(); it != doc.end(); ++it)
    if (!allowed.count(it.key()))
      throw ConfigError("unknown config key: " + it.key());
}

double get_num(const json& doc, const std::string& key, double fallback) {
  if (!doc.contains(key)) return fallback;
  if (!doc[key].is_number())
    throw ConfigError("config key '" + key + "' must be a number");
  return doc[key].get<double>();
}

int get_int(const json& doc, const std::string& key, int fallback) {
  if (!doc.contains(key)) return fallback;
  if (!doc[key].is_number_integer())
    throw ConfigError("config key '" + key + "' must be an integer");
  return doc[key].get<int>();
}

bool get_bool(const json& doc, const std::string& key, bool fallback) {
  if (!doc.contains(key)) return fallback;
  if (!doc[key].is_boolean())
    throw ConfigError("config key '" + key + "' must be a boolean");
  return doc[key].get<bool>();
}

std::vector<double> grid(double lo, double hi, double step,
                         const std::string& what) {
  if (!(step > 0.0)) throw ConfigError(what + ": step must be > 0");
  std::vector<double> g;
  for (double v = lo; v <= hi + 0.5 * step; v += step) g.push_back(v);
  if (g.empty()) throw ConfigError(what + ": empty grid");
  return g;
}

CrystalSpec crystal_from(const json& doc, int default_n = 3) {
  CrystalSpec spec;
  spec.n_molecules = get_int(doc, "n_molecules", default_n);
  spec.epsilon = get_num(doc, "epsilon", 0.1);
  spec.dipole_scale = get_num(doc, "dipole_scale", 0.5);
  spec.validate();
  if (spec.epsilon_warning())
    std::fprintf(stderr,
                 "warning: epsilon = %g is beyond the small-modulation "
                 "expansion; results are extrapolations\n",
                 spec.epsilon);
  return spec;
}

ExperimentResult run_coupling_scan(const ExperimentConfig& cfg) {
  check_keys(cfg.doc, {"kind", "n_molecules", "epsilon", "dipole_scale",
                       "omega_min", "omega_max", "omega_step"});
  CrystalSpec spec = crystal_from(cfg.doc);
  const auto omegas =
      grid(get_num(cfg.doc, "omega_min", 0.1), get_num(cfg.doc, "omega_max", 5.0),
           get_num(cfg.doc, "omega_step", 0.01), "omega grid");

  EquilibriumConfig eq = solve_equilibrium(spec);
  PhononSpectrum sp = phonon_modes(spec, eq);
  const int n = spec.n_molecules;

  ExperimentResult res;
  res.table.columns.push_back({"omega", "nu", false});
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      res.table.columns.push_back(
          {"G" + std::to_string(i + 1) + std::to_string(j + 1),
           "D*eps^2/(hbar*a^3)", true});
  res.table.columns.push_back({"G_rms", "D*eps^2/(hbar*a^3)", true});

  for (double w : omegas) {
    bool on_pole = false;
    for (int m = 0; m < sp.frequencies.size(); ++m)
      if (std::abs(w - sp.frequencies[m]) < 1e-9) on_pole = true;
    if (on_pole) continue;
    DriveSpec drive;
    drive.omega = w;
    drive.enforce_margin = false;  // the scan draws the curves through poles
    CouplingSet cs = compute_couplings(spec, eq, sp, drive);
    std::vector<double> row{w};
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) row.push_back(cs.g_total(i, j));
    row.push_back(cs.g_rms);
    res.table.add_row(std::move(row));
  }
  return res;
}

ExperimentResult run_graph_fidelity(const ExperimentConfig& cfg) {
  check_keys(cfg.doc,
             {"kind", "epsilon_list", "omega", "dipole_scale", "n_max",
              "points_per_period", "t_max_factor", "include_oracle"});
  std::vector<double> eps_list{0.05, 0.1};
  if (cfg.doc.contains("epsilon_list")) {
    if (!cfg.doc["epsilon_list"].is_array() || cfg.doc["epsilon_list"].empty())
      throw ConfigError("epsilon_list must be a non-empty array");
    eps_list = cfg.doc["epsilon_list"].get<std::vector<double>>();
  }
  const double omega = get_num(cfg.doc, "omega", 2.977);
  const int n_max = get_int(cfg.doc, "n_max", 5);
  const int ppp = get_int(cfg.doc, "points_per_period", 40);
  const double t_max_factor = get_num(cfg.doc, "t_max_factor", 1.1);
  const bool with_oracle = get_bool(cfg.doc, "include_oracle", true);

  ExperimentResult res;
  res.table.columns.push_back({"G12_t", "", false});
  for (double eps : eps_list) {
    char tag[32];
    std::snprintf(tag, sizeof tag, "%g", eps);
    res.table.columns.push_back({"P_graph_effective_eps" + std::string(tag), "", false});
    if (with_oracle)
      res.table.columns.push_back({"P_graph_full_eps" + std::string(tag), "", false});
  }

  // Build one shared time axis in units of G12*t; each epsilon maps it to
  // its own physical time.
  const double theta_max = t_max_factor * std::numbers::pi / 4.0;
  CrystalSpec ref;
  ref.n_molecules = 3;
  ref.dipole_scale = get_num(cfg.doc, "dipole_scale", 0.5);
  ref.epsilon = eps_list.front();
  ref.validate();
  EquilibriumConfig eq = solve_equilibrium(ref);
  PhononSpectrum sp = phonon_modes(ref, eq);

  const SpinState init = SpinState::product_plus(3);
  const SpinState target = named_state(NamedState::Graph3);
  ThermalSpec cold;

  // Samples per unit of G12 t chosen so each epsilon sees >= ppp points per
  // drive period at its own time scale (the smallest epsilon is slowest).
  double max_rate = 0.0;
  std::vector<CouplingSet> sets;
  for (double eps : eps_list) {
    CrystalSpec spec = ref;
    spec.epsilon = eps;
    DriveSpec drive;
    drive.omega = omega;
    drive.enforce_margin = !cfg.override_resonance_guard;
    sets.push_back(compute_couplings(spec, eq, sp, drive));
    const double g12 = sets.back().g_total(0, 1) * sets.back().coupling_unit();
    max_rate = std::max(max_rate, ppp * omega / (2.0 * std::numbers::pi * g12));
  }
  const int samples =
      std::min(20000, std::max(200, int(theta_max * max_rate)));

  std::vector<std::vector<double>> oracle_cols;
  std::vector<double> thetas(samples + 1);
  for (int k = 0; k <= samples; ++k) thetas[k] = theta_max * k / samples;

  if (with_oracle) {
    for (const auto& cs : sets) {
      const double g12 = cs.g_total(0, 1) * cs.coupling_unit();
      std::vector<double> times(thetas.size());
      for (size_t k = 0; k < thetas.size(); ++k) times[k] = thetas[k] / g12;
      FullState st = FullState::vacuum(init, cs, n_max);
      oracle_cols.push_back(evolve_fidelity_trace(st, cs, target, times));
    }
  }

  for (int k = 0; k <= samples; ++k) {
    std::vector<double> row{thetas[k]};
    for (size_t e = 0; e < sets.size(); ++e) {
      const auto& cs = sets[e];
      const double g12 = cs.g_total(0, 1) * cs.coupling_unit();
      const double t = thetas[k] / g12;
      SpinDensity rho = reduced_density(init, cs, cold, t);
      row.push_back(graph_fidelity(rho, target));
      if (with_oracle) row.push_back(oracle_cols[e][k]);
    }
    res.table.add_row(std::move(row));
  }
  return res;
}

ExperimentResult run_purity_scan(const ExperimentConfig& cfg) {
  check_keys(cfg.doc, {"kind", "omega", "dipole_scale", "epsilon_min",
                       "epsilon_max", "epsilon_step", "temperature"});
  const double omega = get_num(cfg.doc, "omega", 2.977);
  const auto eps_grid = grid(get_num(cfg.doc, "epsilon_min", 0.02),
                             get_num(cfg.doc, "epsilon_max", 0.2),
                             get_num(cfg.doc, "epsilon_step", 0.001),
                             "epsilon grid");
  ThermalSpec thermal;
  thermal.temperature = get_num(cfg.doc, "temperature", 0.0);

  CrystalSpec spec = crystal_from(cfg.doc);
  EquilibriumConfig eq = solve_equilibrium(spec);
  PhononSpectrum sp = phonon_modes(spec, eq);
  const SpinState init = SpinState::product_plus(3);

  ExperimentResult res;
  res.table.columns = {{"epsilon", "", false},
                       {"purity", "", false},
                       {"one_minus_purity", "", false}};
  for (double eps : eps_grid) {
    CrystalSpec s = spec;
    s.epsilon = eps;
    DriveSpec drive;
    drive.omega = omega;
    drive.enforce_margin = !cfg.override_resonance_guard;
    CouplingSet cs = compute_couplings(s, eq, sp, drive);
    const double p = purity(init, cs, thermal, graph_time(cs));
    res.table.add_row({eps, p, 1.0 - p});
  }
  return res;
}

int order_code(SpinOrder order) {
  switch (order) {
    case SpinOrder::FM: return 1;
    case SpinOrder::AFMS: return 2;
    case SpinOrder::AFMA: return 3;
    case SpinOrder::Paramagnetic: return 0;
    case SpinOrder::Mixed: return 4;
  }
  return 4;
}

ExperimentResult run_phase_diagram(const ExperimentConfig& cfg) {
  check_keys(cfg.doc, {"kind", "epsilon", "dipole_scale", "omega_min",
                       "omega_max", "omega_step", "bx_ratio_min",
                       "bx_ratio_max", "bx_ratio_step"});
  CrystalSpec spec = crystal_from(cfg.doc);
  const auto omegas =
      grid(get_num(cfg.doc, "omega_min", 0.2), get_num(cfg.doc, "omega_max", 4.5),
           get_num(cfg.doc, "omega_step", 0.05), "omega grid");
  const auto ratios = grid(get_num(cfg.doc, "bx_ratio_min", 0.01),
                           get_num(cfg.doc, "bx_ratio_max", 2.0),
                           get_num(cfg.doc, "bx_ratio_step", 0.05), "bx grid");

  auto points = phase_diagram(spec, omegas, ratios,
                              cfg.override_resonance_guard, cfg.threads);

  ExperimentResult res;
  res.table.columns = {{"omega", "nu", false},
                       {"bx_over_grms", "", false},
                       {"P_FM", "", false},
                       {"P_AFMS", "", false},
                       {"P_AFMA", "", false},
                       {"order_code", "", false}};
  res.extra["order_codes"] = {{"paramagnetic", 0}, {"FM", 1},   {"AFMS", 2},
                              {"AFMA", 3},         {"mixed", 4}};
  for (const auto& pt : points) {
    if (!std::isfinite(pt.p_fm)) continue;  // inside a forbidden band
    res.table.add_row({pt.omega, pt.bx_over_grms, pt.p_fm, pt.p_afms,
                       pt.p_afma, double(order_code(pt.order))});
  }
  return res;
}

ExperimentResult run_adiabatic(const ExperimentConfig& cfg) {
  check_keys(cfg.doc, {"kind", "omega", "epsilon", "dipole_scale", "t_final",
                       "b0_over_grms", "sample_dt"});
  CrystalSpec spec = crystal_from(cfg.doc);
  const double omega = get_num(cfg.doc, "omega", 2.65);

  EquilibriumConfig eq = solve_equilibrium(spec);
  PhononSpectrum sp = phonon_modes(spec, eq);
  DriveSpec drive;
  drive.omega = omega;
  drive.enforce_margin = !cfg.override_resonance_guard;
  CouplingSet cs = compute_couplings(spec, eq, sp, drive);

  SweepSchedule schedule;
  schedule.t_final = get_num(cfg.doc, "t_final", 40.0);
  schedule.b0_over_grms = get_num(cfg.doc, "b0_over_grms", 10.0);
  schedule.sample_dt = get_num(cfg.doc, "sample_dt", 0.25);

  const std::vector<NamedState> named{NamedState::AFMS, NamedState::AFMA,
                                      NamedState::GHZ, NamedState::WSuperposition};
  SweepResult sweep = adiabatic_sweep(cs.g_total, schedule,
                                      SpinState::product_minus(3), named);

  ExperimentResult res;
  res.table.columns = {{"t", "1/(D*eps^2/(hbar*a^3))", false},
                       {"bx_over_grms", "", false},
                       {"overlap_AFMS", "", false},
                       {"overlap_AFMA", "", false},
                       {"overlap_GHZ", "", false},
                       {"overlap_W", "", false}};
  for (const auto& s : sweep.trajectory)
    res.table.add_row({s.t, s.bx_over_grms, s.overlaps[0], s.overlaps[1],
                       s.overlaps[2], s.overlaps[3]});
  res.extra["final_overlaps"] = {{"AFMS", sweep.trajectory.back().overlaps[0]},
                                 {"AFMA", sweep.trajectory.back().overlaps[1]},
                                 {"GHZ", sweep.trajectory.back().overlaps[2]},
                                 {"W", sweep.trajectory.back().overlaps[3]}};
  return res;
}

ExperimentResult run_ring_profile(const ExperimentConfig& cfg) {
  check_keys(cfg.doc, {"kind", "n_molecules", "omega_tilde", "mode_pair_low",
                       "formula"});
  const int n = get_int(cfg.doc, "n_molecules", 21);
  RingFormula formula = RingFormula::NearestNeighbor;
  if (cfg.doc.contains("formula")) {
    const std::string f = cfg.doc["formula"].get<std::string>();
    if (f == "exact")
      formula = RingFormula::ExactLatticeSum;
    else if (f != "nearest-neighbor")
      throw ConfigError("formula must be 'nearest-neighbor' or 'exact'");
  }
  double omega_tilde;
  if (cfg.doc.contains("omega_tilde"))
    omega_tilde = get_num(cfg.doc, "omega_tilde", 0.0);
  else
    omega_tilde = ring_midpoint_drive(n, get_int(cfg.doc, "mode_pair_low", 1));

  RingProfile p = ring_profile(n, omega_tilde, formula);
  ExperimentResult res;
  res.table.columns = {{"distance", "a", false},
                       {"G_total", "D*eps^2/(hbar*a^3)", true},
                       {"G_bare_half", "D*eps^2/(hbar*a^3)", false},
                       {"G_mediated_half", "D*eps^2/(hbar*a^3)", true}};
  for (size_t k = 0; k < p.distances.size(); ++k)
    res.table.add_row({double(p.distances[k]), p.g_total[k], p.g_bare_half[k],
                       p.g_mediated_half[k]});
  res.extra["omega_tilde"] = omega_tilde;
  return res;
}

ExperimentResult run_stark_map(const ExperimentConfig& cfg) {
  check_keys(cfg.doc, {"kind", "j_max", "e_min", "e_max", "e_step", "n_states"});
  RotorSpec spec;
  spec.j_max = get_int(cfg.doc, "j_max", 12);
  const auto fields =
      grid(get_num(cfg.doc, "e_min", 0.0), get_num(cfg.doc, "e_max", 6.0),
           get_num(cfg.doc, "e_step", 0.02), "field grid");
  spec.field_grid = Eigen::Map<const Eigen::VectorXd>(fields.data(),
                                                      long(fields.size()));
  const int n_states = get_int(cfg.doc, "n_states", 4);

  StarkMap map = stark_map(spec);
  ExperimentResult res;
  res.table.columns.push_back({"E_dc", "B/mu_c", false});
  for (int s = 0; s < n_states; ++s)
    res.table.columns.push_back({"energy_J" + std::to_string(s), "B", false});
  for (int s = 0; s < n_states; ++s)
    res.table.columns.push_back({"dipole_J" + std::to_string(s), "mu_c", false});
  for (int k = 0; k < map.fields.size(); ++k) {
    std::vector<double> row{map.fields[k]};
    for (int s = 0; s < n_states; ++s) row.push_back(map.energies(s, k));
    for (int s = 0; s < n_states; ++s) row.push_back(map.dipoles(s, k));
    res.table.add_row(std::move(row));
  }

  try {
    SweetSpot sweet = find_sweet_spot(map, 1, 2);
    FieldWindow window = linear_window(map, sweet);
    res.extra["sweet_spot"] = {{"E0", sweet.field},
                               {"mu0", sweet.dipole},
                               {"slope_J1", sweet.slope_a},
                               {"slope_J2", sweet.slope_b},
                               {"window_lo", window.lo},
                               {"window_hi", window.hi}};
  } catch (const NoCrossing&) {
    res.extra["sweet_spot"] = nullptr;
  }
  return res;
}

}  // namespace

const std::vector<std::string>& experiment_kinds() {
  static const std::vector<std::string> kinds{
      "coupling-scan", "graph-fidelity", "purity-scan", "phase-diagram",
      "adiabatic",     "ring-profile",   "stark-map",   "regress-all"};
  return kinds;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  if (cfg.doc.contains("kind")) {
    if (!cfg.doc["kind"].is_string() ||
        cfg.doc["kind"].get<std::string>() != cfg.kind)
      throw ConfigError("config 'kind' does not match the requested experiment");
  }
  if (cfg.kind == "coupling-scan") return run_coupling_scan(cfg);
  if (cfg.kind == "graph-fidelity") return run_graph_fidelity(cfg);
  if (cfg.kind == "purity-scan") return run_purity_scan(cfg);
  if (cfg.kind == "phase-diagram") return run_phase_diagram(cfg);
  if (cfg.kind == "adiabatic") return run_adiabatic(cfg);
  if (cfg.kind == "ring-profile") return run_ring_profile(cfg);
  if (cfg.kind == "stark-map") return run_stark_map(cfg);
  throw ConfigError("unknown experiment kind: " + cfg.kind);
}

nlohmann::json make_sidecar(const ExperimentConfig& cfg,
                            const ExperimentResult& result) {
  json side;
  side["kind"] = cfg.kind;
  side["config"] = cfg.doc;
  side["seed"] = cfg.seed;
  side["config_hash"] = fnv1a(cfg.kind + cfg.doc.dump() + std::to_string(cfg.seed));
  side["library_version"] = library_version();
  json cols = json::array();
  for (const auto& c : result.table.columns)
    cols.push_back({{"name", c.name},
                    {"unit", c.unit},
                    {"may_diverge", c.may_diverge}});
  side["columns"] = cols;
  side["rows"] = result.table.rows.size();
  if (!result.extra.empty()) side["extra"] = result.extra;
  return side;
}

}  // namespace dipsim
