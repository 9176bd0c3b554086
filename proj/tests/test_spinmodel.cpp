#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "dipsim/couplings.hpp"
#include "dipsim/crystal.hpp"
#include "dipsim/spinmodel.hpp"

using namespace dipsim;

namespace {

Eigen::MatrixXd triangle(double g12, double g13, double g23) {
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(3, 3);
  g(0, 1) = g(1, 0) = g12;
  g(0, 2) = g(2, 0) = g13;
  g(1, 2) = g(2, 1) = g23;
  return g;
}

CouplingSet harmonic_couplings(double omega, double eps = 0.1) {
  CrystalSpec spec;
  spec.n_molecules = 3;
  spec.epsilon = eps;
  EquilibriumConfig eq = solve_equilibrium(spec);
  DriveSpec drive;
  drive.omega = omega;
  return compute_couplings(spec, eq, phonon_modes(spec, eq), drive);
}

double overlap2(const SpinState& a, const SpinState& b) {
  return std::norm(a.amps.dot(b.amps));
}

}  // namespace

TEST_CASE("named states are normalized and mutually consistent") {
  for (NamedState w : {NamedState::GHZ, NamedState::WSuperposition,
                       NamedState::AFMS, NamedState::AFMA, NamedState::Graph3,
                       NamedState::ParamagneticMinus}) {
    SpinState s = named_state(w);
    CHECK(s.norm() == doctest::Approx(1.0).epsilon(1e-12));
  }
  // W-superposition is the equal combination of the AFMS and AFMA families.
  SpinState w = named_state(NamedState::WSuperposition);
  SpinState afms = named_state(NamedState::AFMS);
  SpinState afma = named_state(NamedState::AFMA);
  CHECK(overlap2(w, afms) == doctest::Approx(2.0 / 6.0).epsilon(1e-12));
  CHECK(overlap2(w, afma) == doctest::Approx(4.0 / 6.0).epsilon(1e-12));
}

TEST_CASE("field-only ground state is |---> with energy -N B") {
  IsingSpec spec;
  spec.couplings = Eigen::MatrixXd::Zero(3, 3);
  spec.field = 0.8;
  GroundState gs = ground_state(spec);
  CHECK(gs.energy == doctest::Approx(-3 * 0.8).epsilon(1e-12));
  CHECK(gs.degeneracy == 1);
  CHECK(overlap2(gs.state, SpinState::product_minus(3)) ==
        doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("degenerate manifolds and their symmetry-adapted combinations") {
  // Region III pattern: AFMS pair.
  IsingSpec afms;
  afms.couplings = triangle(1.0, -0.5, 1.0);
  afms.field = 0.0;
  GroundState gs = ground_state(afms);
  CHECK(gs.degeneracy == 2);
  CHECK(overlap2(gs.state, named_state(NamedState::AFMS)) ==
        doctest::Approx(1.0).epsilon(1e-4));

  // All negative: FM pair resolved into the GHZ combination.
  IsingSpec fm;
  fm.couplings = triangle(-1.0, -0.3, -1.0);
  fm.field = 0.0;
  gs = ground_state(fm);
  CHECK(gs.degeneracy == 2);
  CHECK(overlap2(gs.state, named_state(NamedState::GHZ)) ==
        doctest::Approx(1.0).epsilon(1e-4));

  // G13 > G12 > 0: four AFMA states.
  IsingSpec afma;
  afma.couplings = triangle(0.5, 1.2, 0.5);
  afma.field = 0.0;
  gs = ground_state(afma);
  CHECK(gs.degeneracy == 4);
  CHECK(overlap2(gs.state, named_state(NamedState::AFMA)) ==
        doctest::Approx(1.0).epsilon(1e-4));

  // Equal frustrated couplings: six AFM states, W-superposition combo.
  IsingSpec frust;
  frust.couplings = triangle(1.0, 1.0, 1.0);
  frust.field = 0.0;
  gs = ground_state(frust);
  CHECK(gs.degeneracy == 6);
  CHECK(overlap2(gs.state, named_state(NamedState::WSuperposition)) ==
        doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("transverse field makes the ground state unique") {
  IsingSpec spec;
  spec.couplings = triangle(1.0, 0.4, 1.0);
  spec.field = 0.3;
  CHECK(ground_state(spec).degeneracy == 1);
}

TEST_CASE("ED matches classical enumeration at zero field") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (int trial = 0; trial < 5; ++trial) {
    const int n = 4 + trial % 2;
    Eigen::MatrixXd g = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) g(i, j) = g(j, i) = dist(rng);
    IsingSpec spec;
    spec.couplings = g;
    spec.field = 0.0;
    CHECK(ground_state(spec).energy ==
          doctest::Approx(classical_ground_energy(g)).epsilon(1e-9));
  }
}

TEST_CASE("zero-field spectrum has the global spin-flip symmetry") {
  Eigen::MatrixXd g = triangle(0.7, -0.2, 0.4);
  for (int s = 0; s < 8; ++s) {
    double e = 0.0, ef = 0.0;
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j) {
        e += g(i, j) * SpinState::sz(s, i) * SpinState::sz(s, j);
        ef += g(i, j) * SpinState::sz(7 - s, i) * SpinState::sz(7 - s, j);
      }
    CHECK(e == doctest::Approx(ef).epsilon(1e-14));
  }
}

TEST_CASE("classification thresholds") {
  OrderLabel ghz = classify_order(named_state(NamedState::GHZ));
  CHECK(ghz.order == SpinOrder::FM);
  CHECK(ghz.p_fm == doctest::Approx(1.0));
  OrderLabel afms = classify_order(named_state(NamedState::AFMS));
  CHECK(afms.order == SpinOrder::AFMS);
  CHECK(afms.p_afms == doctest::Approx(1.0));
  CHECK(afms.p_fm == doctest::Approx(0.0));
  OrderLabel para = classify_order(SpinState::product_minus(3));
  CHECK(para.order == SpinOrder::Paramagnetic);
  CHECK(para.p_fm == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("classification is invariant under a uniform rescale") {
  IsingSpec spec;
  spec.couplings = triangle(0.9, 0.3, 0.9);
  spec.field = 0.2;
  OrderLabel a = classify_order(ground_state(spec).state);
  spec.couplings *= 7.0;
  spec.field *= 7.0;
  OrderLabel b = classify_order(ground_state(spec).state);
  CHECK(a.order == b.order);
  CHECK(a.p_fm == doctest::Approx(b.p_fm).epsilon(1e-9));
}

TEST_CASE("phase diagram transitions along the frequency axis") {
  CrystalSpec spec;
  spec.n_molecules = 3;
  spec.epsilon = 0.1;
  auto points = phase_diagram(spec, {1.0, 1.2, 1.6, 2.8, 3.1, 4.2}, {0.05});
  REQUIRE(points.size() == 6);
  CHECK(points[0].order == SpinOrder::AFMS);  // region Ia
  CHECK(points[1].order == SpinOrder::AFMS);
  CHECK(points[2].order == SpinOrder::FM);    // region Ib, above 1.35
  CHECK(points[3].order == SpinOrder::AFMS);  // region II below the split
  CHECK(points[4].order == SpinOrder::AFMA);  // region II above the split
  CHECK(points[5].order == SpinOrder::AFMS);  // region III
}

TEST_CASE("phase diagram rows do not depend on the thread count") {
  CrystalSpec spec;
  spec.n_molecules = 3;
  spec.epsilon = 0.1;
  const std::vector<double> omegas{1.0, 1.6, 2.8, 3.1, 4.2};
  const std::vector<double> ratios{0.05, 0.5, 1.5};
  auto serial = phase_diagram(spec, omegas, ratios, false, 1);
  auto parallel = phase_diagram(spec, omegas, ratios, false, 3);
  REQUIRE(serial.size() == parallel.size());
  for (size_t k = 0; k < serial.size(); ++k) {
    CHECK(serial[k].omega == parallel[k].omega);
    CHECK(serial[k].p_fm == parallel[k].p_fm);
    CHECK(serial[k].order == parallel[k].order);
  }
}

TEST_CASE("phase diagram: forbidden bands skipped unless overridden") {
  CrystalSpec spec;
  spec.n_molecules = 3;
  spec.epsilon = 0.1;
  auto guarded = phase_diagram(spec, {2.2}, {0.05});
  REQUIRE(guarded.size() == 1);
  CHECK(!std::isfinite(guarded[0].p_fm));
  auto forced = phase_diagram(spec, {2.2}, {0.05}, true);
  CHECK(std::isfinite(forced[0].p_fm));
}

TEST_CASE("strong field drives every order parameter paramagnetic") {
  CouplingSet cs = harmonic_couplings(2.977);
  IsingSpec spec;
  spec.couplings = cs.g_total;
  spec.field = 10.0 * cs.g_rms;
  OrderLabel label = classify_order(ground_state(spec).state);
  CHECK(label.order == SpinOrder::Paramagnetic);
  CHECK(std::abs(label.p_fm - 0.25) < 0.05);  // 1/B corrections at Bx = 10 Grms
  spec.field = 100.0 * cs.g_rms;
  label = classify_order(ground_state(spec).state);
  CHECK(label.order == SpinOrder::Paramagnetic);
  CHECK(label.p_fm == doctest::Approx(0.25).epsilon(0.02));
  CHECK(label.p_afma == doctest::Approx(0.5).epsilon(0.02));
}

TEST_CASE("ising evolution: identity at t = 0 and exact graph state") {
  SpinState init = SpinState::product_plus(3);
  Eigen::MatrixXd g = triangle(1.0, 1.0, 1.0);
  SpinState same = ising_evolve(g, init, 0.0);
  CHECK((same.amps - init.amps).cwiseAbs().maxCoeff() == 0.0);
  SpinState evolved = ising_evolve(g, init, std::numbers::pi / 4.0);
  CHECK(overlap2(evolved, named_state(NamedState::Graph3)) ==
        doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("ising evolution preserves sigma-z statistics") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  SpinState psi;
  psi.n_sites = 3;
  psi.amps.resize(8);
  for (int k = 0; k < 8; ++k) psi.amps[k] = {dist(rng), dist(rng)};
  psi.amps.normalize();
  Eigen::MatrixXd g = triangle(0.8, -0.4, 0.3);
  SpinState out = ising_evolve(g, psi, 2.1);
  for (int k = 0; k < 8; ++k)
    CHECK(std::norm(out.amps[k]) ==
          doctest::Approx(std::norm(psi.amps[k])).epsilon(1e-14));
}

TEST_CASE("evolved state in region II at the graph time, phases in closed form") {
  CouplingSet cs = harmonic_couplings(3.2);
  const double g12 = cs.g_total(0, 1), g13 = cs.g_total(0, 2);
  SpinState out = ising_evolve(cs.g_total, SpinState::product_plus(3),
                               std::numbers::pi / (4.0 * g12));
  CHECK(std::norm(out.amps[0]) == doctest::Approx(0.125).epsilon(1e-12));
  // E(egg) - E(ggg) = -2(G12 + G13); E(geg) - E(ggg) = -4 G12.
  double expect1 = std::numbers::pi / 2.0 * (1.0 + g13 / g12);
  expect1 = std::remainder(expect1, 2.0 * std::numbers::pi);
  CHECK(std::arg(out.amps[1] / out.amps[0]) ==
        doctest::Approx(expect1).epsilon(1e-9));
  CHECK(std::abs(std::arg(out.amps[2] / out.amps[0])) ==
        doctest::Approx(std::numbers::pi).epsilon(1e-9));
}

TEST_CASE("adiabatic sweep: constant state without couplings") {
  Eigen::MatrixXd zero = Eigen::MatrixXd::Zero(3, 3);
  SweepSchedule schedule;
  schedule.t_final = 10.0;
  SweepResult sweep = adiabatic_sweep(zero, schedule,
                                      SpinState::product_minus(3),
                                      {NamedState::ParamagneticMinus});
  for (const auto& s : sweep.trajectory)
    CHECK(s.overlaps[0] == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(sweep.final_state.norm() == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("adiabatic sweep reaches the AFMS ground state in region II") {
  CouplingSet cs = harmonic_couplings(2.65);
  SweepSchedule schedule;
  SweepResult sweep = adiabatic_sweep(cs.g_total, schedule,
                                      SpinState::product_minus(3),
                                      {NamedState::AFMS});
  CHECK(sweep.trajectory.back().overlaps[0] > 0.95);
  // The field decays along the schedule.
  CHECK(sweep.trajectory.front().bx_over_grms == doctest::Approx(10.0));
  CHECK(sweep.trajectory.back().bx_over_grms < 1e-3);
}

TEST_CASE("doubling the sweep duration tracks the instantaneous ground state") {
  CouplingSet cs = harmonic_couplings(2.65);
  SweepSchedule schedule;
  schedule.t_final = 80.0;
  schedule.decay *= 4.0;  // doubled duration at the same shape
  schedule.record_states = true;
  SweepResult sweep = adiabatic_sweep(cs.g_total, schedule,
                                      SpinState::product_minus(3), {});
  REQUIRE(sweep.states.size() == sweep.trajectory.size());
  for (size_t k = 0; k < sweep.states.size(); ++k) {
    IsingSpec inst;
    inst.couplings = cs.g_total;
    inst.field = sweep.trajectory[k].bx_over_grms * cs.g_rms;
    GroundState gs = ground_state(inst);
    CHECK(overlap2(sweep.states[k], gs.state) > 0.99);
  }
}

TEST_CASE("ising spec validation") {
  IsingSpec bad;
  bad.couplings = triangle(1.0, 0.2, 0.4);
  bad.couplings(0, 0) = 0.3;
  CHECK_THROWS_AS(ground_state(bad), SimError);
  IsingSpec asym;
  asym.couplings = triangle(1.0, 0.2, 0.4);
  asym.couplings(0, 1) = 0.9;
  CHECK_THROWS_AS(ground_state(asym), SimError);
  IsingSpec big;
  big.couplings = Eigen::MatrixXd::Zero(13, 13);
  big.field = 0.1;
  CHECK_THROWS_AS(ground_state(big), SimError);
}
