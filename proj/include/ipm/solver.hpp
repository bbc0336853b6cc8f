#pragma once

#include <deque>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "ipm/basis.hpp"
#include "ipm/dual_solver.hpp"
#include "ipm/entropy.hpp"
#include "ipm/flux.hpp"
#include "ipm/errors.hpp"
#include "ipm/kernels.hpp"

namespace ipm {

enum class Scheme {
  Naive,               // update from the raw moments, plain CFL
  ModifiedCfl,         // raw moments, gamma-criterion solves, dt shrunk by gamma
  RecalcFirstOrder,    // update from recalculated moments
  RecalcSecondOrder,   // minmod reconstruction of recalculated ansatz values
  StochasticGalerkin,  // polynomial ansatz, no optimization
};

enum class TimeIntegrator { ForwardEuler, SspMultistep };

std::string to_string(Scheme scheme);
Scheme parse_scheme(std::string_view name);
std::string to_string(TimeIntegrator integrator);
TimeIntegrator parse_integrator(std::string_view name);

inline int scheme_order(Scheme s) { return s == Scheme::RecalcSecondOrder ? 2 : 1; }

struct SpatialGrid {
  double a = 0.0;
  double b = 1.0;
  int n_cells = 1;

  double dx() const { return (b - a) / n_cells; }
  double center(int j) const { return a + (j + 0.5) * dx(); }
};

enum class BoundaryKind {
  Periodic,
  Dirichlet,   // fixed ghost moments, solved once at setup
  Prescribed,  // ghost moments supplied as a function of time
};

std::string to_string(BoundaryKind kind);
BoundaryKind parse_boundary_kind(std::string_view name);

struct BoundaryCondition {
  BoundaryKind kind = BoundaryKind::Periodic;
  MomentVector left;   // Dirichlet ghost moments
  MomentVector right;
  /// Prescribed: moments of the ghost cell with (possibly negative or
  /// >= n_cells) index `cell` at time t. Called from one thread only.
  std::function<MomentVector(double t, int cell)> ghost_moments;

  static BoundaryCondition periodic() { return {}; }
  static BoundaryCondition dirichlet(MomentVector left, MomentVector right) {
    BoundaryCondition bc;
    bc.kind = BoundaryKind::Dirichlet;
    bc.left = std::move(left);
    bc.right = std::move(right);
    return bc;
  }
  static BoundaryCondition prescribed(std::function<MomentVector(double, int)> f) {
    BoundaryCondition bc;
    bc.kind = BoundaryKind::Prescribed;
    bc.ghost_moments = std::move(f);
    return bc;
  }
};

struct SolverConfig {
  Scheme scheme = Scheme::RecalcFirstOrder;
  TimeIntegrator integrator = TimeIntegrator::SspMultistep;  // second order only
  double cfl = 1.0;
  double tau = 1e-7;
  /// Use tau = dx^(p+1) with p the spatial order instead of `tau`.
  bool tau_from_grid = false;
  double gamma = 1.5;  // ModifiedCfl only
  double zeta = 1.0;
  double t_end = 0.0;
  int max_iterations = 1000;
  /// Newton steps per dual solve even when the warm start already meets tau.
  int min_newton_steps = 7;
  bool parallel = true;
  /// Record RealizabilityLost in the result instead of propagating it.
  bool capture_failure = false;

  /// Throws ConfigError on out-of-range values.
  void validate() const;
  double effective_tau(double dx) const;
};

struct StepDiagnostics {
  int step = 0;
  double time = 0.0;  // time at the start of the step
  double dt = 0.0;
  long newton_iterations = 0;
  int max_newton_iterations = 0;
  double min_ansatz = 0.0;
  double max_ansatz = 0.0;
  double margin = 0.0;  // smallest distance of an ansatz value to the bounds
  double max_gamma = 0.0;
};

struct RunResult {
  Eigen::MatrixXd moments;      // [moments x cells] at `time`
  Eigen::MatrixXd ansatz;       // [nodes x cells] ansatz of the final state
  Eigen::MatrixXd slopes;       // [nodes x cells] minmod slopes, zero for first order
  Eigen::MatrixXd multipliers;  // [moments x cells]
  double time = 0.0;
  int steps = 0;
  bool completed = false;
  /// Present when a dual solve failed and capture_failure was set.
  std::optional<RealizabilityLost> failure;
  std::vector<StepDiagnostics> diagnostics;
  double min_ansatz = 0.0;  // over every evaluation of the run
  double max_ansatz = 0.0;
  double wall_seconds = 0.0;
  std::vector<std::string> warnings;
  /// True when every stored state came from a realizability-preserving update.
  bool verified = false;
};

/// Time step before final truncation: cfl * dx / (c * max|f'|) with c = 1
/// for first order, gamma for ModifiedCfl, 2 for second order with forward
/// Euler and 3 with the four-step SSP method.
double timestep_size(const SolverConfig& config, const SpatialGrid& grid,
                     const PhysicalFlux& flux, const Entropy& entropy);

/// Finite-volume march of the moment system on a 1D grid.
///
/// Each step has two phases separated by a barrier: all dual solves (one per
/// cell, including time-dependent ghosts), then all interface fluxes and cell
/// updates. Multipliers from the previous step warm start the solves.
class Simulation {
 public:
  Simulation(SpatialGrid grid, BoundaryCondition boundary, const PolynomialBasis& basis,
             const Entropy& entropy, PhysicalFlux flux, SolverConfig config,
             Eigen::MatrixXd initial_moments);

  double time() const { return time_; }
  int steps() const { return steps_; }
  double nominal_dt() const { return dt_; }
  double tau() const { return solve_options_.tau; }
  const Eigen::MatrixXd& moments() const { return moments_; }
  Eigen::MatrixXd multipliers() const { return multipliers_.middleCols(ghosts_, grid_.n_cells); }
  const std::vector<StepDiagnostics>& diagnostics() const { return diagnostics_; }
  const SpatialGrid& grid() const { return grid_; }
  int ghosts() const { return ghosts_; }

  /// Advances by dt. Throws RealizabilityLost tagged with cell and step.
  void step(double dt);
  /// Marches to t_end and evaluates the final state.
  RunResult run();

  /// Ansatz, recalculated moments and slopes of the current state (one
  /// additional round of dual solves, no time advance).
  struct Evaluation {
    Eigen::MatrixXd ansatz;
    Eigen::MatrixXd recalculated;
    Eigen::MatrixXd slopes;
  };
  Evaluation evaluate();

 private:
  struct Stage {
    Eigen::MatrixXd recalculated;  // interior [moments x cells]
    Eigen::MatrixXd divergence;    // L_j, interior
  };

  Stage compute_stage(const Eigen::MatrixXd& interior, double t, StepDiagnostics& diag,
                      Eigen::MatrixXd* slopes_out = nullptr);
  void fill_ghosts(const Eigen::MatrixXd& interior, double t);
  RealizabilityLost tag(const RealizabilityLost& e) const;

  SpatialGrid grid_;
  BoundaryCondition boundary_;
  const PolynomialBasis* basis_;
  Entropy entropy_;
  PhysicalFlux flux_;
  UpwindFlux upwind_;
  SolverConfig config_;
  SolveOptions solve_options_;
  int ghosts_;
  double dt_;

  Eigen::MatrixXd moments_;     // interior [moments x cells]
  Eigen::MatrixXd extended_;    // [moments x (cells + 2 ghosts)]
  Eigen::MatrixXd multipliers_; // extended layout
  kernels::DualSweep sweep_;
  std::vector<int> solve_columns_;
  Eigen::MatrixXd ghost_ansatz_;  // Dirichlet ghost ansatz, [nodes x 2 ghosts]

  std::deque<Stage> history_;   // most recent first
  double time_ = 0.0;
  int steps_ = 0;
  std::vector<StepDiagnostics> diagnostics_;
  double min_ansatz_;
  double max_ansatz_;
};

}  // namespace ipm
