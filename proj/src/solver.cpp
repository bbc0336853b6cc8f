#include "ipm/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ipm/errors.hpp"

namespace ipm {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Eigen::Index ix(int i) { return static_cast<Eigen::Index>(i); }

// Four-step second-order SSP multistep method; alpha weights the stored
// recalculated states u^n, u^{n-1}, u^{n-2}, u^{n-3}, beta only L(u^n).
constexpr double kSspAlphaNow = 8.0 / 9.0;
constexpr double kSspAlphaOld = 1.0 / 9.0;
constexpr double kSspBetaNow = 4.0 / 3.0;
constexpr int kSspHistory = 3;  // past levels needed besides the current one

}  // namespace

std::string to_string(Scheme scheme) {
  switch (scheme) {
    case Scheme::Naive: return "naive";
    case Scheme::ModifiedCfl: return "modified_cfl";
    case Scheme::RecalcFirstOrder: return "recalc_first_order";
    case Scheme::RecalcSecondOrder: return "recalc_second_order";
    case Scheme::StochasticGalerkin: return "stochastic_galerkin";
  }
  return "unknown";
}

Scheme parse_scheme(std::string_view name) {
  for (Scheme s : {Scheme::Naive, Scheme::ModifiedCfl, Scheme::RecalcFirstOrder,
                   Scheme::RecalcSecondOrder, Scheme::StochasticGalerkin}) {
    if (name == to_string(s)) return s;
  }
  throw ConfigError("unknown scheme '" + std::string(name) + "'");
}

std::string to_string(TimeIntegrator integrator) {
  return integrator == TimeIntegrator::ForwardEuler ? "forward_euler" : "ssp_multistep";
}

TimeIntegrator parse_integrator(std::string_view name) {
  if (name == "forward_euler") return TimeIntegrator::ForwardEuler;
  if (name == "ssp_multistep") return TimeIntegrator::SspMultistep;
  throw ConfigError("unknown time integrator '" + std::string(name) + "'");
}

std::string to_string(BoundaryKind kind) {
  switch (kind) {
    case BoundaryKind::Periodic: return "periodic";
    case BoundaryKind::Dirichlet: return "dirichlet";
    case BoundaryKind::Prescribed: return "prescribed";
  }
  return "unknown";
}

BoundaryKind parse_boundary_kind(std::string_view name) {
  if (name == "periodic") return BoundaryKind::Periodic;
  if (name == "dirichlet") return BoundaryKind::Dirichlet;
  if (name == "prescribed") return BoundaryKind::Prescribed;
  throw ConfigError("unknown boundary kind '" + std::string(name) + "'");
}

void SolverConfig::validate() const {
  if (!(cfl > 0.0 && cfl <= 1.0)) throw ConfigError("cfl must lie in (0, 1]");
  if (!tau_from_grid && !(tau > 0.0)) throw ConfigError("tau must be positive");
  if (scheme == Scheme::ModifiedCfl && !(gamma > 1.0)) {
    throw ConfigError("gamma must be > 1 for the modified CFL scheme");
  }
  if (!(zeta >= 1.0)) throw ConfigError("zeta must be >= 1");
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw ConfigError("t_end must be >= 0");
  if (max_iterations < 1) throw ConfigError("max_iterations must be >= 1");
}

double SolverConfig::effective_tau(double dx) const {
  return tau_from_grid ? std::pow(dx, scheme_order(scheme) + 1) : tau;
}

double timestep_size(const SolverConfig& config, const SpatialGrid& grid,
                     const PhysicalFlux& flux, const Entropy& entropy) {
  const double speed = max_wave_speed(flux, entropy.u_minus(), entropy.u_plus());
  if (!(speed > 0.0) || !std::isfinite(speed)) {
    throw ConfigError("maximal wave speed must be finite and positive");
  }
  double c = 1.0;
  if (config.scheme == Scheme::ModifiedCfl) c = config.gamma;
  if (config.scheme == Scheme::RecalcSecondOrder) {
    c = config.integrator == TimeIntegrator::SspMultistep ? 3.0 : 2.0;
  }
  return config.cfl * grid.dx() / (c * speed);
}

Simulation::Simulation(SpatialGrid grid, BoundaryCondition boundary,
                       const PolynomialBasis& basis, const Entropy& entropy, PhysicalFlux flux,
                       SolverConfig config, Eigen::MatrixXd initial_moments)
    : grid_(grid),
      boundary_(std::move(boundary)),
      basis_(&basis),
      entropy_(entropy),
      flux_(flux),
      upwind_(flux, entropy.u_minus(), entropy.u_plus()),
      config_(config),
      ghosts_(scheme_order(config.scheme) == 2 ? 2 : 1),
      dt_(0.0),
      moments_(std::move(initial_moments)),
      min_ansatz_(kInf),
      max_ansatz_(-kInf) {
  config_.validate();
  if (grid_.n_cells < 1 || !(grid_.b > grid_.a)) throw ConfigError("invalid spatial grid");
  if (moments_.rows() != basis.size() || moments_.cols() != grid_.n_cells) {
    throw std::invalid_argument("initial moments must be [basis size x n_cells]");
  }
  if (grid_.n_cells < ghosts_ && boundary_.kind == BoundaryKind::Periodic) {
    throw ConfigError("periodic grid needs at least as many cells as ghost cells");
  }
  if (boundary_.kind == BoundaryKind::Prescribed && !boundary_.ghost_moments) {
    throw ConfigError("prescribed boundary without ghost-cell function");
  }
  dt_ = timestep_size(config_, grid_, flux_, entropy_);

  solve_options_.tau = config_.effective_tau(grid_.dx());
  solve_options_.zeta = config_.zeta;
  solve_options_.max_iterations = config_.max_iterations;
  solve_options_.min_iterations = config_.min_newton_steps;
  if (config_.scheme == Scheme::ModifiedCfl) solve_options_.gamma_target = config_.gamma;

  const int n = grid_.n_cells, g = ghosts_;
  extended_.setZero(basis.size(), n + 2 * g);
  multipliers_.setZero(basis.size(), n + 2 * g);
  for (int j = 0; j < n; ++j) solve_columns_.push_back(g + j);
  if (boundary_.kind == BoundaryKind::Prescribed) {
    for (int k = 0; k < g; ++k) {
      solve_columns_.push_back(k);
      solve_columns_.push_back(g + n + k);
    }
    std::sort(solve_columns_.begin(), solve_columns_.end());
  }

  const bool galerkin = config_.scheme == Scheme::StochasticGalerkin;
  fill_ghosts(moments_, 0.0);
  if (!galerkin) {
    for (int c = 0; c < n + 2 * g; ++c) {
      multipliers_.col(ix(c)) = initial_multipliers(extended_.col(ix(c)), basis, entropy_);
    }
  }

  if (boundary_.kind == BoundaryKind::Dirichlet) {
    if (boundary_.left.size() != basis.size() || boundary_.right.size() != basis.size()) {
      throw ConfigError("Dirichlet ghost moments do not match the basis size");
    }
    ghost_ansatz_.resize(ix(static_cast<int>(basis.n_nodes())), 2);
    if (galerkin) {
      ghost_ansatz_.col(0) = basis.table() * boundary_.left;
      ghost_ansatz_.col(1) = basis.table() * boundary_.right;
    } else {
      try {
        ghost_ansatz_.col(0) = solve(boundary_.left, solve_options_, basis, entropy_).ansatz;
        ghost_ansatz_.col(1) = solve(boundary_.right, solve_options_, basis, entropy_).ansatz;
      } catch (const RealizabilityLost& e) {
        throw RealizabilityLost("Dirichlet boundary state: " + e.reason());
      }
    }
  }
}

void Simulation::fill_ghosts(const Eigen::MatrixXd& interior, double t) {
  const int n = grid_.n_cells, g = ghosts_;
  extended_.middleCols(g, n) = interior;
  for (int k = 1; k <= g; ++k) {
    const Eigen::Index left = ix(g - k), right = ix(g + n + k - 1);
    switch (boundary_.kind) {
      case BoundaryKind::Periodic:
        extended_.col(left) = interior.col(ix(n - k));
        extended_.col(right) = interior.col(ix(k - 1));
        break;
      case BoundaryKind::Dirichlet:
        extended_.col(left) = boundary_.left;
        extended_.col(right) = boundary_.right;
        break;
      case BoundaryKind::Prescribed:
        extended_.col(left) = boundary_.ghost_moments(t, -k);
        extended_.col(right) = boundary_.ghost_moments(t, n + k - 1);
        break;
    }
  }
}

RealizabilityLost Simulation::tag(const RealizabilityLost& e) const {
  const auto step = static_cast<std::size_t>(steps_);
  if (!e.cell()) return RealizabilityLost(e.reason(), std::nullopt, step);
  const long c = static_cast<long>(*e.cell()) - ghosts_;
  if (c < 0 || c >= grid_.n_cells) {
    return RealizabilityLost("ghost cell " + std::to_string(c) + ": " + e.reason(),
                             std::nullopt, step);
  }
  return e.at(static_cast<std::size_t>(c), step);
}

Simulation::Stage Simulation::compute_stage(const Eigen::MatrixXd& interior, double t,
                                            StepDiagnostics& diag, Eigen::MatrixXd* slopes_out) {
  const int n = grid_.n_cells, g = ghosts_;
  const bool parallel = config_.parallel;
  fill_ghosts(interior, t);

  if (config_.scheme == Scheme::StochasticGalerkin) {
    std::vector<int> all(static_cast<std::size_t>(n + 2 * g));
    for (int c = 0; c < n + 2 * g; ++c) all[static_cast<std::size_t>(c)] = c;
    kernels::galerkin_columns(extended_, all, sweep_, *basis_, parallel);
  } else {
    try {
      kernels::solve_columns(extended_, solve_columns_, multipliers_, sweep_, solve_options_,
                             *basis_, entropy_, parallel);
    } catch (const RealizabilityLost& e) {
      throw tag(e);
    }
    for (int k = 1; k <= g; ++k) {
      const Eigen::Index left = ix(g - k), right = ix(g + n + k - 1);
      if (boundary_.kind == BoundaryKind::Periodic) {
        sweep_.ansatz.col(left) = sweep_.ansatz.col(ix(g + n - k));
        sweep_.ansatz.col(right) = sweep_.ansatz.col(ix(g + k - 1));
      } else if (boundary_.kind == BoundaryKind::Dirichlet) {
        sweep_.ansatz.col(left) = ghost_ansatz_.col(0);
        sweep_.ansatz.col(right) = ghost_ansatz_.col(1);
      }
    }
  }

  const auto block = sweep_.ansatz.middleCols(g, n);
  const double lo = block.minCoeff(), hi = block.maxCoeff();
  diag.min_ansatz = std::min(diag.min_ansatz, lo);
  diag.max_ansatz = std::max(diag.max_ansatz, hi);
  diag.margin = std::min(diag.margin, std::min(lo - entropy_.u_minus(), entropy_.u_plus() - hi));
  for (int c : solve_columns_) {
    const auto cs = static_cast<std::size_t>(c);
    diag.newton_iterations += sweep_.iterations[cs];
    diag.max_newton_iterations = std::max(diag.max_newton_iterations, sweep_.iterations[cs]);
    if (!std::isnan(sweep_.gamma[cs])) diag.max_gamma = std::max(diag.max_gamma, sweep_.gamma[cs]);
  }
  min_ansatz_ = std::min(min_ansatz_, lo);
  max_ansatz_ = std::max(max_ansatz_, hi);

  Eigen::MatrixXd fluxes;
  if (ghosts_ == 2) {
    Eigen::MatrixXd half;
    kernels::half_slopes(sweep_.ansatz, half, parallel);
    kernels::interface_fluxes(sweep_.ansatz, &half, g, n + 1, *basis_, upwind_, fluxes, parallel);
    if (slopes_out) *slopes_out = half.middleCols(g, n) * (2.0 / grid_.dx());
  } else {
    kernels::interface_fluxes(sweep_.ansatz, nullptr, g, n + 1, *basis_, upwind_, fluxes,
                              parallel);
    if (slopes_out) slopes_out->setZero(sweep_.ansatz.rows(), n);
  }

  Stage stage;
  stage.recalculated = sweep_.recalculated.middleCols(g, n);
  kernels::flux_divergence(fluxes, grid_.dx(), stage.divergence, parallel);
  return stage;
}

void Simulation::step(double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("time step must be positive");
  StepDiagnostics diag;
  diag.step = steps_;
  diag.time = time_;
  diag.dt = dt;
  diag.min_ansatz = kInf;
  diag.max_ansatz = -kInf;
  diag.margin = kInf;
  const bool parallel = config_.parallel;

  Stage now = compute_stage(moments_, time_, diag);
  Eigen::MatrixXd next;
  switch (config_.scheme) {
    case Scheme::Naive:
    case Scheme::ModifiedCfl:
      kernels::linear_combination({1.0, dt}, {&moments_, &now.divergence}, next, parallel);
      break;
    case Scheme::RecalcFirstOrder:
    case Scheme::StochasticGalerkin:
      kernels::linear_combination({1.0, dt}, {&now.recalculated, &now.divergence}, next,
                                  parallel);
      break;
    case Scheme::RecalcSecondOrder: {
      const bool truncated = dt < dt_ * (1.0 - 1e-12);
      if (config_.integrator == TimeIntegrator::ForwardEuler || truncated) {
        kernels::linear_combination({1.0, dt}, {&now.recalculated, &now.divergence}, next,
                                    parallel);
      } else if (static_cast<int>(history_.size()) < kSspHistory) {
        // Heun startup until enough past levels exist.
        Eigen::MatrixXd predictor;
        kernels::linear_combination({1.0, dt}, {&now.recalculated, &now.divergence}, predictor,
                                    parallel);
        const Stage mid = compute_stage(predictor, time_ + dt, diag);
        kernels::linear_combination({0.5, 0.5, 0.5 * dt},
                                    {&now.recalculated, &mid.recalculated, &mid.divergence},
                                    next, parallel);
      } else {
        kernels::linear_combination(
            {kSspAlphaNow, kSspAlphaOld, kSspBetaNow * dt},
            {&now.recalculated, &history_[kSspHistory - 1].recalculated, &now.divergence}, next,
            parallel);
      }
      history_.push_front(std::move(now));
      while (static_cast<int>(history_.size()) > kSspHistory) history_.pop_back();
      break;
    }
  }

  moments_ = std::move(next);
  time_ += dt;
  ++steps_;
  diagnostics_.push_back(diag);
}

Simulation::Evaluation Simulation::evaluate() {
  StepDiagnostics scratch;
  scratch.min_ansatz = kInf;
  scratch.max_ansatz = -kInf;
  scratch.margin = kInf;
  Evaluation ev;
  const Stage stage = compute_stage(moments_, time_, scratch, &ev.slopes);
  ev.ansatz = sweep_.ansatz.middleCols(ghosts_, grid_.n_cells);
  ev.recalculated = stage.recalculated;
  return ev;
}

RunResult Simulation::run() {
  const auto start = std::chrono::steady_clock::now();
  RunResult result;
  try {
    const double t_end = config_.t_end;
    while (t_end - time_ > 1e-12 * dt_) {
      step(std::min(dt_, t_end - time_));
    }
    if (steps_ > 0) time_ = t_end;
    const Evaluation ev = evaluate();
    result.ansatz = ev.ansatz;
    result.slopes = ev.slopes;
    result.completed = true;
  } catch (const RealizabilityLost& e) {
    if (!config_.capture_failure) throw;
    result.failure = e;
  }
  result.moments = moments_;
  result.multipliers = multipliers();
  result.time = time_;
  result.steps = steps_;
  result.diagnostics = diagnostics_;
  result.min_ansatz = min_ansatz_;
  result.max_ansatz = max_ansatz_;
  result.verified = result.completed && (config_.scheme == Scheme::RecalcFirstOrder ||
                                         config_.scheme == Scheme::RecalcSecondOrder ||
                                         config_.scheme == Scheme::ModifiedCfl);
  result.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

}  // namespace ipm
