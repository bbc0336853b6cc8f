#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "ipm/basis.hpp"
#include "ipm/entropy.hpp"
#include "ipm/flux.hpp"
#include "ipm/quadrature.hpp"
#include "ipm/solver.hpp"

namespace ipm {

enum class IcKind {
  Ic1,                // uncertain ramp u_L -> u_R on [x0, x1] shifted by sigma xi
  Ic4,                // two shifted ramps u_L -> u_M -> u_R
  Ic3,                // three states, u_L + sigma0 xi0 | u_M + sigma1 xi1 | u_R
  DeterministicRamp,  // IC1 without the xi shift
  Sine,               // sin(k x + shift xi)
  Constant,
};

std::string to_string(IcKind kind);
IcKind parse_ic_kind(std::string_view name);

struct IcParameters {
  double x0 = 0.0, x1 = 0.0, x2 = 0.0, x3 = 0.0;
  double u_l = 0.0, u_m = 0.0, u_r = 0.0;
  double sigma = 0.0, sigma0 = 0.0, sigma1 = 0.0;
  double value = 0.0;              // Constant
  double wave_number = 1.0;        // Sine
  double sine_shift = 0.05 * 3.14159265358979323846;
};

enum class QuadratureKind { GaussLegendre, ClenshawCurtis };

struct QuadratureSpec {
  QuadratureKind kind = QuadratureKind::GaussLegendre;
  int points = 40;  // Gauss-Legendre
  int level = 3;    // Clenshaw-Curtis
  int dimension = 1;

  QuadratureRule build() const;
};

struct ProblemSpec {
  std::string name;
  FluxKind flux = FluxKind::Burgers;
  double advection_speed = 1.0;  // FluxKind::Advection
  IcKind ic = IcKind::Constant;
  IcParameters p;
  double a = 0.0, b = 1.0;
  int n_cells = 100;
  BoundaryKind boundary = BoundaryKind::Dirichlet;
  double t_end = 0.0;
  QuadratureSpec quadrature;
  int n_moments = 1;
  EntropyKind entropy = EntropyKind::BoundedBarrier;
  double delta_u = 0.0;
  int power_k = 1;

  SpatialGrid grid() const { return {a, b, n_cells}; }
};

/// A problem with the solver settings used for it.
struct Preset {
  ProblemSpec problem;
  SolverConfig solver;
};

std::vector<std::string> preset_names();
/// Throws ConfigError for unknown names.
Preset preset(std::string_view name);

/// (min, max) of the initial data over space and random space.
std::pair<double, double> value_range(const ProblemSpec& spec);
/// Entropy with bounds value_range -/+ delta_u. For stochastic Galerkin a
/// quadratic entropy on the same bounds (used only for wave speeds).
Entropy make_entropy(const ProblemSpec& spec, bool galerkin = false);
PhysicalFlux make_flux(const ProblemSpec& spec);

double ic_eval(const ProblemSpec& spec, double x, const Node& xi);

bool has_exact_solution(const ProblemSpec& spec);
/// Closed-form entropy solution by characteristics. Throws UnsupportedTime
/// when t lies past shock interaction (or is negative), ConfigError when the
/// problem has no closed form.
double exact_solution(const ProblemSpec& spec, double t, double x, const Node& xi);

/// (1/(xr-xl)) int_xl^xr <f(x, .) phi> dx by five-point Gauss in x.
MomentVector cell_moments(const std::function<double(double, const Node&)>& f, double xl,
                          double xr, const PolynomialBasis& basis);

/// Cell-averaged moments of the initial data, [moments x cells].
Eigen::MatrixXd project_ic(const ProblemSpec& spec, const SpatialGrid& grid,
                           const PolynomialBasis& basis);
/// Cell-averaged moments of the exact solution at time t.
Eigen::MatrixXd project_exact(const ProblemSpec& spec, const SpatialGrid& grid,
                              const PolynomialBasis& basis, double t);

/// Boundary condition of the problem: Dirichlet ghosts hold the moments of
/// the initial data just outside the domain; prescribed ghosts the cell
/// averages of the exact solution.
BoundaryCondition make_boundary(const ProblemSpec& spec, const SpatialGrid& grid,
                                const PolynomialBasis& basis);

struct Statistics {
  Eigen::VectorXd mean;
  Eigen::VectorXd stddev;
};

/// E = u_0, std = sqrt(sum_{i>=1} u_i^2) per column.
Statistics expectation_std(const Eigen::MatrixXd& moments);

/// A numerical solution as a function of x. Without slopes it is piecewise
/// constant; with them it is the pointwise-in-xi linear reconstruction
/// ansatz + (x - x_j) slope, turned into moments.
struct FieldSnapshot {
  Eigen::MatrixXd moments;
  Eigen::MatrixXd ansatz;  // optional, [nodes x cells]
  Eigen::MatrixXd slopes;  // optional, [nodes x cells]
};

/// Componentwise int |u_h(t, x) - <u_exact(t, x, .) phi>| dx, five-point
/// Gauss per cell.
Eigen::VectorXd l1_error(const FieldSnapshot& field, const ProblemSpec& spec,
                         const SpatialGrid& grid, const PolynomialBasis& basis, double t);

}  // namespace ipm
