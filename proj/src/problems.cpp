#include "ipm/problems.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ipm/errors.hpp"

namespace ipm {

namespace {

// Uncertain ramp from ul (left) down to ur (right) on [xl, xr], evolved by
// Burgers. Before the breaking time the ramp steepens linearly; afterwards
// a shock travels at the Rankine-Hugoniot speed (ul + ur) / 2.
double compressive_ramp(double x, double xl, double xr, double ul, double ur, double t) {
  const double t_break = (xr - xl) / (ul - ur);
  if (t < t_break) {
    const double left = xl + ul * t, right = xr + ur * t;
    if (x <= left) return ul;
    if (x >= right) return ur;
    return ul + (ur - ul) * (x - left) / (right - left);
  }
  const double shock = 0.5 * (xl + xr) + 0.5 * (ul + ur) * t;
  return x < shock ? ul : ur;
}

// Right end of the region influenced by a compressive ramp at time t.
double ramp_right_end(double xl, double xr, double ul, double ur, double t) {
  const double t_break = (xr - xl) / (ul - ur);
  if (t < t_break) return xr + ur * t;
  return 0.5 * (xl + xr) + 0.5 * (ul + ur) * t;
}

double ramp_left_end(double xl, double xr, double ul, double ur, double t) {
  const double t_break = (xr - xl) / (ul - ur);
  if (t < t_break) return xl + ul * t;
  return 0.5 * (xl + xr) + 0.5 * (ul + ur) * t;
}

void require_decreasing(double ul, double ur, const char* what) {
  if (!(ul > ur)) {
    throw ConfigError(std::string(what) + ": closed form needs decreasing states (shocks only)");
  }
}

}  // namespace

std::string to_string(IcKind kind) {
  switch (kind) {
    case IcKind::Ic1: return "ic1";
    case IcKind::Ic4: return "ic4";
    case IcKind::Ic3: return "ic3";
    case IcKind::DeterministicRamp: return "deterministic_ramp";
    case IcKind::Sine: return "sine";
    case IcKind::Constant: return "constant";
  }
  return "unknown";
}

IcKind parse_ic_kind(std::string_view name) {
  for (IcKind k : {IcKind::Ic1, IcKind::Ic4, IcKind::Ic3, IcKind::DeterministicRamp,
                   IcKind::Sine, IcKind::Constant}) {
    if (name == to_string(k)) return k;
  }
  throw ConfigError("unknown initial condition '" + std::string(name) + "'");
}

QuadratureRule QuadratureSpec::build() const {
  if (kind == QuadratureKind::GaussLegendre) {
    if (dimension != 1) throw ConfigError("Gauss-Legendre rule is one-dimensional here");
    if (points < 1) throw ConfigError("quadrature points must be >= 1");
    return gauss_legendre(points);
  }
  if (level < 1 || (dimension != 1 && dimension != 2)) {
    throw ConfigError("Clenshaw-Curtis needs level >= 1 and dimension 1 or 2");
  }
  return clenshaw_curtis_tensor(level, dimension);
}

std::vector<std::string> preset_names() {
  return {"burgers_ic1", "burgers_ic4", "burgers_2d_ic3", "advection_sine",
          "uncertain_advection_ramp"};
}

Preset preset(std::string_view name) {
  Preset out;
  ProblemSpec& s = out.problem;
  SolverConfig& c = out.solver;
  s.name = std::string(name);

  if (name == "burgers_ic1" || name == "burgers_ic4") {
    s.flux = FluxKind::Burgers;
    s.a = 0.0;
    s.b = 3.0;
    s.n_cells = 160;
    s.boundary = BoundaryKind::Dirichlet;
    s.quadrature = {QuadratureKind::GaussLegendre, 40, 3, 1};
    s.entropy = EntropyKind::BoundedBarrier;
    s.delta_u = 0.0;
    c.scheme = Scheme::RecalcFirstOrder;
    c.cfl = 1.0;
    c.tau = 1e-7;
    if (name == "burgers_ic1") {
      s.ic = IcKind::Ic1;
      s.p.x0 = 0.5;
      s.p.x1 = 1.5;
      s.p.u_l = 12.0;
      s.p.u_r = 3.0;
      s.p.sigma = 0.2;
      s.t_end = 0.15;
      s.n_moments = 5;
    } else {
      s.ic = IcKind::Ic4;
      s.p.x0 = 0.8;
      s.p.x1 = 0.98;
      s.p.x2 = 1.32;
      s.p.x3 = 1.5;
      s.p.u_l = 12.0;
      s.p.u_m = 7.5;  // not tabulated; midway between u_L and u_R
      s.p.u_r = 3.0;
      s.p.sigma = 0.5;
      s.t_end = 0.04;
      s.n_moments = 16;
    }
  } else if (name == "burgers_2d_ic3") {
    s.flux = FluxKind::Burgers;
    s.ic = IcKind::Ic3;
    s.p.x0 = 0.3;
    s.p.x1 = 1.6;
    s.p.sigma0 = 0.2;
    s.p.sigma1 = 0.2;
    s.p.u_l = 12.0;
    s.p.u_m = 6.0;
    s.p.u_r = 1.0;
    s.a = 0.0;
    s.b = 1.0;
    s.n_cells = 6000;
    s.boundary = BoundaryKind::Dirichlet;
    s.t_end = 0.01115;
    s.quadrature = {QuadratureKind::ClenshawCurtis, 40, 3, 2};
    s.n_moments = 5;
    s.entropy = EntropyKind::BoundedBarrier;
    c.scheme = Scheme::RecalcFirstOrder;
    c.cfl = 1.0;
    c.tau = 1e-7;
  } else if (name == "advection_sine") {
    s.flux = FluxKind::Advection;
    s.advection_speed = 1.0;
    s.ic = IcKind::Sine;
    s.a = 0.0;
    s.b = 2.0;
    s.n_cells = 160;
    // sin(x) is not 2-periodic, so the ghost cells follow the exact solution
    s.boundary = BoundaryKind::Prescribed;
    s.t_end = 0.1;
    s.quadrature = {QuadratureKind::GaussLegendre, 40, 3, 1};
    s.n_moments = 3;
    s.entropy = EntropyKind::BoundedBarrier;
    c.scheme = Scheme::RecalcSecondOrder;
    c.integrator = TimeIntegrator::SspMultistep;
    c.cfl = 0.5;
    c.tau_from_grid = true;
  } else if (name == "uncertain_advection_ramp") {
    s.flux = FluxKind::UncertainAdvection;
    s.ic = IcKind::DeterministicRamp;
    s.p.x0 = 0.5;
    s.p.x1 = 0.55;
    s.p.u_l = 12.0;
    s.p.u_r = 3.0;
    s.a = 0.0;
    s.b = 3.0;
    s.n_cells = 80;
    s.boundary = BoundaryKind::Dirichlet;
    s.t_end = 0.19;
    s.quadrature = {QuadratureKind::GaussLegendre, 40, 3, 1};
    s.n_moments = 10;
    s.entropy = EntropyKind::BoundedBarrier;
    s.delta_u = 1e-7;
    c.scheme = Scheme::ModifiedCfl;
    c.gamma = 1.0 + 1e-7;
    c.zeta = 5.0;
    c.cfl = 1.0;
    c.tau = 1e-7;
  } else {
    throw ConfigError("unknown preset '" + std::string(name) + "'");
  }
  c.t_end = s.t_end;
  return out;
}

std::pair<double, double> value_range(const ProblemSpec& spec) {
  const auto& p = spec.p;
  switch (spec.ic) {
    case IcKind::Ic1:
    case IcKind::DeterministicRamp:
      return {std::min(p.u_l, p.u_r), std::max(p.u_l, p.u_r)};
    case IcKind::Ic4:
      return {std::min({p.u_l, p.u_m, p.u_r}), std::max({p.u_l, p.u_m, p.u_r})};
    case IcKind::Ic3:
      return {std::min({p.u_l - std::abs(p.sigma0), p.u_m - std::abs(p.sigma1), p.u_r}),
              std::max({p.u_l + std::abs(p.sigma0), p.u_m + std::abs(p.sigma1), p.u_r})};
    case IcKind::Sine:
      return {-1.0, 1.0};
    case IcKind::Constant:
      return {p.value, p.value};
  }
  return {0.0, 0.0};
}

Entropy make_entropy(const ProblemSpec& spec, bool galerkin) {
  const auto [lo, hi] = value_range(spec);
  const double u_minus = lo - spec.delta_u, u_plus = hi + spec.delta_u;
  if (galerkin) return Entropy::quadratic(u_minus, u_plus);
  if (spec.entropy != EntropyKind::Quadratic && !(u_plus > u_minus)) {
    throw ConfigError("entropy bounds collapse; constant data needs delta_u > 0");
  }
  switch (spec.entropy) {
    case EntropyKind::LogBarrier: return Entropy::log_barrier(u_minus, u_plus);
    case EntropyKind::BoundedBarrier: return Entropy::bounded_barrier(u_minus, u_plus);
    case EntropyKind::Quadratic: return Entropy::quadratic(u_minus, u_plus);
    case EntropyKind::Power:
      if (spec.power_k < 1) throw ConfigError("entropy.k must be >= 1");
      return Entropy::power_family(Entropy::bounded_barrier(u_minus, u_plus), spec.power_k);
  }
  throw ConfigError("unsupported entropy");
}

PhysicalFlux make_flux(const ProblemSpec& spec) {
  switch (spec.flux) {
    case FluxKind::Burgers: return PhysicalFlux::burgers();
    case FluxKind::Advection: return PhysicalFlux::advection(spec.advection_speed);
    case FluxKind::UncertainAdvection: return PhysicalFlux::uncertain_advection();
  }
  throw ConfigError("unsupported flux");
}

double ic_eval(const ProblemSpec& spec, double x, const Node& xi) {
  const auto& p = spec.p;
  switch (spec.ic) {
    case IcKind::Ic1:
    case IcKind::DeterministicRamp: {
      const double shift = spec.ic == IcKind::Ic1 ? p.sigma * xi[0] : 0.0;
      const double xl = p.x0 + shift, xr = p.x1 + shift;
      if (x < xl) return p.u_l;
      if (x <= xr) return p.u_l + (p.u_r - p.u_l) / (p.x0 - p.x1) * (xl - x);
      return p.u_r;
    }
    case IcKind::Ic4: {
      const double shift = p.sigma * xi[0];
      const double x0 = p.x0 + shift, x1 = p.x1 + shift, x2 = p.x2 + shift, x3 = p.x3 + shift;
      if (x <= x0) return p.u_l;
      if (x <= x1) return p.u_l + (p.u_m - p.u_l) * (x0 - x) / (p.x0 - p.x1);
      if (x <= x2) return p.u_m;
      // continuous connection from u_M at x2 down to u_R at x3
      if (x <= x3) return p.u_m + (p.u_r - p.u_m) * (x - x2) / (p.x3 - p.x2);
      return p.u_r;
    }
    case IcKind::Ic3:
      if (x < p.x0) return p.u_l + p.sigma0 * xi[0];
      if (x <= p.x1) return p.u_m + p.sigma1 * xi[1];
      return p.u_r;
    case IcKind::Sine:
      return std::sin(p.wave_number * x + p.sine_shift * xi[0]);
    case IcKind::Constant:
      return p.value;
  }
  return 0.0;
}

bool has_exact_solution(const ProblemSpec& spec) {
  if (spec.flux != FluxKind::Burgers) return true;
  const auto& p = spec.p;
  switch (spec.ic) {
    case IcKind::Ic1: return p.u_l > p.u_r;
    case IcKind::Ic4: return p.u_l > p.u_m && p.u_m > p.u_r;
    case IcKind::Ic3:
      return p.u_l - std::abs(p.sigma0) > p.u_m + std::abs(p.sigma1) &&
             p.u_m - std::abs(p.sigma1) > p.u_r;
    case IcKind::Constant: return true;
    default: return false;
  }
}

double exact_solution(const ProblemSpec& spec, double t, double x, const Node& xi) {
  if (t < 0.0) throw UnsupportedTime("exact solution requested at negative time");
  if (t == 0.0) return ic_eval(spec, x, xi);
  switch (spec.flux) {
    case FluxKind::Advection:
      return ic_eval(spec, x - spec.advection_speed * t, xi);
    case FluxKind::UncertainAdvection:
      return ic_eval(spec, x - (11.0 + xi[0]) * t, xi);
    case FluxKind::Burgers:
      break;
  }

  const auto& p = spec.p;
  switch (spec.ic) {
    case IcKind::Constant:
      return p.value;
    case IcKind::Ic1: {
      require_decreasing(p.u_l, p.u_r, "ic1");
      const double shift = p.sigma * xi[0];
      return compressive_ramp(x, p.x0 + shift, p.x1 + shift, p.u_l, p.u_r, t);
    }
    case IcKind::Ic4: {
      require_decreasing(p.u_l, p.u_m, "ic4");
      require_decreasing(p.u_m, p.u_r, "ic4");
      const double shift = p.sigma * xi[0];
      const double x0 = p.x0 + shift, x1 = p.x1 + shift, x2 = p.x2 + shift, x3 = p.x3 + shift;
      const double first_end = ramp_right_end(x0, x1, p.u_l, p.u_m, t);
      const double second_start = ramp_left_end(x2, x3, p.u_m, p.u_r, t);
      if (first_end > second_start) {
        throw UnsupportedTime("ic4: the two waves interact before t = " + std::to_string(t));
      }
      if (x <= first_end) return compressive_ramp(x, x0, x1, p.u_l, p.u_m, t);
      return compressive_ramp(x, x2, x3, p.u_m, p.u_r, t);
    }
    case IcKind::Ic3: {
      const double ul = p.u_l + p.sigma0 * xi[0];
      const double um = p.u_m + p.sigma1 * xi[1];
      require_decreasing(ul, um, "ic3");
      require_decreasing(um, p.u_r, "ic3");
      const double first = p.x0 + 0.5 * (ul + um) * t;
      const double second = p.x1 + 0.5 * (um + p.u_r) * t;
      if (first >= second) {
        throw UnsupportedTime("ic3: the two shocks interact before t = " + std::to_string(t));
      }
      if (x < first) return ul;
      if (x <= second) return um;
      return p.u_r;
    }
    default:
      throw ConfigError("no closed-form solution for " + to_string(spec.ic) + " with Burgers");
  }
}

MomentVector cell_moments(const std::function<double(double, const Node&)>& f, double xl,
                          double xr, const PolynomialBasis& basis) {
  static const QuadratureRule gauss5 = gauss_legendre(5);
  const auto& nodes = basis.rule().nodes;
  std::vector<double> samples(nodes.size());
  MomentVector out = MomentVector::Zero(basis.size());
  const double mid = 0.5 * (xl + xr), half = 0.5 * (xr - xl);
  for (std::size_t k = 0; k < gauss5.size(); ++k) {
    const double x = mid + half * gauss5.nodes[k][0];
    for (std::size_t q = 0; q < nodes.size(); ++q) samples[q] = f(x, nodes[q]);
    out += gauss5.weights[k] * basis.moments_of(samples);
  }
  return out;
}

Eigen::MatrixXd project_ic(const ProblemSpec& spec, const SpatialGrid& grid,
                           const PolynomialBasis& basis) {
  Eigen::MatrixXd out(basis.size(), grid.n_cells);
  const double dx = grid.dx();
  auto f = [&](double x, const Node& xi) { return ic_eval(spec, x, xi); };
  for (int j = 0; j < grid.n_cells; ++j) {
    const double xl = grid.a + j * dx;
    out.col(j) = cell_moments(f, xl, xl + dx, basis);
  }
  return out;
}

Eigen::MatrixXd project_exact(const ProblemSpec& spec, const SpatialGrid& grid,
                              const PolynomialBasis& basis, double t) {
  Eigen::MatrixXd out(basis.size(), grid.n_cells);
  const double dx = grid.dx();
  auto f = [&](double x, const Node& xi) { return exact_solution(spec, t, x, xi); };
  for (int j = 0; j < grid.n_cells; ++j) {
    const double xl = grid.a + j * dx;
    out.col(j) = cell_moments(f, xl, xl + dx, basis);
  }
  return out;
}

BoundaryCondition make_boundary(const ProblemSpec& spec, const SpatialGrid& grid,
                                const PolynomialBasis& basis) {
  switch (spec.boundary) {
    case BoundaryKind::Periodic:
      return BoundaryCondition::periodic();
    case BoundaryKind::Dirichlet: {
      const auto& nodes = basis.rule().nodes;
      std::vector<double> left(nodes.size()), right(nodes.size());
      const double dx = grid.dx();
      for (std::size_t q = 0; q < nodes.size(); ++q) {
        left[q] = ic_eval(spec, grid.a - 0.5 * dx, nodes[q]);
        right[q] = ic_eval(spec, grid.b + 0.5 * dx, nodes[q]);
      }
      return BoundaryCondition::dirichlet(basis.moments_of(left), basis.moments_of(right));
    }
    case BoundaryKind::Prescribed: {
      if (!has_exact_solution(spec)) {
        throw ConfigError("prescribed boundary needs a problem with an exact solution");
      }
      // Copies keep the closure valid after spec/basis go out of scope in callers.
      const ProblemSpec s = spec;
      const PolynomialBasis* b = &basis;
      return BoundaryCondition::prescribed([s, grid, b](double t, int cell) {
        const double xl = grid.a + cell * grid.dx();
        return cell_moments([&](double x, const Node& xi) { return exact_solution(s, t, x, xi); },
                            xl, xl + grid.dx(), *b);
      });
    }
  }
  throw ConfigError("unsupported boundary");
}

Statistics expectation_std(const Eigen::MatrixXd& moments) {
  Statistics st;
  st.mean = moments.row(0).transpose();
  st.stddev.resize(moments.cols());
  for (Eigen::Index j = 0; j < moments.cols(); ++j) {
    const double var =
        moments.rows() > 1 ? moments.col(j).tail(moments.rows() - 1).squaredNorm() : 0.0;
    st.stddev(j) = std::sqrt(std::max(var, 0.0));
  }
  return st;
}

Eigen::VectorXd l1_error(const FieldSnapshot& field, const ProblemSpec& spec,
                         const SpatialGrid& grid, const PolynomialBasis& basis, double t) {
  static const QuadratureRule gauss5 = gauss_legendre(5);
  const bool reconstructed = field.slopes.size() > 0 && field.ansatz.size() > 0;
  const auto& nodes = basis.rule().nodes;
  const Eigen::MatrixXd& w = basis.weighted_table();
  const double dx = grid.dx();
  std::vector<double> samples(nodes.size());
  Eigen::VectorXd err = Eigen::VectorXd::Zero(basis.size());
  for (int j = 0; j < grid.n_cells; ++j) {
    const double xc = grid.center(j);
    for (std::size_t k = 0; k < gauss5.size(); ++k) {
      const double offset = 0.5 * dx * gauss5.nodes[k][0];
      for (std::size_t q = 0; q < nodes.size(); ++q) {
        samples[q] = exact_solution(spec, t, xc + offset, nodes[q]);
      }
      const MomentVector exact = basis.moments_of(samples);
      MomentVector numeric;
      if (reconstructed) {
        numeric = w.transpose() * (field.ansatz.col(j) + offset * field.slopes.col(j));
      } else {
        numeric = field.moments.col(j);
      }
      err += dx * gauss5.weights[k] * (numeric - exact).cwiseAbs();
    }
  }
  return err;
}

}  // namespace ipm
