#include "molgrating/wavefunction.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_spline.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "molgrating/numerics/special_functions.hpp"
#include "molgrating/units.hpp"

namespace molgrating {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kFourPi = 4.0 * std::numbers::pi;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

struct GslSplineDeleter {
  void operator()(gsl_spline* s) const noexcept { gsl_spline_free(s); }
};

}  // namespace

struct RadialWaveFunction::Spline {
  std::unique_ptr<gsl_spline, GslSplineDeleter> spline;
  double r_min = 0.0;
  double r_max = 0.0;
  double u_at_min = 0.0;
  double phi_at_max = 0.0;
  double kappa_fit = 0.0;

  double reduced(double r) const {
    if (r < r_min) return r_min > 0.0 ? u_at_min * r / r_min : 0.0;
    if (r > r_max) return r * phi_at_max * std::exp(-kappa_fit * (r - r_max));
    // A null accelerator keeps evaluation free of shared mutable state.
    return gsl_spline_eval(spline.get(), r, nullptr);
  }
};

RadialWaveFunction::RadialWaveFunction(Model model,
                                       std::shared_ptr<const Spline> spline,
                                       double decay_rate)
    : model_(std::move(model)), spline_(std::move(spline)), decay_rate_(decay_rate) {
  normalize();
}

RadialWaveFunction RadialWaveFunction::zero_range(double kappa_per_nm) {
  if (!(kappa_per_nm > 0.0) || !std::isfinite(kappa_per_nm))
    throw std::invalid_argument("zero-range wave function needs kappa > 0");
  return RadialWaveFunction(ZeroRange{kappa_per_nm}, nullptr, kappa_per_nm);
}

RadialWaveFunction RadialWaveFunction::sum_of_exponentials(
    std::vector<ExponentialTerm> terms) {
  if (terms.empty())
    throw std::invalid_argument("sum-of-exponentials model needs at least one term");
  double slowest = std::numeric_limits<double>::infinity();
  for (const auto& t : terms) {
    if (!(t.decay_rate_per_nm > 0.0) || !std::isfinite(t.decay_rate_per_nm))
      throw std::invalid_argument("every decay rate must be > 0");
    if (!std::isfinite(t.weight))
      throw std::invalid_argument("weights must be finite");
    if (t.weight != 0.0) slowest = std::min(slowest, t.decay_rate_per_nm);
  }
  if (!std::isfinite(slowest))
    throw std::invalid_argument("sum-of-exponentials model has only zero weights");
  return RadialWaveFunction(SumOfExponentials{std::move(terms)}, nullptr, slowest);
}

RadialWaveFunction RadialWaveFunction::tabulated(std::vector<double> r_nm,
                                                 std::vector<double> phi) {
  if (r_nm.size() != phi.size())
    throw std::invalid_argument("table columns differ in length");
  if (r_nm.size() < 4)
    throw std::invalid_argument("table needs at least 4 rows");
  for (std::size_t i = 0; i < r_nm.size(); ++i) {
    if (!std::isfinite(r_nm[i]) || !std::isfinite(phi[i]))
      throw std::invalid_argument("table contains non-finite values");
    if (r_nm[i] < 0.0) throw std::invalid_argument("table radii must be >= 0");
    if (i > 0 && !(r_nm[i] > r_nm[i - 1]))
      throw std::invalid_argument("table radii must be strictly ascending");
  }

  auto spline = std::make_shared<Spline>();
  spline->r_min = r_nm.front();
  spline->r_max = r_nm.back();
  std::vector<double> u(r_nm.size());
  for (std::size_t i = 0; i < u.size(); ++i) u[i] = r_nm[i] * phi[i];
  spline->u_at_min = u.front();
  spline->phi_at_max = phi.back();

  // Tail rate from a least-squares fit of ln|phi| over the last tenth of the
  // tabulated range.
  const double start = spline->r_max - 0.1 * (spline->r_max - spline->r_min);
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (std::size_t i = 0; i < r_nm.size(); ++i) {
    if (r_nm[i] < start) continue;
    if (phi[i] == 0.0)
      throw std::invalid_argument("table tail contains zero values; cannot fit decay");
    const double y = std::log(std::abs(phi[i]));
    sx += r_nm[i];
    sy += y;
    sxx += r_nm[i] * r_nm[i];
    sxy += r_nm[i] * y;
    ++n;
  }
  if (n < 2)
    throw std::invalid_argument("table tail needs at least 2 rows in its last tenth");
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  spline->kappa_fit = -slope;
  if (!(spline->kappa_fit > 0.0))
    throw std::invalid_argument("table does not decay exponentially at large r");

  gsl_error_handler_t* previous = gsl_set_error_handler_off();
  spline->spline.reset(gsl_spline_alloc(gsl_interp_cspline, r_nm.size()));
  const int status = spline->spline
                         ? gsl_spline_init(spline->spline.get(), r_nm.data(),
                                           u.data(), r_nm.size())
                         : GSL_ENOMEM;
  gsl_set_error_handler(previous);
  if (status != GSL_SUCCESS)
    throw std::runtime_error(std::string("spline setup failed: ") + gsl_strerror(status));

  const double rate = spline->kappa_fit;
  return RadialWaveFunction(Table{std::move(r_nm), std::move(phi)},
                            std::move(spline), rate);
}

double RadialWaveFunction::raw_reduced(double r) const {
  return std::visit(
      Overloaded{
          [r](const ZeroRange& m) {
            return std::sqrt(m.kappa_per_nm / kTwoPi) * std::exp(-m.kappa_per_nm * r);
          },
          [r](const SumOfExponentials& m) {
            double u = 0.0;
            for (const auto& t : m.terms) u += t.weight * std::exp(-t.decay_rate_per_nm * r);
            return u;
          },
          [this, r](const Table&) { return spline_->reduced(r); }},
      model_);
}

double RadialWaveFunction::reduced(double r_nm) const {
  return scale_factor_ * raw_reduced(r_nm);
}

double RadialWaveFunction::value(double r_nm) const { return reduced(r_nm) / r_nm; }

double RadialWaveFunction::tail_fit_rate() const noexcept {
  return spline_ ? spline_->kappa_fit : 0.0;
}

void RadialWaveFunction::normalize() {
  std::vector<double> breaks;
  if (spline_) breaks = {spline_->r_min, spline_->r_max};
  const auto result = numerics::integrate_radial(
      [this](double r) {
        const double u = raw_reduced(r);
        return kFourPi * u * u;
      },
      2.0 * decay_rate_, {}, breaks);
  if (!(result.value > 0.0) || !std::isfinite(result.value))
    throw std::invalid_argument("wave function is not normalizable");
  scale_factor_ = 1.0 / std::sqrt(result.value);
}

RadialWaveFunction RadialWaveFunction::scaled(double lambda) const {
  if (!(lambda > 0.0) || !std::isfinite(lambda))
    throw std::invalid_argument("scale factor lambda must be > 0");
  return std::visit(
      Overloaded{
          [lambda](const ZeroRange& m) { return zero_range(m.kappa_per_nm / lambda); },
          [this, lambda](const SumOfExponentials& m) {
            auto terms = m.terms;
            const double w = scale_factor_ / std::sqrt(lambda);
            for (auto& t : terms) {
              t.weight *= w;
              t.decay_rate_per_nm /= lambda;
            }
            return sum_of_exponentials(std::move(terms));
          },
          [this, lambda](const Table& m) {
            auto r = m.r_nm;
            auto phi = m.phi;
            const double w = scale_factor_ * std::pow(lambda, -1.5);
            for (auto& x : r) x *= lambda;
            for (auto& p : phi) p *= w;
            return tabulated(std::move(r), std::move(phi));
          }},
      model_);
}

std::string RadialWaveFunction::describe() const {
  std::ostringstream out;
  out.precision(17);
  std::visit(Overloaded{[&out](const ZeroRange& m) {
                          out << "zero_range(kappa=" << m.kappa_per_nm << " /nm)";
                        },
                        [&out](const SumOfExponentials& m) {
                          out << "sum_of_exponentials(" << m.terms.size() << " terms)";
                        },
                        [&out](const Table& m) {
                          out << "tabulated(" << m.r_nm.size() << " rows)";
                        }},
             model_);
  return out.str();
}

double kappa_from_binding_energy(double binding_energy_micro_ev, double reduced_mass_u) {
  if (!(binding_energy_micro_ev < 0.0))
    throw std::domain_error("binding energy must be negative");
  if (!(reduced_mass_u > 0.0)) throw std::domain_error("reduced mass must be > 0");
  const double energy = -binding_energy_micro_ev * units::micro_ev_to_joule;
  const double mass = reduced_mass_u * units::atomic_mass_kg;
  return std::sqrt(2.0 * mass * energy) / units::hbar_J_s * 1e-9;
}

double probability_density(const RadialWaveFunction& wf, double r_nm) {
  if (!(r_nm > 0.0)) throw std::domain_error("probability density needs r > 0");
  const double phi = wf.value(r_nm);
  return phi * phi;
}

double marginal_density_by_quadrature(const RadialWaveFunction& wf, double x2_nm,
                                      const numerics::QuadratureSpec& spec) {
  const double x = std::abs(x2_nm);
  if (x == 0.0 && wf.reduced(0.0) != 0.0) return std::numeric_limits<double>::infinity();
  const auto result = numerics::integrate_radial(
      [&wf, x](double t) {
        const double r = x + t;
        const double u = wf.reduced(r);
        return kTwoPi * u * u / r;
      },
      2.0 * wf.decay_rate(), spec);
  return result.value;
}

double marginal_density(const RadialWaveFunction& wf, double x2_nm,
                        const numerics::QuadratureSpec& spec) {
  if (const auto* zr = std::get_if<RadialWaveFunction::ZeroRange>(&wf.model())) {
    const double x = std::abs(x2_nm);
    if (x == 0.0) return std::numeric_limits<double>::infinity();
    const double kappa = zr->kappa_per_nm;
    const double s = wf.scale_factor();
    return s * s * kappa * numerics::exponential_integral_e1(2.0 * kappa * x);
  }
  return marginal_density_by_quadrature(wf, x2_nm, spec);
}

double norm(const RadialWaveFunction& wf, const numerics::QuadratureSpec& spec) {
  return numerics::integrate_radial(
             [&wf](double r) {
               const double u = wf.reduced(r);
               return kFourPi * u * u;
             },
             2.0 * wf.decay_rate(), spec)
      .value;
}

double mean_internuclear_distance(const RadialWaveFunction& wf,
                                  const numerics::QuadratureSpec& spec) {
  return numerics::integrate_radial(
             [&wf](double r) {
               const double u = wf.reduced(r);
               return kFourPi * r * u * u;
             },
             2.0 * wf.decay_rate(), spec)
      .value;
}

RadialWaveFunction load_tabulated_wavefunction(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open wave-function table " + path.string());
  std::vector<double> r;
  std::vector<double> phi;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    double a = 0.0;
    double b = 0.0;
    if (!(fields >> a)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      throw std::runtime_error(path.string() + ":" + std::to_string(line_no) +
                               ": expected two numeric columns");
    }
    std::string extra;
    if (!(fields >> b) || (fields >> extra))
      throw std::runtime_error(path.string() + ":" + std::to_string(line_no) +
                               ": expected two numeric columns");
    r.push_back(a);
    phi.push_back(b);
  }
  try {
    return RadialWaveFunction::tabulated(std::move(r), std::move(phi));
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(path.string() + ": " + e.what());
  }
}

}  // namespace molgrating
