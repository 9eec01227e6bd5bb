#pragma once

#include <filesystem>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "molgrating/numerics/quadrature.hpp"

namespace molgrating {

/// Normalized real s-state bound-state wave function phi(r) of the relative
/// coordinate. Immutable once built; copies share tabulated data.
///
/// Every model is stored through its reduced form u(r) = r*phi(r), which
/// stays finite at r = 0 for all supported variants, and is rescaled at
/// construction so that int 4 pi r^2 phi^2 dr = 1.
class RadialWaveFunction {
public:
  /// phi(r) = sqrt(kappa / 2pi) exp(-kappa r) / r
  struct ZeroRange {
    double kappa_per_nm;
  };
  struct ExponentialTerm {
    double weight;
    double decay_rate_per_nm;
  };
  /// phi(r) = sum_i w_i exp(-b_i r) / r
  struct SumOfExponentials {
    std::vector<ExponentialTerm> terms;
  };
  /// Natural cubic spline through (r_i, r_i * phi_i); constant phi below the
  /// first node; A exp(-kappa_fit r) beyond the last node.
  struct Table {
    std::vector<double> r_nm;
    std::vector<double> phi;
  };
  using Model = std::variant<ZeroRange, SumOfExponentials, Table>;

  static RadialWaveFunction zero_range(double kappa_per_nm);
  static RadialWaveFunction sum_of_exponentials(std::vector<ExponentialTerm> terms);
  static RadialWaveFunction tabulated(std::vector<double> r_nm,
                                      std::vector<double> phi);

  double value(double r_nm) const;
  double reduced(double r_nm) const;

  /// Asymptotic exponential decay rate of phi (nm^-1).
  double decay_rate() const noexcept { return decay_rate_; }
  /// Factor applied at construction to reach unit norm.
  double scale_factor() const noexcept { return scale_factor_; }
  const Model& model() const noexcept { return model_; }
  std::string describe() const;

  /// phi_lambda(r) = lambda^(-3/2) phi(r / lambda).
  RadialWaveFunction scaled(double lambda) const;

  /// Last-node tail rate for Table models, zero otherwise.
  double tail_fit_rate() const noexcept;

private:
  struct Spline;

  RadialWaveFunction(Model model, std::shared_ptr<const Spline> spline,
                     double decay_rate);
  double raw_reduced(double r) const;
  void normalize();

  Model model_;
  std::shared_ptr<const Spline> spline_;
  double decay_rate_ = 0.0;
  double scale_factor_ = 1.0;
};

/// kappa = sqrt(2 mu |E_b|) / hbar in nm^-1 (E_b in micro-eV, mu in u).
double kappa_from_binding_energy(double binding_energy_micro_ev,
                                 double reduced_mass_u);

/// |phi(r)|^2 in nm^-3. r must be > 0.
double probability_density(const RadialWaveFunction& wf, double r_nm);

/// rho(x2) = 2 pi int_{|x2|}^inf r |phi(r)|^2 dr. Closed form
/// kappa E1(2 kappa |x2|) for ZeroRange, quadrature otherwise.
double marginal_density(const RadialWaveFunction& wf, double x2_nm,
                        const numerics::QuadratureSpec& spec = {});
double marginal_density_by_quadrature(const RadialWaveFunction& wf, double x2_nm,
                                      const numerics::QuadratureSpec& spec = {});

/// int 4 pi r^2 |phi|^2 dr; 1 for every constructed wave function.
double norm(const RadialWaveFunction& wf, const numerics::QuadratureSpec& spec = {});

/// <r> = int 4 pi r^3 |phi|^2 dr.
double mean_internuclear_distance(const RadialWaveFunction& wf,
                                  const numerics::QuadratureSpec& spec = {});

/// Two-column text table "r_nm phi", ascending r, '#' comments.
RadialWaveFunction load_tabulated_wavefunction(const std::filesystem::path& path);

}  // namespace molgrating
