#include "molgrating/kernels/bruteforce.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <cmath>
#include <string>

#include "molgrating/numerics/special_functions.hpp"

namespace molgrating {

namespace {

struct Rule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

template <unsigned N>
Rule make_rule() {
  using G = boost::math::quadrature::gauss<double, N>;
  Rule rule;
  const auto& x = G::abscissa();
  const auto& w = G::weights();
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0.0) {
      rule.nodes.push_back(0.0);
      rule.weights.push_back(w[i]);
      continue;
    }
    rule.nodes.push_back(-x[i]);
    rule.weights.push_back(w[i]);
    rule.nodes.push_back(x[i]);
    rule.weights.push_back(w[i]);
  }
  return rule;
}

Rule gauss_rule(int points) {
  switch (points) {
    case 6: return make_rule<6>();
    case 8: return make_rule<8>();
    case 10: return make_rule<10>();
    case 12: return make_rule<12>();
    case 16: return make_rule<16>();
    case 20: return make_rule<20>();
    default:
      throw std::invalid_argument("unsupported Gauss-Legendre order " +
                                  std::to_string(points));
  }
}

// Panel edges on [0, upper]: dyadic towards 0, then uniform steps.
std::vector<double> axis_edges(double length, double upper, int levels, double step,
                               double extra_break) {
  std::vector<double> edges{0.0};
  double r = std::min(length, upper);
  for (int j = 0; j < levels; ++j) {
    r *= 0.5;
    edges.push_back(r);
  }
  for (double x = std::min(length, upper); x < upper; x += step) edges.push_back(x);
  edges.push_back(upper);
  if (extra_break > 0.0 && extra_break < upper) edges.push_back(extra_break);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return edges;
}

void append_nodes(const std::vector<double>& edges, const Rule& rule,
                  std::vector<double>& nodes, std::vector<double>& weights,
                  double sign) {
  for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
    const double centre = 0.5 * (edges[p] + edges[p + 1]);
    const double half = 0.5 * (edges[p + 1] - edges[p]);
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      nodes.push_back(sign * (centre + half * rule.nodes[i]));
      weights.push_back(half * rule.weights[i]);
    }
  }
}

}  // namespace

BruteForceBarOracle::BruteForceBarOracle(const DimerSpecies& species,
                                         const GratingGeometry& geometry,
                                         double k2_max, const BruteForceOptions& options)
    : mass_fraction_1_(species.mass_1() / species.total_mass()),
      mass_fraction_2_(species.mass_2() / species.total_mass()),
      total_mass_(species.total_mass()),
      k2_max_(std::abs(k2_max)),
      geometry_(geometry) {
  const auto& wf = species.wavefunction();
  const Rule rule = gauss_rule(options.gauss_points);
  const double length = 1.0 / wf.decay_rate();
  const double upper = std::log(1.0 / options.tail_tolerance) * 0.5 * length;
  const double step = options.panel_width * length;

  std::vector<double> t_nodes;
  std::vector<double> t_weights;
  append_nodes(axis_edges(length, upper, options.graded_levels, step, 0.0), rule,
               t_nodes, t_weights, 1.0);
  transverse_nodes_ = t_nodes.size();

  double x2_step = step;
  if (k2_max_ > 0.0) x2_step = std::min(step, options.max_phase_per_panel / k2_max_);
  const auto x2_edges = axis_edges(length, upper, options.graded_levels, x2_step,
                                   geometry.bar_width());
  std::vector<double> neg_nodes;
  std::vector<double> neg_weights;
  append_nodes(x2_edges, rule, neg_nodes, neg_weights, -1.0);
  for (std::size_t i = neg_nodes.size(); i-- > 0;) {
    x2_.push_back(neg_nodes[i]);
    weight_.push_back(neg_weights[i]);
  }
  append_nodes(x2_edges, rule, x2_, weight_, 1.0);

  const double pairs = 0.5 * static_cast<double>(transverse_nodes_) *
                       static_cast<double>(transverse_nodes_ + 1);
  const double work = pairs * static_cast<double>(x2_.size());
  if (work > options.max_evaluations)
    throw ResourceLimitError("brute-force grid needs " + std::to_string(work) +
                             " density evaluations, budget is " +
                             std::to_string(options.max_evaluations));

  plane_.resize(x2_.size());
  for (std::size_t k = 0; k < x2_.size(); ++k) {
    const double z2 = x2_[k] * x2_[k];
    double sum = 0.0;
    for (std::size_t i = 0; i < transverse_nodes_; ++i) {
      const double a2 = t_nodes[i] * t_nodes[i] + z2;
      // Symmetric in (x1, x3): diagonal once, off-diagonal pairs twice.
      double row = 0.0;
      for (std::size_t j = i + 1; j < transverse_nodes_; ++j) {
        const double r = std::sqrt(a2 + t_nodes[j] * t_nodes[j]);
        const double phi = wf.reduced(r) / r;
        row += t_weights[j] * phi * phi;
      }
      const double r = std::sqrt(a2 + t_nodes[i] * t_nodes[i]);
      const double phi = wf.reduced(r) / r;
      sum += t_weights[i] * (2.0 * row + t_weights[i] * phi * phi);
    }
    plane_[k] = 4.0 * sum;  // four quadrants of the (x1, x3) plane
  }
}

double BruteForceBarOracle::captured_norm() const {
  double sum = 0.0;
  for (std::size_t k = 0; k < x2_.size(); ++k) sum += weight_[k] * plane_[k];
  return sum;
}

ComplexAmplitude BruteForceBarOracle::evaluate(double k2, const BeamState& beam,
                                               AmplitudeMode mode) const {
  if (std::abs(k2) > k2_max_ * (1.0 + 1e-12))
    throw std::invalid_argument("k2 exceeds the range the oracle grid was built for");
  const double bar = geometry_.bar_width();
  const double half_bar = 0.5 * bar;
  const double c1 = mass_fraction_1_;
  const double c2 = mass_fraction_2_;

  // int d^3x {exp(i m1 k2 x2 / M) + exp(i m2 k2 x2 / M)} |phi|^2
  std::complex<double> phase_sum{0.0, 0.0};
  // int dx1 dx3 int_0^{d-s} dx2 |phi|^2 {sin[k2(a - m2 x2/M)] + sin[k2(a - m1 x2/M)]} / k2
  double bar_sum = 0.0;
  for (std::size_t k = 0; k < x2_.size(); ++k) {
    const double x = x2_[k];
    const double wp = weight_[k] * plane_[k];
    phase_sum += wp * (std::polar(1.0, c1 * k2 * x) + std::polar(1.0, c2 * k2 * x));
    if (x > 0.0 && x < bar) {
      const double z2 = half_bar - c2 * x;
      const double z1 = half_bar - c1 * x;
      bar_sum += wp * (z2 * numerics::sinc(k2 * z2) + z1 * numerics::sinc(k2 * z1));
    }
  }

  const ComplexAmplitude pp = point_bar_amplitude(k2, geometry_, beam, total_mass_, mode);
  const double prefactor = bar_prefactor(mode, beam, total_mass_);
  const std::complex<double> i{0.0, 1.0};
  return {pp.value * phase_sum + i * prefactor * bar_sum, mode};
}

ComplexAmplitude molecular_bar_amplitude_bruteforce(
    const DimerSpecies& species, const GratingGeometry& geometry,
    const BeamState& beam, double k2, AmplitudeMode mode,
    const BruteForceOptions& options) {
  return BruteForceBarOracle(species, geometry, k2, options).evaluate(k2, beam, mode);
}

}  // namespace molgrating
