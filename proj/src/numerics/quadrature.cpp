#include "molgrating/numerics/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <vector>

namespace molgrating::numerics {

namespace {

// Gauss-Kronrod 21-point abscissae and weights (QUADPACK qk21). Odd indices
// are shared with the embedded 10-point Gauss rule.
constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};

constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077600881726860, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};

constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

constexpr double kEps = std::numeric_limits<double>::epsilon();

struct Panel {
  double a;
  double b;
  double value;
  double error;
  bool splittable;
};

Panel gauss_kronrod_21(const ScalarFunction& f, double a, double b) {
  const double centre = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(centre);
  double resg = 0.0;
  double resk = kWgk[10] * fc;
  double resabs = std::abs(resk);
  std::array<double, 10> f1{};
  std::array<double, 10> f2{};
  for (std::size_t j = 0; j < 10; ++j) {
    const double dx = half * kXgk[j];
    f1[j] = f(centre - dx);
    f2[j] = f(centre + dx);
    const double sum = f1[j] + f2[j];
    resk += kWgk[j] * sum;
    resabs += kWgk[j] * (std::abs(f1[j]) + std::abs(f2[j]));
    if (j % 2 == 1) resg += kWg[j / 2] * sum;
  }
  const double reskh = 0.5 * resk;
  double resasc = kWgk[10] * std::abs(fc - reskh);
  for (std::size_t j = 0; j < 10; ++j)
    resasc += kWgk[j] * (std::abs(f1[j] - reskh) + std::abs(f2[j] - reskh));

  const double width = std::abs(half);
  const double value = resk * half;
  resabs *= width;
  resasc *= width;
  double error = std::abs((resk - resg) * half);
  if (resasc != 0.0 && error != 0.0)
    error = resasc * std::min(1.0, std::pow(200.0 * error / resasc, 1.5));
  if (resabs > std::numeric_limits<double>::min() / (50.0 * kEps))
    error = std::max(50.0 * kEps * resabs, error);
  if (!std::isfinite(value) || !std::isfinite(error))
    error = std::numeric_limits<double>::infinity();

  const double scale = std::max(std::abs(a), std::abs(b));
  const bool splittable = (b - a) > 1e3 * kEps * std::max(scale, 1e-300);
  return {a, b, value, error, splittable};
}

// Neumaier-compensated sum of panel values in left-to-right order.
QuadratureResult collect(std::vector<Panel> panels, std::size_t evaluations) {
  std::sort(panels.begin(), panels.end(),
            [](const Panel& l, const Panel& r) { return l.a < r.a; });
  double sum = 0.0;
  double compensation = 0.0;
  double error = 0.0;
  for (const auto& p : panels) {
    const double t = sum + p.value;
    if (std::abs(sum) >= std::abs(p.value))
      compensation += (sum - t) + p.value;
    else
      compensation += (p.value - t) + sum;
    sum = t;
    error += p.error;
  }
  return {sum + compensation, error, evaluations, panels.size()};
}

}  // namespace

double TailCutoff::upper_limit(double decay_rate, double absolute_tolerance) const {
  if (!(decay_rate > 0.0))
    throw std::invalid_argument("tail cutoff needs a positive decay rate");
  return std::log(safety / absolute_tolerance) / decay_rate;
}

void QuadratureSpec::validate() const {
  if (!(relative_tolerance > 0.0))
    throw std::invalid_argument("relative_tolerance must be > 0");
  if (!(absolute_tolerance > 0.0))
    throw std::invalid_argument("absolute_tolerance must be > 0");
  if (max_subdivisions < 1)
    throw std::invalid_argument("max_subdivisions must be >= 1");
  if (!(tail_cutoff.safety >= 1.0))
    throw std::invalid_argument("tail cutoff safety factor must be >= 1");
  if (graded_levels < 0)
    throw std::invalid_argument("graded_levels must be >= 0");
}

QuadratureSpec QuadratureSpec::tightened(double factor) const {
  QuadratureSpec out = *this;
  out.relative_tolerance /= factor;
  out.absolute_tolerance /= factor;
  return out;
}

QuadratureError::QuadratureError(const std::string& what, double best_value,
                                 double achieved_error)
    : std::runtime_error(what),
      best_value_(best_value),
      achieved_error_(achieved_error) {}

QuadratureResult integrate(const ScalarFunction& f, double a, double b,
                           const QuadratureSpec& spec,
                           std::span<const double> breakpoints) {
  spec.validate();
  if (a == b) return {};
  if (a > b) {
    auto r = integrate(f, b, a, spec, breakpoints);
    r.value = -r.value;
    return r;
  }

  std::vector<double> edges{a};
  for (double x : breakpoints)
    if (x > a && x < b) edges.push_back(x);
  edges.push_back(b);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  if (edges.size() - 1 > spec.max_subdivisions)
    throw QuadratureError("initial partition exceeds max_subdivisions",
                          std::numeric_limits<double>::quiet_NaN(),
                          std::numeric_limits<double>::infinity());

  std::vector<Panel> panels;
  panels.reserve(edges.size() - 1 + 64);
  std::size_t evaluations = 0;
  double total = 0.0;
  double total_error = 0.0;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    panels.push_back(gauss_kronrod_21(f, edges[i], edges[i + 1]));
    evaluations += 21;
    total += panels.back().value;
    total_error += panels.back().error;
  }

  auto by_error = [&panels](std::size_t l, std::size_t r) {
    if (panels[l].error != panels[r].error)
      return panels[l].error < panels[r].error;
    return panels[l].a > panels[r].a;
  };
  std::priority_queue<std::size_t, std::vector<std::size_t>, decltype(by_error)>
      queue(by_error);
  for (std::size_t i = 0; i < panels.size(); ++i)
    if (panels[i].splittable) queue.push(i);

  auto tolerance = [&spec](double value) {
    return std::max(spec.relative_tolerance * std::abs(value),
                    spec.absolute_tolerance);
  };

  while (true) {
    if (total_error <= tolerance(total)) {
      // Incremental sums drift; confirm on a fresh summation.
      auto result = collect(panels, evaluations);
      if (result.error <= tolerance(result.value)) return result;
      total = result.value;
      total_error = result.error;
    }
    if (queue.empty() || panels.size() >= spec.max_subdivisions) {
      auto result = collect(panels, evaluations);
      if (result.error <= tolerance(result.value)) return result;
      throw QuadratureError(
          queue.empty() ? "quadrature limited by roundoff"
                        : "quadrature did not converge within max_subdivisions",
          result.value, result.error);
    }
    const std::size_t worst = queue.top();
    queue.pop();
    const Panel parent = panels[worst];
    const double mid = 0.5 * (parent.a + parent.b);
    panels[worst] = gauss_kronrod_21(f, parent.a, mid);
    panels.push_back(gauss_kronrod_21(f, mid, parent.b));
    evaluations += 42;
    total += panels[worst].value + panels.back().value - parent.value;
    total_error += panels[worst].error + panels.back().error - parent.error;
    if (panels[worst].splittable) queue.push(worst);
    if (panels.back().splittable) queue.push(panels.size() - 1);
  }
}

QuadratureResult integrate_radial(const ScalarFunction& f, double decay_rate,
                                  const QuadratureSpec& spec,
                                  std::span<const double> breakpoints) {
  spec.validate();
  double upper = spec.tail_cutoff.upper_limit(decay_rate, spec.absolute_tolerance);
  // Beyond the cutoff the integrand is taken to fall at least as fast as
  // exp(-decay_rate r); a slowly varying prefactor pushes the cutoff outward.
  const double tail_target = spec.absolute_tolerance / spec.tail_cutoff.safety;
  const auto tail_bound = [&](double r) {
    const double probe = std::max(std::abs(f(r)), std::abs(f(r + 0.5 / decay_rate)));
    return std::isfinite(probe) ? probe / decay_rate : 0.0;
  };
  double tail = tail_bound(upper);
  for (int step = 0; step < 64 && tail > tail_target; ++step) {
    upper += std::log(10.0) / decay_rate;
    tail = tail_bound(upper);
  }
  std::vector<double> edges;
  edges.reserve(static_cast<std::size_t>(spec.graded_levels) + breakpoints.size());
  double r = upper;
  for (int j = 0; j < spec.graded_levels; ++j) {
    r *= 0.5;
    edges.push_back(r);
  }
  edges.insert(edges.end(), breakpoints.begin(), breakpoints.end());
  auto result = integrate(f, 0.0, upper, spec, edges);
  result.error += tail;
  return result;
}

QuadratureResult integrate_oscillatory(const ScalarFunction& envelope,
                                       double wave_number, double a, double b,
                                       OscillatoryKernel kernel,
                                       const QuadratureSpec& spec) {
  spec.validate();
  if (wave_number < 0.0)
    throw std::invalid_argument("wave_number must be >= 0");
  const bool sine = kernel == OscillatoryKernel::Sine;
  if (wave_number == 0.0) {
    if (sine) return {};
    return integrate(envelope, a, b, spec);
  }

  const double lo = std::min(a, b);
  const double hi = std::max(a, b);
  const double half_period = std::numbers::pi / wave_number;
  const double offset = sine ? 0.0 : 0.5;
  const double first = std::ceil(lo / half_period - offset);
  const double last = std::floor(hi / half_period - offset);
  const double count = last - first + 1.0;
  if (count > static_cast<double>(spec.max_subdivisions))
    throw QuadratureError("too many half-periods for max_subdivisions",
                          std::numeric_limits<double>::quiet_NaN(),
                          std::numeric_limits<double>::infinity());

  std::vector<double> zeros;
  if (count > 0) zeros.reserve(static_cast<std::size_t>(count));
  for (double n = first; n <= last; n += 1.0)
    zeros.push_back((n + offset) * half_period);

  auto integrand = [&envelope, wave_number, sine](double x) {
    const double phase = wave_number * x;
    return envelope(x) * (sine ? std::sin(phase) : std::cos(phase));
  };
  return integrate(integrand, a, b, spec, zeros);
}

}  // namespace molgrating::numerics
