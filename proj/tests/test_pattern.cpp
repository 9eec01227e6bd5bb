#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "molgrating/kernels/amplitude.hpp"
#include "molgrating/pattern.hpp"

using namespace molgrating;

namespace {

constexpr double kPi = std::numbers::pi;

const BeamState kBeam(126.05);

DiffractionPattern he2_pattern(double d, Normalization norm, std::size_t n = 801,
                               SamplingOptions opts = {}) {
  const GratingGeometry g(d, 0.5 * d, 30);
  return sample_pattern(DimerSpecies::helium_dimer(), g, kBeam, 2.0 * kPi * 9.5 / d, n, norm,
                        opts);
}

bool contains(const std::vector<double>& grid, double x) {
  return std::any_of(grid.begin(), grid.end(),
                     [x](double v) { return std::abs(v - x) <= 1e-12 * std::max(1.0, std::abs(x)); });
}

PeakReport report(int order, double ratio) {
  return {order, 0.0, ratio, 1.0, ratio, false};
}

}  // namespace

TEST_CASE("grid contains zero, every order peak and every point-particle zero") {
  const GratingGeometry g(100.0, 40.0, 30);
  const auto grid = pattern_grid(g, 0.6, 101, false);
  CHECK(std::is_sorted(grid.begin(), grid.end()));
  CHECK(std::adjacent_find(grid.begin(), grid.end()) == grid.end());
  CHECK(grid.front() == 0.0);
  CHECK(grid.back() == doctest::Approx(0.6));
  for (int n = 1; n <= 9; ++n) CHECK(contains(grid, 2.0 * kPi * n / 100.0));
  for (int m = 1; m <= 5; ++m) CHECK(contains(grid, 2.0 * kPi * m / 60.0));

  const auto sym = pattern_grid(g, 0.6, 101, true);
  CHECK(sym.front() == doctest::Approx(-0.6));
  for (std::size_t i = 0; i < sym.size(); ++i) CHECK(sym[i] == -sym[sym.size() - 1 - i]);
  CHECK_THROWS_AS(pattern_grid(g, 0.6, 1, false), std::invalid_argument);
  CHECK_THROWS_AS(pattern_grid(g, 0.0, 11, false), std::invalid_argument);
}

TEST_CASE("principal maxima of the d = 100 nm grating") {
  const auto p = he2_pattern(100.0, Normalization::RawReduced);
  const auto listing = find_peaks(p, 9);
  CHECK(!listing.notice);
  REQUIRE(listing.reports.size() == 10);
  for (const auto& r : listing.reports) {
    CHECK(r.location_k2 == doctest::Approx(0.0628318530718 * r.order).epsilon(1e-12));
    CHECK(r.intensity_mol > 0.0);
  }
}

TEST_CASE("unit zeroth-order normalization") {
  const auto p = he2_pattern(50.0, Normalization::UnitZerothOrder);
  const auto at_zero = std::find_if(p.samples.begin(), p.samples.end(),
                                    [](const PatternSample& s) { return s.k2 == 0.0; });
  REQUIRE(at_zero != p.samples.end());
  CHECK(at_zero->intensity_mol == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(at_zero->intensity_pp == doctest::Approx(1.0).epsilon(1e-15));
  const auto twice = normalize_to_zeroth_order(p);
  for (std::size_t i = 0; i < p.samples.size(); ++i) {
    CHECK(twice.samples[i].intensity_mol == p.samples[i].intensity_mol);
    CHECK(twice.samples[i].intensity_pp == p.samples[i].intensity_pp);
  }
  const auto raw = he2_pattern(50.0, Normalization::RawReduced);
  const auto converted = normalize_to_zeroth_order(raw);
  for (std::size_t i = 0; i < p.samples.size(); i += 37)
    CHECK(converted.samples[i].intensity_mol ==
          doctest::Approx(p.samples[i].intensity_mol).epsilon(1e-13));
}

TEST_CASE("single bar pattern is the squared bar amplitude") {
  const GratingGeometry g(50.0, 25.0, 1);
  const auto he2 = DimerSpecies::helium_dimer();
  const auto p = sample_pattern(he2, g, kBeam, 1.0, 41, Normalization::RawReduced);
  for (const auto& s : p.samples) {
    CHECK(s.h_squared == doctest::Approx(1.0).epsilon(1e-14));
    const auto t = molecular_bar_amplitude(he2, g, kBeam, s.k2, AmplitudeMode::Reduced);
    CHECK(s.intensity_mol == doctest::Approx(t.norm_squared()).epsilon(1e-14));
  }
}

TEST_CASE("symmetric sampling gives an even pattern") {
  SamplingOptions opts;
  opts.symmetric = true;
  const auto p = he2_pattern(25.0, Normalization::RawReduced, 201, opts);
  const auto n = p.samples.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& a = p.samples[i];
    const auto& b = p.samples[n - 1 - i];
    CHECK(a.k2 == -b.k2);
    CHECK(a.intensity_mol == doctest::Approx(b.intensity_mol).epsilon(1e-12));
    CHECK(a.intensity_pp == doctest::Approx(b.intensity_pp).epsilon(1e-12));
  }
}

TEST_CASE("threaded sampling is bitwise identical") {
  SamplingOptions opts;
  opts.threads = 3;
  const auto serial = he2_pattern(50.0, Normalization::UnitZerothOrder, 301);
  const auto threaded = he2_pattern(50.0, Normalization::UnitZerothOrder, 301, opts);
  REQUIRE(serial.samples.size() == threaded.samples.size());
  for (std::size_t i = 0; i < serial.samples.size(); ++i) {
    CHECK(serial.samples[i].k2 == threaded.samples[i].k2);
    CHECK(serial.samples[i].intensity_mol == threaded.samples[i].intensity_mol);
  }
}

TEST_CASE("grid search lands on the analytic peak positions") {
  const auto p = he2_pattern(100.0, Normalization::RawReduced, 2001);
  const double step = p.samples[1].k2 - p.samples[0].k2;
  for (int n : {1, 3, 5, 7}) CHECK(std::abs(locate_peak_by_search(p, n) - 2.0 * kPi * n / 100.0) <= step);
}

TEST_CASE("raw single-bar ratios at the odd orders") {
  // computed independently with a double-precision Python model (E1 marginal route)
  struct Case {
    double d;
    double ratios[3];
  };
  const Case cases[] = {{100.0, {0.98493, 0.88073, 0.73201}},
                        {50.0, {0.94229, 0.65890, 0.42376}},
                        {25.0, {0.79540, 0.35417, 0.16542}}};
  for (const auto& c : cases) {
    const auto listing = find_peaks(he2_pattern(c.d, Normalization::RawReduced), 5);
    for (int i = 0; i < 3; ++i) {
      const auto& r = listing.reports[static_cast<std::size_t>(2 * i + 1)];
      REQUIRE(r.ratio_mol_over_pp);
      CHECK(*r.ratio_mol_over_pp == doctest::Approx(c.ratios[i]).epsilon(1e-4));
    }
  }
}

TEST_CASE("even orders are flagged when the point-particle intensity vanishes") {
  const auto listing = find_peaks(he2_pattern(50.0, Normalization::UnitZerothOrder), 4);
  for (int n : {2, 4}) {
    const auto& r = listing.reports[static_cast<std::size_t>(n)];
    CHECK(r.pp_zero);
    CHECK(!r.ratio_mol_over_pp);
    CHECK(r.intensity_mol > 0.0);
    CHECK(r.location_k2 == doctest::Approx(2.0 * kPi * n / 50.0));
  }
  CHECK(listing.reports[2].location_k2 == doctest::Approx(0.2513).epsilon(1e-4));
  CHECK(!listing.reports[1].pp_zero);
  CHECK(*listing.reports[0].ratio_mol_over_pp == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("peak listing is truncated to the sampled range") {
  const GratingGeometry g(100.0, 50.0, 30);
  const auto p = sample_pattern(DimerSpecies::helium_dimer(), g, kBeam, 0.2, 101,
                                Normalization::RawReduced);
  const auto listing = find_peaks(p, 9);
  CHECK(listing.notice);
  CHECK(listing.reports.size() == 4);
}

TEST_CASE("suppression comparison") {
  const auto decreasing = compare_suppression({report(0, 1.0), report(1, 0.9), report(2, 0.1),
                                               report(3, 0.5), report(5, 0.2)});
  CHECK(decreasing.odd_orders == std::vector<int>{1, 3, 5});
  CHECK(decreasing.non_increasing);
  CHECK(decreasing.even_orders == std::vector<int>{2});

  CHECK(!compare_suppression({report(1, 0.5), report(3, 0.9)}).non_increasing);
  CHECK(compare_suppression({report(1, 0.9995), report(3, 1.0)}).non_increasing);
  CHECK_THROWS_AS(compare_suppression({report(0, 1.0), report(1, 0.5)}), std::invalid_argument);

  const auto listing = find_peaks(he2_pattern(25.0, Normalization::RawReduced), 9);
  const auto s = compare_suppression(listing.reports);
  CHECK(s.non_increasing);
  CHECK(s.odd_ratios[0] < 1.0);
}

TEST_CASE("tiny molecules reproduce the point-particle ratios") {
  const auto he2 = DimerSpecies::helium_dimer();
  const auto small = he2.with_wavefunction(he2.wavefunction().scaled(1e-3));
  const GratingGeometry g(100.0, 50.0, 30);
  const auto p = sample_pattern(small, g, kBeam, 0.6, 401, Normalization::RawReduced);
  const auto s = compare_suppression(find_peaks(p, 9).reports);
  for (double r : s.odd_ratios) CHECK(std::abs(r - 1.0) < 1e-3);
  CHECK(s.non_increasing);
}

TEST_CASE("quadrature failure surfaces as PatternEvaluationError") {
  SamplingOptions opts;
  opts.quadrature.max_subdivisions = 2;
  opts.quadrature.graded_levels = 0;
  opts.quadrature.relative_tolerance = 1e-15;
  try {
    (void)he2_pattern(50.0, Normalization::RawReduced, 21, opts);
    FAIL("expected PatternEvaluationError");
  } catch (const PatternEvaluationError& e) {
    CHECK(e.total() > 0);
    CHECK(e.completed() < e.total());
  }
}

TEST_CASE("normalization names") {
  CHECK(parse_normalization("raw-reduced") == Normalization::RawReduced);
  CHECK(parse_normalization(to_string(Normalization::UnitZerothOrder)) ==
        Normalization::UnitZerothOrder);
  CHECK_THROWS_AS(parse_normalization("none"), std::invalid_argument);
}

TEST_CASE("frozen single-bar regression values") {
  // odd orders 1..9, then |t_mol|^2 at order 2
  struct Frozen {
    double d;
    double odd[5];
    double order2;
  };
  const Frozen table[] = {
      {100.0,
       {0.98492975939939365, 0.8807303971691155, 0.73201399465018469, 0.58974299939536334,
        0.47274511273220848},
       1.3330651393662061},
      {50.0,
       {0.94229126536370322, 0.65890207456252758, 0.42375748058139034, 0.28390605721781997,
        0.19934562575125836},
       1.0588477782593335},
      {25.0,
       {0.79539999240620296, 0.35416700374525678, 0.16541789450232347, 0.10251918360889331,
        0.062844060137611096},
       0.57661040610729397},
  };
  const auto he2 = DimerSpecies::helium_dimer();
  for (const auto& f : table) {
    const GratingGeometry g(f.d, 0.5 * f.d, 30);
    for (int i = 0; i < 5; ++i) {
      const double k2 = g.order_position(2 * i + 1);
      const double ratio =
          molecular_bar_amplitude(he2, g, kBeam, k2, AmplitudeMode::Reduced).norm_squared() /
          point_bar_amplitude(k2, g, kBeam, he2.total_mass(), AmplitudeMode::Reduced)
              .norm_squared();
      CHECK(ratio == doctest::Approx(f.odd[i]).epsilon(1e-9));
    }
    CHECK(molecular_bar_amplitude(he2, g, kBeam, g.order_position(2), AmplitudeMode::Reduced)
              .norm_squared() == doctest::Approx(f.order2).epsilon(1e-9));
  }
}
