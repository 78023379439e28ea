#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "support.hpp"

#include "cartan/builtins.hpp"
#include "cartan/ek/cubic.hpp"
#include "cartan/ek/leaves.hpp"
#include "cartan/errors.hpp"
#include "cartan/monodromy.hpp"

using namespace cartan;

namespace {

constexpr double pi = std::numbers::pi;

}  // namespace

TEST_CASE("splitting is a metric right inverse of the anchor") {
  const CartanModel ek = extremal_kahler_model();
  const Splitting split(ek);
  Rng rng(31);
  for (int k = 0; k < 50; ++k) {
    const Vector x = sample_point(ek, rng);
    const Vector v = anchor(ek, x, sample_fiber(ek, rng));
    const Vector s = split.sigma(x, v);
    CHECK((anchor(ek, x, s) - v).norm() < 1e-10 * std::max(1.0, v.norm()));
    CHECK(std::fabs(s.dot(split.metric() * ek::flat_section(x))) < 1e-10 * std::max(1.0, s.norm()));
  }
}

TEST_CASE("splitting curvature agrees with the closed form on ek leaves") {
  const CartanModel ek = extremal_kahler_model();
  const Splitting split(ek);
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  int points = 0;
  while (points < 50) {
    const double c1 = 0.2 + 1.8 * u(rng);
    const double c2 = (2 * u(rng) - 1) * 4.0 / 3.0 * std::pow(c1, 1.5);
    const ek::CubicProfile prof = ek::cubic_profile(c1, c2);
    const ek::SpherePeriods per = ek::sphere_periods(prof);
    const double k = per.r2 + (per.r3 - per.r2) * (0.05 + 0.9 * u(rng));
    const Vector x = ek::leaf_point(prof, k, 2 * pi * u(rng));
    const Vector omega = splitting_curvature(split, x, ek::tangent_k(x), ek::tangent_theta(x));
    const Vector ref = ek::omega_closed(prof, k) * ek::flat_section(x);
    worst = std::max(worst, (omega - ref).norm() / ref.norm());
    ++points;
  }
  CHECK(worst < 1e-5);
}

TEST_CASE("splitting curvature is antisymmetric and fails at rank drops") {
  const CartanModel ek = extremal_kahler_model();
  const Splitting split(ek);
  const Vector x = vec({0.5, 0.8, -0.4, 0.3});
  const Vector v = ek::tangent_k(x), w = ek::tangent_theta(x);
  CHECK(splitting_curvature(split, x, v, v).norm() < 1e-7);
  CHECK((splitting_curvature(split, x, v, w) + splitting_curvature(split, x, w, v)).norm() < 1e-7);
  CHECK_THROWS_AS(splitting_curvature(split, vec({1, 0, 0, 0}), vec({1, 0, 0, 0}), vec({0, 1, 0, 0})),
                  SingularityError);
}

TEST_CASE("sphere and cap periods match the closed forms") {
  const CartanModel ek = extremal_kahler_model();
  const Splitting split(ek);
  for (auto [c1, c2] : {std::pair{1.0, 0.0}, {0.5, 0.2}, {2.0, -2.5}}) {
    const ek::CubicProfile prof = ek::cubic_profile(c1, c2);
    const ek::SpherePeriods per = ek::sphere_periods(prof);
    CHECK(per.cap == doctest::Approx(2 * pi / (per.r3 * per.r3 / 4 - c1)).epsilon(1e-14));
    const LeafCycles cyc = ek::sphere_cycles(prof);
    const PeriodResult sphere = period(split, cyc.spheres[0], cyc.frame);
    const PeriodResult cap = period(split, cyc.orbit_disks[1], cyc.frame);
    CHECK(std::fabs(sphere.value[0] - per.sphere) < 1e-6 * per.sphere);
    CHECK(std::fabs(cap.value[0] - per.cap) < 1e-6 * per.cap);
    CHECK(sphere.converged);
  }
}

TEST_CASE("degenerate patch has zero period") {
  const CartanModel ek = extremal_kahler_model();
  const Splitting split(ek);
  DiskPatch patch;
  patch.param = [](double, double) { return vec({0.5, 0.8, -0.4, 0.3}); };
  const PeriodResult r = period(split, patch, [](const Vector& x) -> Matrix { return ek::flat_section(x); });
  CHECK(r.value.norm() == 0.0);
}

TEST_CASE("periods are additive and change sign with orientation") {
  const CartanModel ek = extremal_kahler_model();
  const Splitting split(ek);
  const ek::CubicProfile prof = ek::cubic_profile(1.2, 0.4);
  const LeafCycles cyc = ek::sphere_cycles(prof);
  const DiskPatch& sphere = cyc.spheres[0];
  PeriodOptions opts;
  const double whole = period(split, sphere, cyc.frame, opts).value[0];
  const double lo = period(split, restrict_patch(sphere, 0, 1, 0, 0.4), cyc.frame, opts).value[0];
  const double hi = period(split, restrict_patch(sphere, 0, 1, 0.4, 1), cyc.frame, opts).value[0];
  CHECK(std::fabs(lo + hi - whole) <= 2 * opts.quad.rel_tol * std::fabs(whole));
  const double rev = period(split, reverse_patch(sphere), cyc.frame, opts).value[0];
  CHECK(std::fabs(rev + whole) <= 2 * opts.quad.rel_tol * std::fabs(whole));
}

TEST_CASE("g-monodromy decides constructed rational and irrational spheres") {
  const CartanModel ek = extremal_kahler_model();
  const Splitting split(ek);
  for (auto [p, q] : {std::pair{1, 2}, {2, 3}, {3, 5}}) {
    const double c2 = ek::parameters_for_ratio(1.0, static_cast<double>(p) / q);
    const LeafCycles cyc = ek::sphere_cycles(ek::cubic_profile(1.0, c2));
    const MonodromyReport rep = g_monodromy(split, cyc);
    CHECK(rep.g_splitting);
    CHECK(rep.discrete == Verdict::yes);
    CHECK(rep.integrable == Verdict::yes);
    REQUIRE(rep.rationality);
    CHECK(rep.rationality->p == p);
    CHECK(rep.rationality->q == q);
    // N is contained in N^G.
    const MonodromyReport plain = monodromy(split, cyc);
    REQUIRE(plain.generators.size() == 1);
    CHECK(plain.generators[0].value == rep.generators[0].value);
    CHECK(plain.discrete == Verdict::yes);
  }
  const double c2 = ek::parameters_for_ratio(1.0, (std::sqrt(5.0) - 1) / 2);
  const MonodromyReport irr = g_monodromy(split, ek::sphere_cycles(ek::cubic_profile(1.0, c2)));
  CHECK(irr.discrete == Verdict::no);
  CHECK(irr.integrable == Verdict::no);
  CHECK(irr.rationality->kind == Rationality::irrational);
}

TEST_CASE("g-monodromy is undecided without a g-splitting along the orbit") {
  const CartanModel ek = extremal_kahler_model();
  const Splitting split(ek);
  const ek::CubicProfile prof = ek::cubic_profile(1.0, 0.0);
  LeafCycles cyc = ek::sphere_cycles(prof);
  cyc.orbit_point = ek::leaf_point(prof, 1.0, 0.0);  // U != 0 here
  const MonodromyReport rep = g_monodromy(split, cyc);
  CHECK_FALSE(rep.g_splitting);
  CHECK(rep.discrete == Verdict::undecided);
  CHECK(rep.integrable == Verdict::undecided);
}

TEST_CASE("planes and cylinders have trivial monodromy") {
  const CartanModel ek = extremal_kahler_model();
  const Splitting split(ek);
  const LeafCycles cyc = ek::trivial_cycles("cylinder", "pi_2 = 1");
  CHECK(monodromy(split, cyc).integrable == Verdict::yes);
  const MonodromyReport g = g_monodromy(split, cyc);
  CHECK(g.integrable == Verdict::yes);
  CHECK(g.generators.empty());
}
