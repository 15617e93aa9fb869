#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "lacelab/gaussian.hpp"
#include "lacelab/io.hpp"
#include "lacelab/measure.hpp"
#include "lacelab/walks.hpp"

using namespace lacelab;

namespace {

// Random finitely supported rational measure; when `negation_symmetric`,
// the support is closed under x -> -x with equal weights.
SignedMeasure<Rational> random_measure(std::mt19937& rng, int dim, bool negation_symmetric) {
  std::uniform_int_distribution<int> coord(-3, 3), weight(-3, 3), count(1, 4);
  SignedMeasure<Rational> m(dim);
  const int points = count(rng);
  for (int i = 0; i < points; ++i) {
    Point p(dim);
    for (int k = 0; k < dim; ++k) p[k] = coord(rng);
    Rational w(weight(rng));
    m.add(p, w);
    if (negation_symmetric) m.add(p.negated(), w);
  }
  return m;
}

// Orbit-closed measure: every point is added together with its full
// hyperoctahedral orbit at the same weight.
SignedMeasure<Rational> random_symmetric_measure(std::mt19937& rng, int dim) {
  std::uniform_int_distribution<int> coord(-2, 2), weight(1, 3), count(1, 3);
  SignedMeasure<Rational> m(dim);
  const auto gens = symmetry_generators(dim);
  const int points = count(rng);
  for (int i = 0; i < points; ++i) {
    Point p(dim);
    for (int k = 0; k < dim; ++k) p[k] = coord(rng);
    Rational w(weight(rng));
    // close the orbit by breadth-first application of the generators
    std::vector<Point> orbit{p};
    for (std::size_t head = 0; head < orbit.size(); ++head) {
      for (const auto& g : gens) {
        Point q = g.apply(orbit[head]);
        bool seen = false;
        for (const auto& o : orbit) seen = seen || o == q;
        if (!seen) orbit.push_back(q);
      }
    }
    for (const auto& q : orbit) m.add(q, w);
  }
  return m;
}

}  // namespace

TEST_CASE("delta is the convolution identity") {
  std::mt19937 rng(1);
  for (int i = 0; i < 20; ++i) {
    const int dim = 1 + static_cast<int>(rng() % 3);
    auto h = random_measure(rng, dim, false);
    CHECK(convolve(SignedMeasure<Rational>::delta(dim), h) == h);
  }
}

TEST_CASE("D * D in d=1 is the two-step law") {
  auto d1 = step_distribution<Rational>(1);
  auto dd = convolve(d1, d1);
  CHECK(dd.at(Point{-2}) == Rational(1, 4));
  CHECK(dd.at(Point{0}) == Rational(1, 2));
  CHECK(dd.at(Point{2}) == Rational(1, 4));
  CHECK(dd.size() == 3);
}

TEST_CASE("total mass of (2d D)^{*n} is (2d)^n") {
  for (int dim : {1, 2, 3}) {
    auto step = step_distribution<Rational>(dim).scaled(Rational(2L * dim));
    auto walk = convolve_power(step, 4);
    CHECK(walk.mass() == pow(Rational(2L * dim), 4));
  }
}

TEST_CASE("convolution is commutative and associative (exact)") {
  std::mt19937 rng(2);
  for (int i = 0; i < 30; ++i) {
    const int dim = 1 + static_cast<int>(rng() % 3);
    auto g = random_measure(rng, dim, false);
    auto h = random_measure(rng, dim, false);
    auto k = random_measure(rng, dim, false);
    CHECK(convolve(g, h) == convolve(h, g));
    CHECK(convolve(convolve(g, h), k) == convolve(g, convolve(h, k)));
  }
}

TEST_CASE("mass and second moment of a folding") {
  std::mt19937 rng(3);
  for (int i = 0; i < 30; ++i) {
    const int dim = 1 + static_cast<int>(rng() % 3);
    auto g = random_measure(rng, dim, true);
    auto h = random_measure(rng, dim, true);
    auto gh = convolve(g, h);
    const auto [gm, gb] = g.mass_and_moment();
    const auto [hm, hb] = h.mass_and_moment();
    CHECK(gh.mass() == gm * hm);
    // centered (negation-symmetric) inputs: moment(G*H) = gb h + g hb
    CHECK(gh.second_moment() == gb * hm + gm * hb);
  }
}

TEST_CASE("symmetric inputs give symmetric convolutions") {
  std::mt19937 rng(4);
  for (int i = 0; i < 15; ++i) {
    const int dim = 1 + static_cast<int>(rng() % 3);
    auto g = random_symmetric_measure(rng, dim);
    auto h = random_symmetric_measure(rng, dim);
    REQUIRE(g.is_symmetric());
    CHECK(convolve(g, h).is_symmetric());
  }
}

TEST_CASE("mass and moment basics") {
  auto delta = SignedMeasure<Rational>::delta(3);
  CHECK(delta.mass() == Rational(1));
  CHECK(delta.second_moment() == Rational(0));
  auto d2 = step_distribution<Rational>(2);  // 4 points at distance 1, weight 1/4
  const auto [g, gbar] = d2.mass_and_moment();
  CHECK(g == Rational(1));
  CHECK(gbar == Rational(1));
}

TEST_CASE("parity composition under folding") {
  auto d2 = step_distribution<Rational>(2);  // odd
  REQUIRE(d2.parity() == Parity::kOdd);
  REQUIRE(d2.parity_consistent());
  auto even = convolve(d2, d2);
  CHECK(even.parity() == Parity::kEven);
  CHECK(even.parity_consistent());
  auto odd = convolve(even, d2);
  CHECK(odd.parity() == Parity::kOdd);
  CHECK(odd.parity_consistent());
}

TEST_CASE("no explicit zeros are stored") {
  SignedMeasure<Rational> m(2);
  m.add(Point{1, 0}, Rational(3));
  m.add(Point{1, 0}, Rational(-3));
  CHECK(m.empty());
  auto g = step_distribution<Rational>(1);
  auto cancel = convolve(g, g.negated());  // (D * -D): no exact zeros arise, just sign
  for (const auto& [k, v] : cancel.entries()) CHECK(!v.is_zero());
}

TEST_CASE("gaussian density closed forms") {
  CHECK(gaussian_density(1, 1.0, origin(1)) ==
        doctest::Approx(1.0 / std::sqrt(2.0 * std::numbers::pi)));
  CHECK(gaussian_density(2, 2.0, origin(2)) == doctest::Approx(1.0 / (4.0 * std::numbers::pi)));
  // radius default covers 6 sigma
  CHECK(default_gaussian_radius(1.0, 1) == 6);
  auto m = gaussian_measure(GaussianSpec{1.0, 1, 8});
  CHECK(m.at(Point{0}) == doctest::Approx(0.3989422804));
  CHECK(m.size() == 17);
}

TEST_CASE("discretization sums: bounded, factorized, continuum limit") {
  // d=1, eta=1/2: direct summation oracle over an explicit window
  double direct0 = 0.0, direct2 = 0.0;
  for (long k = -60; k <= 60; ++k) {
    const double phi = gaussian_density(1, 0.5, static_cast<double>(k) * k);
    direct0 += phi;
    direct2 += k * k * phi;
  }
  auto sums = gaussian_1d_sums(0.5);
  CHECK(sums.converged);
  CHECK(sums.sum0 == doctest::Approx(direct0).epsilon(1e-12));
  CHECK(sums.sum2 == doctest::Approx(direct2).epsilon(1e-12));

  // d=2 factorization vs a brute-force two-dimensional sum
  double brute = 0.0, brute2 = 0.0;
  for (long x = -40; x <= 40; ++x)
    for (long y = -40; y <= 40; ++y) {
      const double phi = gaussian_density(2, 1.0, static_cast<double>(x * x + y * y));
      brute += phi;
      brute2 += (x * x + y * y) * phi;
    }
  auto rep = check_gaussian_sums(2, {1.0});
  CHECK(rep.rows[0].sum_phi == doctest::Approx(brute).epsilon(1e-10));
  CHECK(rep.rows[0].sum_x2_phi == doctest::Approx(brute2).epsilon(1e-10));

  // boundary of the lemma's hypothesis, d=5
  auto edge = check_gaussian_sums(5, {0.1, 1.0, 4.0});
  CHECK(edge.all_converged);
  CHECK(std::isfinite(edge.empirical_constant));

  // continuum limit: large eta makes the Riemann sum approach 1
  auto big = check_gaussian_sums(1, {400.0});
  CHECK(big.rows[0].sum_phi == doctest::Approx(1.0).epsilon(1e-6));

  // a starved radius cap is reported as non-convergent
  auto starved = gaussian_1d_sums(400.0, 1e-12, /*radius_cap=*/3);
  CHECK(!starved.converged);
}

TEST_CASE("folding ratio: near 1 in the continuum regime, finite at the edge") {
  auto easy = check_folding(1, 1.0, 1.0, 8);
  CHECK(easy.max_ratio == doctest::Approx(1.0).epsilon(0.05));
  auto edge = check_folding(2, 0.25, 0.25, 10);
  CHECK(std::isfinite(edge.max_ratio));
  CHECK(edge.max_ratio < 100.0);
  // Gaussian semigroup anchor: with large variances the discrete folding
  // approaches the continuous one, which is exact.
  auto cont = check_folding(1, 30.0, 50.0, 10);
  CHECK(cont.max_ratio == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("measure JSON round trip") {
  std::mt19937 rng(5);
  for (int i = 0; i < 10; ++i) {
    auto m = random_measure(rng, 2, false);
    auto back = measure_from_json_exact(measure_to_json(m));
    CHECK(back == m);
    auto md = to_double_measure(m);
    auto backd = measure_from_json_double(measure_to_json(md));
    CHECK(backd == md);
  }
}

TEST_CASE("packing guards against out-of-range coordinates") {
  Point p{4000};
  CHECK_THROWS_AS(pack_point(p), std::out_of_range);
}
