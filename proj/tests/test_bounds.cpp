#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "revtri/bounds.hpp"
#include "revtri/errors.hpp"
#include "support.hpp"

using namespace revtri;
using oracle::C;

namespace {

const double kR2 = std::sqrt(2.0);
const C kRot = C(1, 1) / kR2;  // e^{iπ/4}

VectorFamily fam(std::initializer_list<Vector> xs) { return VectorFamily(std::vector<Vector>(xs)); }

double margin_of(const HypothesisReport& h, std::size_t k, const std::string& id) {
  for (const auto& m : h.margins) {
    if (m.vector_index == k && m.condition_id == id) return m.margin;
  }
  FAIL("missing margin " << id << " for vector " << k);
  return 0;
}

}  // namespace

TEST_CASE("theorem ids round-trip through their names") {
  for (TheoremId id : kAllTheorems) CHECK(parse_theorem_id(to_string(id)) == id);
  CHECK_THROWS_AS(parse_theorem_id("thm99"), InputError);
}

TEST_CASE("dm examples") {
  const Vector a{1, 0};
  auto self = dm_certificate(fam({a}), a, 1.0);
  CHECK(self.hypothesis.satisfied);
  CHECK(self.bound == 1.0);

  auto vacuous = dm_certificate(fam({Vector{C(0, 2), 0}, Vector{1, C(0, 5)}}), a, 0.0);
  CHECK(vacuous.hypothesis.satisfied);
  CHECK(vacuous.bound == 0.0);

  auto r = dm_certificate(fam({Vector{1, 0}, Vector{0.6, 0.8}}), a, 0.6);
  CHECK(r.hypothesis.satisfied);
  CHECK(r.bound == 0.6);
  CHECK(margin_of(r.hypothesis, 1, "re_cos") == doctest::Approx(0.0).epsilon(1e-15));

  CHECK_THROWS_AS(dm_certificate(fam({a}), Vector{2, 0}, 0.5), InputError);
  CHECK_THROWS_AS(dm_certificate(fam({Vector(2)}), a, 0.5), DegenerateInputError);
  CHECK_THROWS_AS(dm_certificate(fam({a}), a, -0.1), InputError);
}

TEST_CASE("thm1 examples") {
  const Vector a{1};
  auto trivial = thm1_certificate(fam({Vector{C(-3, 1)}, Vector{C(0, 0)}}), a, 0, 0);
  CHECK(trivial.hypothesis.satisfied);
  CHECK(trivial.bound == 0.0);

  auto eq = thm1_certificate(fam({Vector{C(0.6, 0.8)}}), a, 0.6, 0.8);
  CHECK(eq.hypothesis.satisfied);
  CHECK(eq.bound == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(std::abs(margin_of(eq.hypothesis, 0, "re_r1")) < 1e-15);
  CHECK(std::abs(margin_of(eq.hypothesis, 0, "im_r2")) < 1e-15);

  const Vector a2{1, 0};
  auto xs = fam({Vector{1, 0}, Vector{0.6, 0.8}});
  auto t1 = thm1_certificate(xs, a2, 0.6, 0);
  auto dm = dm_certificate(xs, a2, 0.6);
  CHECK(t1.hypothesis.satisfied);
  CHECK(t1.bound == dm.bound);

  CHECK_THROWS_AS(thm1_certificate(xs, a2, 1.5, 0), InputError);
}

TEST_CASE("thm1 with negative coefficients constrains the opposite half-plane") {
  const Vector a{1};
  CHECK(thm1_certificate(fam({Vector{C(-0.6, -0.8)}}), a, -0.6, -0.8).hypothesis.satisfied);
  CHECK_FALSE(thm1_certificate(fam({Vector{C(0.6, 0.8)}}), a, -0.6, 0).hypothesis.satisfied);
}

TEST_CASE("alpha_from_radius examples") {
  CHECK(alpha_from_radius(std::vector<double>{1}, 1.0) == 0.5);
  const std::vector<double> norms{1, 2};
  CHECK(alpha_from_radius(norms, 0.5) == std::min(1.75 / 2, 4.75 / 4));
  CHECK(alpha_from_radius(norms, 0.5) == 0.875);
  CHECK(alpha_from_radius(std::vector<double>{1}, 1e-9) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("alpha_from_radius names the violated bound") {
  const std::vector<double> norms{1};
  try {
    alpha_from_radius(norms, 0.0);
    FAIL("expected input error");
  } catch (const InputError& e) {
    CHECK(std::string(e.what()).find("lower bound") != std::string::npos);
  }
  try {
    alpha_from_radius(norms, 1.5);
    FAIL("expected input error");
  } catch (const InputError& e) {
    CHECK(std::string(e.what()).find("upper bound") != std::string::npos);
  }
}

TEST_CASE("thm2 rotated single vector") {
  const Vector a{1};
  auto r = thm2_certificate(fam({Vector{kRot}}), a, 0.8, 0.8);
  CHECK(r.hypothesis.satisfied);
  const double dist = oracle::norm({kRot - 1.0});
  CHECK(dist == doctest::Approx(std::sqrt(2 - kR2)).epsilon(1e-15));
  CHECK(margin_of(r.hypothesis, 0, "ball_a") == doctest::Approx(0.8 - dist).epsilon(1e-12));
  CHECK(*r.constants.alpha1 == doctest::Approx(0.68).epsilon(1e-15));
  CHECK(*r.constants.alpha2 == doctest::Approx(0.68).epsilon(1e-15));
  CHECK(std::abs(r.bound - 0.68 * kR2) <= 1e-12);
}

TEST_CASE("thm2 collinear pair") {
  const Vector a{1};
  auto r = thm2_certificate(fam({Vector{kRot}, Vector{1.2 * kRot}}), a, 0.9, 0.9);
  CHECK(r.hypothesis.satisfied);
  const double want = oracle::alpha_p({1, 1.2}, 0.9);
  CHECK(want == doctest::Approx(0.595).epsilon(1e-12));
  CHECK(*r.constants.alpha1 == doctest::Approx(want).epsilon(1e-15));
  CHECK(r.bound == doctest::Approx(want * kR2).epsilon(1e-14));
  CHECK(r.bound == doctest::Approx(0.8414).epsilon(1e-4));
}

TEST_CASE("thm2 forced failure reports the negative margin") {
  auto r = thm2_certificate(fam({Vector{kRot}, Vector{1}}), Vector{1}, 0.5, 1.0);
  CHECK_FALSE(r.hypothesis.satisfied);
  CHECK(margin_of(r.hypothesis, 0, "ball_a") < 0);
  CHECK(margin_of(r.hypothesis, 1, "ball_a") > 0);
}

TEST_CASE("cor3 examples") {
  const Vector a{1};
  auto r = cor3_certificate(fam({Vector{kRot}}), a);
  CHECK(r.hypothesis.satisfied);
  CHECK(r.bound == doctest::Approx(1 / kR2).epsilon(1e-15));
  auto via_thm2 = thm2_certificate(fam({Vector{kRot}}), a, 1, 1);
  CHECK(*via_thm2.constants.alpha1 == 0.5);
  CHECK(std::abs(via_thm2.bound - r.bound) <= 1e-12);

  CHECK_FALSE(cor3_certificate(fam({Vector{C(2.5, 0)}}), a).hypothesis.satisfied);
}

TEST_CASE("thm4 examples") {
  const Vector a{C(0.6, 0), C(0, 0.8)};
  auto r = thm4_certificate(fam({a}), a, 0.5);
  CHECK(r.hypothesis.satisfied);
  CHECK(r.bound == 0.875);

  auto just_below = thm4_certificate(fam({Vector{C(1.3, 0), 0}}), Vector{1, 0}, 0.3 - 1e-6);
  CHECK_FALSE(just_below.hypothesis.satisfied);
}

TEST_CASE("thm4 is the real part of thm2") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 200; ++i) {
    const auto xs = support::gaussian_family(1 + rng() % 4, 3, rng);
    const auto f = support::random_frame(3, 1, rng);
    const double p = support::uniform(rng, 0.05, 1.0);
    const double q = support::uniform(rng, 0.05, 1.0);
    auto t4 = thm4_certificate(xs, f[0], p);
    auto t2 = thm2_certificate(xs, f[0], p, q);
    REQUIRE(t4.bound == *t2.constants.alpha1);
    REQUIRE(t4.hypothesis.margins[0].margin == t2.hypothesis.margins[0].margin);
  }
}

TEST_CASE("thm5 examples") {
  const auto frame = support::standard_frame(2, 2);
  const Vector x{C(0.5, 0.5), C(0.5, 0.5)};
  auto r = thm5_certificate(fam({x}), frame, std::vector<double>{0.5, 0.5}, std::vector<double>{0.5, 0.5});
  CHECK(r.hypothesis.satisfied);
  CHECK(r.hypothesis.margins.size() == 4);
  for (const auto& m : r.hypothesis.margins) CHECK(std::abs(m.margin) < 1e-15);
  CHECK(r.bound == 1.0);

  auto zero = thm5_certificate(fam({x}), frame, std::vector<double>{0, 0}, std::vector<double>{0, 0});
  CHECK(zero.hypothesis.satisfied);
  CHECK(zero.bound == 0.0);

  CHECK_THROWS_AS(thm5_certificate(fam({x}), frame, std::vector<double>{0.5}, std::vector<double>{0.5, 0.5}),
                  InputError);
}

TEST_CASE("cor6 examples") {
  const auto frame = support::standard_frame(2, 2);
  auto r = cor6_certificate(fam({Vector{0.6, 0.8}}), frame, std::vector<double>{0.6, 0.8});
  CHECK(r.hypothesis.satisfied);
  CHECK(r.bound == doctest::Approx(1.0).epsilon(1e-15));
  for (const auto& m : r.hypothesis.margins) CHECK(std::abs(m.margin) < 1e-15);

  auto zero = cor6_certificate(fam({Vector{0.6, 0.8}}), frame, std::vector<double>{0, 0});
  CHECK(zero.bound == 0.0);

  const auto one = support::standard_frame(2, 1);
  auto xs = fam({Vector{1, 0}, Vector{0.6, 0.8}});
  CHECK(cor6_certificate(xs, one, std::vector<double>{0.6}).bound == dm_certificate(xs, one[0], 0.6).bound);
}

TEST_CASE("thm7 near-boundary example: all four ball conditions fail by 0.05") {
  // ‖x - e_1‖² = |-0.5 + 0.5i|² + |0.5 + 0.5i|² = 1, so every distance is exactly 1.
  const auto frame = support::standard_frame(2, 2);
  const Vector x{C(0.5, 0.5), C(0.5, 0.5)};
  const oracle::Vec xo = support::coords(x);
  for (std::size_t t = 0; t < 2; ++t) {
    const oracle::Vec e = support::coords(frame[t]);
    CHECK(oracle::norm(oracle::sub(xo, e)) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(oracle::norm(oracle::sub(xo, oracle::scale(C(0, 1), e))) == doctest::Approx(1.0).epsilon(1e-15));
  }
  const std::vector<double> pq{0.95, 0.95};
  auto r = thm7_certificate(fam({x}), frame, pq, pq);
  CHECK_FALSE(r.hypothesis.satisfied);
  REQUIRE(r.hypothesis.margins.size() == 4);
  for (const auto& m : r.hypothesis.margins) CHECK(m.margin == doctest::Approx(-0.05).epsilon(1e-12));
  for (double v : r.constants.alpha_t) CHECK(v == doctest::Approx(0.54875).epsilon(1e-14));
  CHECK(r.bound == doctest::Approx(1.0975).epsilon(1e-14));
}

TEST_CASE("thm7 forced failure on a q_t below every distance") {
  const auto frame = support::standard_frame(2, 2);
  const Vector x{C(0.5, 0.5), C(0.5, 0.5)};
  auto r = thm7_certificate(fam({x}), frame, std::vector<double>{1.1, 1.1}, std::vector<double>{1.1, 0.5});
  CHECK_FALSE(r.hypothesis.satisfied);
  CHECK(margin_of(r.hypothesis, 0, "ball_ia[1]") == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK(margin_of(r.hypothesis, 0, "ball_ia[0]") > 0);
}

TEST_CASE("cor8 examples") {
  const auto frame = support::standard_frame(2, 2);
  const Vector x{C(0.5, 0.5), C(0.5, 0.5)};
  auto r = cor8_certificate(fam({x}), frame);
  CHECK(r.hypothesis.satisfied);
  for (const auto& m : r.hypothesis.margins) CHECK(std::abs(m.margin) < 1e-15);
  CHECK(r.bound == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(*r.constants.alpha <= std::sqrt(2.0 / 2) + 1e-9);
}

TEST_CASE("cor9 examples") {
  const Vector a{1};
  auto unit = cor9_strict_check(fam({Vector{kRot}}), a, 1, 1);
  CHECK(unit.applicable);
  CHECK(unit.strict_bound == 0.0);

  auto rot = cor9_strict_check(fam({Vector{kRot}}), a, 0.8, 0.8);
  CHECK(rot.applicable);
  CHECK(std::abs(rot.strict_bound - std::sqrt(0.72)) <= 1e-12);

  CHECK_THROWS_AS(cor9_strict_check(fam({Vector{kRot}}), a, 1.2, 0.8), InputError);
}

TEST_CASE("cor9 is applicable for every p in (0,1) on unit norms") {
  for (int i = 1; i < 1000; ++i) {
    const double p = i / 1000.0;
    const double alpha = (2 - p * p) / 2;
    REQUIRE(alpha > std::sqrt(1 - p * p));
    auto s = cor9_strict_check(fam({Vector{kRot}}), Vector{1}, p, p);
    REQUIRE(s.applicable == (std::abs(alpha - std::sqrt(1 - p * p)) > kDefaultTolerance));
  }
}

TEST_CASE("thm10 examples") {
  const Vector a{1};
  auto degenerate = thm10_certificate(fam({Vector{3}}), a, 3, 3, 1, 2);
  CHECK(*degenerate.constants.alpha_mM == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(margin_of(degenerate.hypothesis, 0, "ball_mM") == 0.0);

  const Vector x{C(1.1, 1.1)};
  auto r = thm10_certificate(fam({x}), a, 0.1, 3, 0.1, 3);
  CHECK(r.hypothesis.satisfied);
  const double dist = std::abs(C(1.1, 1.1) - 1.55);
  CHECK(dist == doctest::Approx(std::sqrt(0.2025 + 1.21)).epsilon(1e-14));
  CHECK(margin_of(r.hypothesis, 0, "ball_mM") == doctest::Approx(1.45 - dist).epsilon(1e-12));
  const double want = oracle::alpha_interval({1.1 * kR2}, 0.1, 3);
  CHECK(std::abs(*r.constants.alpha_mM - want) <= 1e-9);
  CHECK(std::abs(*r.constants.alpha_lL - want) <= 1e-9);
  CHECK(want == doctest::Approx(0.5640).epsilon(1e-3));
  CHECK(std::abs(r.bound - want * kR2) <= 1e-9);
  CHECK(r.bound == doctest::Approx(0.7977).epsilon(1e-3));

  CHECK_THROWS_AS(thm10_certificate(fam({x}), a, 3, 0.1, 0.1, 3), InputError);
  CHECK_THROWS_AS(thm10_certificate(fam({x}), a, 0, 3, 0.1, 3), InputError);
}

TEST_CASE("thm11 examples") {
  const Vector a{1};
  auto r = thm11_strict_check(fam({Vector{C(1.1, 1.1)}}), a, 0.1, 3, 0.1, 3);
  CHECK(r.applicable);
  CHECK(oracle::am_gm_floor(0.1, 3) == doctest::Approx(0.3533).epsilon(1e-3));
  CHECK(std::abs(r.strict_bound - 2 * std::sqrt(2 * 0.3 / (3.1 * 3.1))) <= 1e-12);
  CHECK(r.strict_bound == doctest::Approx(0.4996).epsilon(1e-3));

  // ‖x‖² = mM = ℓL: both AM-GM floors are attained.
  const double n = std::sqrt(0.3);
  const C x = n * std::polar(1.0, std::numbers::pi / 4);
  auto tie = thm11_strict_check(fam({Vector{x}}), a, 0.1, 3, 0.1, 3);
  CHECK_FALSE(tie.applicable);
}

TEST_CASE("product form and ball form of the interval hypothesis agree") {
  std::mt19937_64 rng(8);
  int checked = 0;
  for (int i = 0; i < 20000; ++i) {
    const std::size_t d = 1 + rng() % 4;
    const auto f = support::random_frame(d, 1, rng);
    const double m = support::uniform(rng, 0.05, 2);
    const double M = m + support::uniform(rng, 0, 3);
    const Vector x = support::uniform(rng, 0.1, 3) * gaussian_vector(d, rng);
    const double product = interval_product_form(x, f[0], m, M);
    // Oracle: R² − ‖x − c·a‖² with c = (m+M)/2, R = (M−m)/2.
    const auto xo = support::coords(x);
    const auto ao = support::coords(f[0]);
    const double dist = oracle::norm(oracle::sub(xo, oracle::scale((m + M) / 2, ao)));
    const double ball = (M - m) / 2 - dist;
    const double expanded = ((M - m) / 2) * ((M - m) / 2) - dist * dist;
    REQUIRE(product == doctest::Approx(expanded).epsilon(1e-9).scale(std::max(1.0, M * M)));
    if (std::abs(ball) > 1e-9) {
      REQUIRE((product >= 0) == (ball >= 0));
      ++checked;
    }
  }
  CHECK(checked > 19000);
}

TEST_CASE("property: refinement sqrt(alpha1^2 + alpha2^2) >= sqrt(2 - p1^2 - p2^2)") {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 20000; ++i) {
    std::vector<double> norms(1 + rng() % 5);
    for (auto& n : norms) n = std::pow(10.0, support::uniform(rng, -2, 1.5));
    const double p1 = support::uniform(rng, 1e-6, 1.0);
    const double p2 = support::uniform(rng, 1e-6, 1.0);
    const double a1 = alpha_from_radius(norms, p1);
    const double a2 = alpha_from_radius(norms, p2);
    REQUIRE(std::sqrt(a1 * a1 + a2 * a2) >= std::sqrt(2 - p1 * p1 - p2 * p2) - 1e-12);
    REQUIRE(a1 >= std::sqrt(1 - p1 * p1) - 1e-12);
  }
}

TEST_CASE("property: interval constants dominate their AM-GM floor") {
  std::mt19937_64 rng(22);
  for (int i = 0; i < 20000; ++i) {
    std::vector<double> norms(1 + rng() % 5);
    for (auto& n : norms) n = support::uniform(rng, 1e-6, 10);
    const double m = support::uniform(rng, 1e-3, 5);
    const double M = m + support::uniform(rng, 0, 5);
    REQUIRE(oracle::alpha_interval(norms, m, M) >= oracle::am_gm_floor(m, M) - 1e-12);
  }
}

TEST_CASE("property: alpha_from_radius is strictly decreasing in p") {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 5000; ++i) {
    std::vector<double> norms(1 + rng() % 4);
    for (auto& n : norms) n = support::uniform(rng, 0.1, 3);
    const double cap = std::sqrt(*std::min_element(norms.begin(), norms.end()) * *std::min_element(norms.begin(), norms.end()) + 1);
    const double p = support::uniform(rng, 0.01, cap * 0.98);
    const double q = p + support::uniform(rng, 1e-6, (cap - p) * 0.99);
    REQUIRE(alpha_from_radius(norms, q) < alpha_from_radius(norms, p));
    REQUIRE(alpha_from_radius(norms, p) == doctest::Approx(oracle::alpha_p(norms, p)).epsilon(1e-14));
  }
}

TEST_CASE("property: dm and thm1 with r2 = 0 agree on satisfaction and bound") {
  std::mt19937_64 rng(24);
  int satisfied = 0;
  for (int i = 0; i < 5000; ++i) {
    const std::size_t d = 1 + rng() % 4;
    const auto f = support::random_frame(d, 1, rng);
    std::vector<Vector> xs;
    for (std::size_t k = 0; k < 1 + rng() % 3; ++k) {
      xs.push_back(gaussian_vector(d, rng) + support::uniform(rng, 0, 3) * f[0]);
    }
    const VectorFamily fam(std::move(xs));
    const double r = support::uniform(rng, 0, 0.9);
    auto dm = dm_certificate(fam, f[0], r);
    auto t1 = thm1_certificate(fam, f[0], r, 0);
    satisfied += dm.hypothesis.satisfied;
    // Boundary draws can land within rounding of the tolerance band; skip those.
    bool near_boundary = false;
    for (const auto& m : dm.hypothesis.margins) near_boundary |= std::abs(m.margin) < 1e-7;
    if (!near_boundary) REQUIRE(dm.hypothesis.satisfied == t1.hypothesis.satisfied);
    REQUIRE(dm.bound == t1.bound);
  }
  CHECK(satisfied > 100);
}

TEST_CASE("one-dimensional inputs use the same code path as embedded scalars") {
  const C z(0.7, 0.6);
  auto scalar = thm2_certificate(fam({Vector{z}}), Vector{1}, 0.9, 0.9);
  auto embedded = thm2_certificate(fam({Vector{z, 0}}), Vector{1, 0}, 0.9, 0.9);
  CHECK(scalar.bound == embedded.bound);
  CHECK(scalar.hypothesis.satisfied == embedded.hypothesis.satisfied);
}

TEST_CASE("zero vectors are rejected by min-formula theorems only") {
  const Vector a{1, 0};
  auto xs = fam({Vector{1, 0}, Vector(2)});
  CHECK_NOTHROW(thm1_certificate(xs, a, 0.5, 0));
  CHECK_NOTHROW(thm5_certificate(xs, support::standard_frame(2, 1), std::vector<double>{0.5}, std::vector<double>{0}));
  CHECK_THROWS_AS(thm2_certificate(xs, a, 1, 1), DegenerateInputError);
  CHECK_THROWS_AS(cor3_certificate(xs, a), DegenerateInputError);
  CHECK_THROWS_AS(thm4_certificate(xs, a, 1), DegenerateInputError);
  CHECK_THROWS_AS(thm10_certificate(xs, a, 1, 2, 1, 2), DegenerateInputError);
}
