#include <doctest.h>

#include "beamsim/mobility.hpp"
#include "oracles.hpp"

#include <cmath>
#include <numeric>

using namespace beamsim;

namespace {

MobilityConfig with(double alpha, double beta, double x_max = 0.0) {
  MobilityConfig c;
  c.alpha = alpha;
  c.beta = beta;
  c.x_max = x_max;
  return c;
}

std::vector<double> draws(const JumpLaw& law, int n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> out(static_cast<std::size_t>(n));
  for (double& x : out) x = sample_jump(rng, law);
  return out;
}

double ccdf_at(const std::vector<double>& xs, double x) {
  return static_cast<double>(std::count_if(xs.begin(), xs.end(), [&](double v) { return v > x; })) /
         static_cast<double>(xs.size());
}

}  // namespace

TEST_CASE("config validation") {
  CHECK_THROWS_AS(JumpLaw(with(1.0, 300)), std::invalid_argument);
  CHECK_THROWS_AS(JumpLaw(with(0.5, 300)), std::invalid_argument);
  CHECK_THROWS_AS(JumpLaw(with(1.6, 0)), std::invalid_argument);
  CHECK_THROWS_AS(JumpLaw(with(1.6, 300, 0.5)), std::invalid_argument);
  CHECK(with(1.6, 300).effective_x_max() == doctest::Approx(std::hypot(500.0, 500.0)));
  CHECK(with(1.6, 20).effective_x_max() == doctest::Approx(200.0));
}

TEST_CASE("pdf support and clamping") {
  const JumpLaw law(with(1.6, 300));
  CHECK(jump_pdf(law.x_max() + 1.0, law) == 0.0);
  CHECK(jump_pdf(0.3, law) == jump_pdf(1.0, law));
  CHECK(jump_pdf(0.0, law) == jump_pdf(1.0, law));
  CHECK_THROWS_AS(jump_pdf(-1.0, law), std::invalid_argument);
}

TEST_CASE("pdf ratio matches the kernel formula") {
  const JumpLaw law(with(1.6, 300));
  const double expected = (std::pow(10.0, -1.6) * std::exp(-10.0 / 300.0)) /
                          (std::pow(100.0, -1.6) * std::exp(-100.0 / 300.0));
  CHECK(jump_pdf(10, law) / jump_pdf(100, law) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("density integrates to one across the parameter grid") {
  for (double alpha : {1.2, 1.4, 1.6, 1.8, 2.0})
    for (double beta : {50.0, 100.0, 300.0, 500.0}) {
      const JumpLaw law(with(alpha, beta));
      const double mass =
          oracle::simpson_log([&](double x) { return jump_pdf(x, law); }, 1.0, law.x_max(), 40000);
      CAPTURE(alpha);
      CAPTURE(beta);
      CHECK(std::abs(mass - 1.0) < 1e-6);
    }
}

TEST_CASE("samples follow the CDF (KS)") {
  const JumpLaw law(with(1.6, 300));
  const oracle::PowerLawCdf ref(1.6, 300, law.x_max());
  const auto xs = draws(law, 100000, 7);
  for (double x : xs) {
    REQUIRE(x >= 1.0);
    REQUIRE(x <= law.x_max());
  }
  CHECK(oracle::ks_statistic(xs, ref) < 0.01);
  // Library CDF against the independent table.
  for (double x : {1.5, 3.0, 10.0, 50.0, 200.0, 600.0})
    CHECK(law.cdf(x) == doctest::Approx(ref(x)).epsilon(1e-5));
}

TEST_CASE("larger cutoff gives heavier tail") {
  const auto lo = draws(JumpLaw(with(1.6, 100)), 100000, 11);
  const auto hi = draws(JumpLaw(with(1.6, 500)), 100000, 11);
  CHECK(ccdf_at(hi, 200.0) > ccdf_at(lo, 200.0));
}

TEST_CASE("larger exponent gives shorter jumps") {
  const auto a12 = draws(JumpLaw(with(1.2, 300)), 100000, 13);
  const auto a20 = draws(JumpLaw(with(2.0, 300)), 100000, 13);
  const auto mean = [](const std::vector<double>& v) {
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
  };
  CHECK(mean(a20) < mean(a12));
}

TEST_CASE("reflection geometry") {
  const MobilityConfig cfg;
  const Position p = displace({0.5, 250}, 10.0, kPi, cfg);
  CHECK(p.x() == doctest::Approx(9.5));
  CHECK(p.y() == doctest::Approx(250));
  const Position q = displace({250, 250}, 1.0, 0.5 * kPi, cfg);
  CHECK((q - Position(250, 251)).norm() == doctest::Approx(0.0).epsilon(1e-12));
  // Multiple bounces stay inside.
  const Position w = displace({10, 10}, 1234.5, 0.3, cfg);
  CHECK(w.x() >= 0.0);
  CHECK(w.x() <= 500.0);
  CHECK(w.y() >= 0.0);
  CHECK(w.y() <= 500.0);
  CHECK(reflect_into(-3.0, 10.0) == doctest::Approx(3.0));
  CHECK(reflect_into(23.0, 10.0) == doctest::Approx(3.0));
  CHECK(reflect_into(10.0, 10.0) == doctest::Approx(10.0));
}

TEST_CASE("step keeps nodes inside and is reproducible") {
  const JumpLaw law(with(1.4, 500));
  Rng a(99), b(99);
  Positions pa = scatter(200, a, law.config());
  Positions pb = scatter(200, b, law.config());
  for (int t = 0; t < 200; ++t) {
    pa = step(pa, a, law);
    pb = step(pb, b, law);
    REQUIRE((pa.row(0).array() >= 0.0).all());
    REQUIRE((pa.row(0).array() <= 500.0).all());
    REQUIRE((pa.row(1).array() >= 0.0).all());
    REQUIRE((pa.row(1).array() <= 500.0).all());
  }
  CHECK((pa.array() == pb.array()).all());
}

TEST_CASE("displacements reproduce the jump law away from walls") {
  const JumpLaw law(with(1.6, 20, 200));
  Rng rng(5);
  Positions centre(2, 1);
  centre.col(0) = Position(250, 250);
  std::vector<double> moved;
  for (int i = 0; i < 10000; ++i)
    moved.push_back((step(centre, rng, law).col(0) - centre.col(0)).norm());
  CHECK(oracle::ks_two_sample(moved, draws(law, 10000, 6)) < 0.025);
  const oracle::PowerLawCdf ref(1.6, 20, 200);
  CHECK(oracle::ks_statistic(moved, ref) < 0.02);
}

TEST_CASE("jump lengths are exchangeable across node indices") {
  const JumpLaw law(with(1.6, 20, 200));
  const oracle::PowerLawCdf ref(1.6, 20, 200);
  Rng rng(17);
  constexpr int nodes = 8, steps = 4000;
  Positions p(2, nodes);
  for (int i = 0; i < nodes; ++i) p.col(i) = Position(250, 250);
  std::vector<std::vector<double>> per(nodes);
  for (int t = 0; t < steps; ++t) {
    const Positions q = step(p, rng, law);
    for (int i = 0; i < nodes; ++i) per[i].push_back((q.col(i) - p.col(i)).norm());
  }
  // Asymptotic KS critical value at the 0.1% level: 1.95 / sqrt(n).
  const double crit = 1.95 / std::sqrt(double(steps));
  for (int i = 0; i < nodes; ++i) CHECK(oracle::ks_statistic(per[i], ref) < crit);
}
