#include <cmath>
#include <random>

#include "barscan/forward_model.hpp"
#include "barscan/normal.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace barscan;

TEST_CASE("standard normal CDF against quadrature") {
  CHECK(std_normal_cdf(0.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(std_normal_cdf(1.959963985) == doctest::Approx(0.975).epsilon(1e-9));
  const double c = 1.0 / std::sqrt(2.0 * std::numbers::pi);
  for (double x : {-3.0, -0.7, 0.3, 1.1, 2.5}) {
    const double q = 0.5 + (x >= 0 ? 1 : -1) *
                               oracle::integrate([&](double s) { return c * std::exp(-0.5 * s * s); },
                                                 0.0, std::abs(x));
    CHECK(std::abs(std_normal_cdf(x) - q) < 1e-12);
  }
}

TEST_CASE("normal mass keeps precision far in the tails") {
  // P(8 < Z < 9) is about 6.2e-16 and would vanish under a plain CDF difference.
  const double tail = std_normal_mass(8.0, 9.0);
  const double ref = 0.5 * (std::erfc(8.0 / std::sqrt(2.0)) - std::erfc(9.0 / std::sqrt(2.0)));
  CHECK(tail == doctest::Approx(ref).epsilon(1e-10));
  CHECK(std_normal_mass(-9.0, -8.0) == doctest::Approx(ref).epsilon(1e-10));
  CHECK(std_normal_mass(-1.0, 1.0) == doctest::Approx(0.6826894921370859).epsilon(1e-13));
}

TEST_CASE("sample grid uses bar midpoints") {
  const SampleGrid g = make_grid(4);
  CHECK(g.size() == 380);
  CHECK(g.time(0) == doctest::Approx(0.125));
  CHECK(g.time(379) == doctest::Approx(94.875));
  CHECK_THROWS_AS(make_grid(0), std::domain_error);
}

TEST_CASE("block row ranges partition the grid") {
  for (int r : {1, 3, 10}) {
    const SampleGrid g = make_grid(r);
    std::size_t next = 0;
    for (std::size_t b = 0; b < kBlockCount; ++b) {
      const RowRange rows = block_rows(g, b);
      CHECK(rows.begin == next);
      CHECK(rows.size() == kBlocks[b].bar_count * static_cast<std::size_t>(r));
      next = rows.end;
    }
    CHECK(next == g.size());
  }
}

TEST_CASE("blur entries match direct integration of the beam") {
  std::mt19937 gen(3);
  for (double sigma : {0.2, 0.45, 1.0}) {
    const SampleGrid g = make_grid(7);
    const BlurMatrix G = blur_matrix(sigma, g);
    std::uniform_int_distribution<std::size_t> row(0, g.size() - 1);
    for (int n = 0; n < 40; ++n) {
      const std::size_t i = row(gen);
      const auto near_bar = static_cast<std::size_t>(std::floor(g.time(i)));
      for (std::size_t j = near_bar > 3 ? near_bar - 3 : 0; j < std::min<std::size_t>(95, near_bar + 4); ++j) {
        CHECK(std::abs(G(i, j) - oracle::blur_weight(g.time(i), j, sigma)) < 1e-10);
      }
    }
  }
}

TEST_CASE("interior blur rows sum to one") {
  const SampleGrid g = make_grid(10);
  const BlurMatrix G = blur_matrix(0.75, g);
  for (std::size_t i = 100; i < g.size() - 100; ++i) {
    double s = 0;
    for (double v : G.row(i)) s += v;
    CHECK(std::abs(s - 1.0) < 1e-12);
  }
}

TEST_CASE("indicator matrix selects the bar under each sample") {
  const SampleGrid g = make_grid(3);
  const BlurMatrix G = make_blur(0.0, g);
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (std::size_t j = 0; j < kBarCount; ++j) CHECK(G(i, j) == (j == i / 3 ? 1.0 : 0.0));
  }
  CHECK_THROWS_AS(blur_matrix(0.0, g), std::domain_error);
}

TEST_CASE("forward map equals alpha G D applied in either order") {
  const SampleGrid g = make_grid(6);
  const GaussianParams params{0.6, 0.8};
  const ForwardMap P = forward_map(params, g);
  const BlurMatrix G = make_blur(params.sigma, g);
  std::mt19937 gen(21);
  for (int n = 0; n < 20; ++n) {
    const auto ds = oracle::to_digit_string(oracle::random_digit_array(gen));
    const SparseCode x = digits_to_x(ds);
    const auto px = P.apply(x);
    const auto gdx = G.apply(dictionary().apply(x));
    for (std::size_t i = 0; i < px.size(); ++i) CHECK(std::abs(px[i] - params.alpha * gdx[i]) < 1e-12);
  }
}

TEST_CASE("forward map columns are blurred dictionary columns") {
  const SampleGrid g = make_grid(5);
  const ForwardMap P = forward_map({0.4, 1.5}, g);
  const BlurMatrix G = make_blur(0.4, g);
  const Dictionary& D = dictionary();
  for (std::size_t c : {0u, 7u, 33u, 61u, 90u, 122u}) {
    for (std::size_t i = 0; i < P.rows(); i += 13) {
      double ref = 0;
      for (std::size_t j = 0; j < kBarCount; ++j) ref += G(i, j) * D(j, c);
      CHECK(P(i, c) == doctest::Approx(1.5 * ref).epsilon(1e-12));
    }
  }
  const ForwardMap Q = P.with_alpha(3.0);
  CHECK(Q(40, 12) == doctest::Approx(2.0 * P(40, 12)));
}

TEST_CASE("clean synthesis matches a direct sum of normal masses") {
  const auto digits = DigitString::parse("036000291452");
  const std::string bars = encode_digits(digits).to_string();
  const double sigma = 0.55, alpha = 0.7;
  const int r = 4;
  const ScanSignal s = synthesize_clean(digits, {sigma, alpha}, make_grid(r));
  REQUIRE(s.size() == 95u * r);
  CHECK(s.oversampling == r);
  CHECK(s.provenance.digits == digits);
  CHECK(*s.provenance.sigma == sigma);
  const double sq2 = std::sqrt(2.0);
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double t = oracle::sample_time(i, r);
    double ref = 0;
    for (std::size_t j = 0; j < 95; ++j) {
      if (bars[j] == '1') {
        ref += 0.5 * (std::erf((t - j) / (sigma * sq2)) - std::erf((t - j - 1) / (sigma * sq2)));
      }
    }
    CHECK(std::abs(s.samples[i] - alpha * ref) < 1e-12);
  }
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS((GaussianParams{-0.1, 1.0}.validate()), std::domain_error);
  CHECK_THROWS_AS((GaussianParams{0.1, 0.0}.validate()), std::domain_error);
  CHECK_THROWS_AS((GaussianParams{std::nan(""), 1.0}.validate()), std::domain_error);
  CHECK_NOTHROW((GaussianParams{0.0, 1.0}.validate()));
}
