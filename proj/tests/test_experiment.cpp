#include <sstream>

#include "barscan/experiment.hpp"
#include "doctest.h"

using namespace barscan;

namespace {

PhaseDiagramSpec small_spec() {
  PhaseDiagramSpec spec;
  spec.sigma = 0.45;
  spec.r = 5;
  spec.sigma_hats = {0.45, 1.5};
  spec.axis = NoiseAxis::absolute;
  spec.levels = {0.0, 0.3};
  spec.trials = 8;
  spec.seed = 2024;
  return spec;
}

std::string csv_of(const PhaseDiagramResult& r) {
  std::ostringstream out;
  write_csv(out, r);
  return out.str();
}

std::string pgm_of(const PhaseDiagramResult& r) {
  std::ostringstream out;
  write_pgm(out, r);
  return out.str();
}

}  // namespace

TEST_CASE("gray levels") {
  CHECK(probability_to_gray(1.0) == 0);
  CHECK(probability_to_gray(0.0) == 255);
  CHECK(probability_to_gray(0.5) == 128);
}

TEST_CASE("csv and pgm layout on a 2x2 grid") {
  PhaseDiagramResult r;
  r.spec = small_spec();
  r.cells = {PhaseCell{10, 10, 120}, PhaseCell{0, 10, 30}, PhaseCell{5, 10, 100}, PhaseCell{8, 10, 110}};
  CHECK(csv_of(r) ==
        "sigma_hat,axis2,successes,trials,probability,digit_accuracy\n"
        "0.45,0,10,10,1.000000,1.000000\n"
        "0.45,0.3,0,10,0.000000,0.250000\n"
        "1.5,0,5,10,0.500000,0.833333\n"
        "1.5,0.3,8,10,0.800000,0.916667\n");
  const std::string pgm = pgm_of(r);
  const std::string header = "P5\n2 2\n255\n";
  REQUIRE(pgm.size() == header.size() + 4);
  CHECK(pgm.substr(0, header.size()) == header);
  // row 0 is the first noise level, columns run over sigma_hat
  CHECK(static_cast<unsigned char>(pgm[header.size() + 0]) == 0);
  CHECK(static_cast<unsigned char>(pgm[header.size() + 1]) == 128);
  CHECK(static_cast<unsigned char>(pgm[header.size() + 2]) == 255);
  CHECK(static_cast<unsigned char>(pgm[header.size() + 3]) == 51);
}

TEST_CASE("runs are deterministic across worker counts") {
  const auto spec = small_spec();
  const auto a = run_phase_diagram(spec, 1);
  const auto b = run_phase_diagram(spec, 1);
  const auto c = run_phase_diagram(spec, 4);
  CHECK(csv_of(a) == csv_of(b));
  CHECK(csv_of(a) == csv_of(c));
  CHECK(pgm_of(a) == pgm_of(c));
  CHECK(a.cell(0, 0).probability() == 1.0);
  CHECK(a.cell(1, 0).successes < a.cell(0, 0).successes);

  auto other = spec;
  other.seed = 2025;
  other.levels = {0.3};
  other.sigma_hats = {0.6};
  auto again = other;
  CHECK(csv_of(run_phase_diagram(other, 2)) == csv_of(run_phase_diagram(again, 3)));
}

TEST_CASE("relative axis with estimated amplitude") {
  auto spec = small_spec();
  spec.axis = NoiseAxis::relative;
  spec.levels = {0.05};
  spec.sigma_hats = {0.45};
  spec.alpha = 0.5;
  spec.estimate_alpha = true;
  const auto res = run_phase_diagram(spec, 1);
  CHECK(res.cell(0, 0).probability() == 1.0);
}

TEST_CASE("spec validation") {
  auto spec = small_spec();
  spec.trials = 0;
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
  spec = small_spec();
  spec.levels = {};
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
  spec = small_spec();
  spec.sigma_hats = {0.5, 0.2};
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
}

TEST_CASE("range parsing") {
  CHECK(parse_range("0.5") == std::vector<double>{0.5});
  const auto v = parse_range("0:1:0.25");
  REQUIRE(v.size() == 5);
  CHECK(v.back() == doctest::Approx(1.0));
  CHECK(parse_range("0.1:0.3:0.1").size() == 3);
  CHECK_THROWS_AS(parse_range("0:1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_range("1:0:0.1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_range("0:1:0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_range("a:1:0.1"), std::invalid_argument);
}
