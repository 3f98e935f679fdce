#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sstream>

#include "fixtures.hpp"
#include "hsa/campaign.hpp"
#include "hsa/rates.hpp"

using namespace hsa;

namespace {

RateTuple measure(const SystemShape& shape, uint32_t q) {
  const SystemParams params(shape, q);
  const MdsMatrix alpha = find_t_private_mds(shape).matrix;
  const KeyMaterial km = deal_keys(params, 77, alpha);
  Rng rng(3);
  const Transcript t =
      run_session(km, random_inputs(params, rng), full_survival(shape));
  return measured_rates(params, t);
}

}  // namespace

TEST_CASE("rational normalization and rendering") {
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(3, 3).str() == "1");
  CHECK(Rational(1, 2).str() == "1/2");
  CHECK(Rational(1, 2) < Rational(2, 3));
  CHECK_THROWS_AS(Rational(1, 0), InvalidOperand);
}

TEST_CASE("region for the no-collusion shape") {
  const RateRegion r = rate_region(fixtures::tiny());
  CHECK(r.feasible);
  CHECK(r.rx1_min == Rational(1));
  CHECK(r.ry1_min == Rational(1));
  CHECK(r.rx2_min == Rational(1, 2));
  CHECK(r.rx2_corner == Rational(1, 2));
  CHECK(r.ry2_lower == Rational(1, 2));
  CHECK(r.ry2_upper == Rational(1, 2));
  CHECK(r.ry2_tight);
}

TEST_CASE("region for the collusion-resilient shape") {
  const RateRegion r = rate_region(fixtures::medium());
  CHECK(r.feasible);
  CHECK(r.rx2_min == Rational(1, 2));
  CHECK(r.rx2_corner == Rational(1));  // the aggregate corner reading
  CHECK(r.ry2_lower == Rational(1));
  CHECK(r.ry2_upper == Rational(1));
  CHECK(r.ry2_tight);
}

TEST_CASE("infeasible shapes get an empty region") {
  const RateRegion r = rate_region({2, 3, 1, 2, 2});  // U0*V0 = 2 <= T = 2
  CHECK_FALSE(r.feasible);
}

TEST_CASE("bound tightness iff the floor divides the threshold") {
  for (int u0 = 1; u0 <= 4; ++u0) {
    for (int v0 = 1; v0 <= 4; ++v0) {
      for (int t = 0; t < u0 * v0; ++t) {
        const SystemShape s{u0 + 1, v0 + 1, u0, v0, t};
        const RateRegion r = rate_region(s);
        REQUIRE(r.feasible);
        CHECK(r.ry2_tight == (t % v0 == 0));
        CHECK((r.ry2_lower < r.ry2_upper || r.ry2_tight));
      }
    }
  }
}

TEST_CASE("measured rates match the worked examples exactly") {
  const RateTuple tiny = measure(fixtures::tiny(), fixtures::kTinyModulus);
  CHECK(tiny.round1_user == Rational(1));
  CHECK(tiny.round1_relay == Rational(1));
  CHECK(tiny.round2_user == Rational(1, 2));
  CHECK(tiny.round2_relay == Rational(1, 2));

  const RateTuple med = measure(fixtures::medium(), fixtures::kMediumModulus);
  CHECK(med.round2_user == Rational(1, 2));
  CHECK(med.round2_relay == Rational(1));
}

TEST_CASE("comparison report flags achievement and impossibilities") {
  const RateTuple med = measure(fixtures::medium(), fixtures::kMediumModulus);
  const RateCompareReport rep = compare_rates(med, fixtures::medium());
  CHECK(rep.achieves_scheme_rates);
  CHECK(rep.ry2_meets_upper);
  CHECK_FALSE(rep.converse_violated);
  // The two second-round user-rate readings differ here, so a note appears.
  bool noted = false;
  for (const auto& n : rep.notes) noted |= n.find("readings differ") != std::string::npos;
  CHECK(noted);

  RateTuple impossible = med;
  impossible.round2_relay = Rational(1, 3);  // below the converse bound
  CHECK(compare_rates(impossible, fixtures::medium()).converse_violated);
}

TEST_CASE("rate report renders exact rationals") {
  const RateCompareReport rep = compare_rates(
      measure(fixtures::tiny(), fixtures::kTinyModulus), fixtures::tiny());
  std::stringstream ss;
  write_rate_report(ss, rep);
  const std::string text = ss.str();
  CHECK(text.find("rx2=1/2") != std::string::npos);
  CHECK(text.find("ry2_tight=true") != std::string::npos);
  CHECK(text.find("converse_violated=false") != std::string::npos);
}
