// Copyright 2026 The OxPure Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <catch2/catch_amalgamated.hpp>

#include <oxpure/oracle.hpp>
#include <oxpure/protocols.hpp>
#include <oxpure/published.hpp>
#include <oxpure/sampling.hpp>
#include <oxpure/verify.hpp>

#include <array>
#include <cmath>
#include <stdexcept>

using namespace oxpure;
using Catch::Matchers::WithinAbs;

namespace {

void check_weights(const BellWeights& got, const BellWeights& want, double tol) {
  CHECK_THAT(got.A, WithinAbs(want.A, tol));
  CHECK_THAT(got.B, WithinAbs(want.B, tol));
  CHECK_THAT(got.C, WithinAbs(want.C, tol));
  CHECK_THAT(got.D, WithinAbs(want.D, tol));
}

double weight_gap(const BellWeights& a, const BellWeights& b) {
  return std::max({std::abs(a.A - b.A), std::abs(a.B - b.B), std::abs(a.C - b.C),
                   std::abs(a.D - b.D)});
}

}  // namespace

TEST_CASE("coincidence map on the benchmark state", "[protocols]") {
  const CorrelationVector c{0.36, 0.36, 0.36};
  const auto [out, p] = cnot_coincidence_map(c, c);
  CHECK_THAT(p, WithinAbs(0.5648, 1e-15));
  CHECK_THAT(out.cz, WithinAbs(0.72 / 1.1296, 1e-15));
  CHECK_THAT(out.cx, WithinAbs(2 * 0.1296 / 1.1296, 1e-15));
  CHECK_THAT(out.cy, WithinAbs(2 * 0.1296 / 1.1296, 1e-15));
  CHECK_THROWS_AS(
      cnot_coincidence_map(CorrelationVector{0, 0, 1}, CorrelationVector{0, 0, -1}),
      std::runtime_error);
}

TEST_CASE("fixed-rotation round on the benchmark state", "[protocols]") {
  const StepOutcome s = ox1_step(werner(0.52));
  check_weights(s.state,
                BellWeights{0.52407932011331448, 0.090651558073654381,
                            0.090651558073654381, 0.29461756373937681},
                1e-15);
  CHECK_THAT(s.probability, WithinAbs(0.56479999999999997, 1e-15));
  REQUIRE(s.rotations_applied.size() == 1);
  CHECK(s.rotations_applied[0] == RotationAxis::kX);
}

TEST_CASE("adaptive round chooses rotations as frozen", "[protocols]") {
  const StepOutcome first = ox2_step(werner(0.52));
  CHECK(first.rotations_applied.empty());
  const StepOutcome second = ox2_step(first.state);
  REQUIRE(second.rotations_applied.size() == 1);
  CHECK(second.rotations_applied[0] == RotationAxis::kX);
}

TEST_CASE("fixed and adaptive rounds coincide on equal-correlation states",
          "[protocols]") {
  // With all three correlation components equal, the adaptive reordering is
  // the identity and the fixed x rotation swaps two equal components, so the
  // two recurrences follow the same trajectory.  They stay together only up
  // to rounding: once the first two correlation components split by an ulp,
  // the branch choices differ and the arithmetic orders diverge.
  for (const double f : {0.3, 0.52, 0.7, 0.9}) {
    BellWeights a = werner(f);
    BellWeights b = werner(f);
    for (int round = 0; round < 12; ++round) {
      a = ox1_step(a).state;
      b = ox2_step(b).state;
      CHECK(weight_gap(a, b) < 1e-13);
    }
  }
}

TEST_CASE("benchmark trajectory of the two-pair protocols", "[protocols]") {
  constexpr std::array<std::array<double, 2>, 9> kTable = {{
      {0.52407932011331448, 0.56479999999999997},
      {0.53745521079515135, 0.52632634881910612},
      {0.5554256769201994, 0.53860966492075713},
      {0.57471686134890954, 0.56226478967901261},
      {0.61166827605925189, 0.55242500657153715},
      {0.66010912454328141, 0.57790827842972869},
      {0.72194236870854922, 0.61159465970225624},
      {0.80966197501580284, 0.64667579379162987},
      {0.89362610594584924, 0.73480401234945669},
  }};
  BellWeights w = werner(0.52);
  for (const auto& row : kTable) {
    const StepOutcome s = ox2_step(w);
    CHECK_THAT(s.state.A, WithinAbs(row[0], 1e-14));
    CHECK_THAT(s.probability, WithinAbs(row[1], 1e-14));
    w = s.state;
  }
}

TEST_CASE("benchmark trajectory of the three-pair protocol", "[protocols]") {
  constexpr std::array<std::array<double, 5>, 4> kTable = {{
      {0.53024911032028477, 0.11387900355871887, 0.24199288256227755,
       0.11387900355871887, 0.15286400000000003},
      {0.53738360277836761, 0.062118960235372625, 0.33837847675088717,
       0.062118960235372625, 0.16121912249936804},
      {0.52833732194498306, 0.018097842769877828, 0.43546699251526133,
       0.018097842769877828, 0.18672724131192445},
      {0.50776948714934012, 0.0013915706640311341, 0.48944737152259754,
       0.0013915706640311341, 0.22684918485156635},
  }};
  BellWeights w = werner(0.52);
  for (const auto& row : kTable) {
    const StepOutcome s = ox3_step(w);
    check_weights(s.state, BellWeights{row[0], row[1], row[2], row[3]}, 1e-14);
    CHECK_THAT(s.probability, WithinAbs(row[4], 1e-14));
    CHECK(s.rotations_applied.empty());
    // The map preserves equality of the two odd components exactly.
    CHECK(s.state.B == s.state.D);
    w = s.state;
  }
  // The trajectory peaks at round 2 and then decays.
  CHECK(kTable[1][0] > kTable[0][0]);
  CHECK(kTable[2][0] < kTable[1][0]);
}

TEST_CASE("heterogeneous three-pair round", "[protocols]") {
  const BellWeights w1 = werner(0.52);
  const BellWeights w2 = werner(0.6);
  const BellWeights w3 = werner(0.7);
  const StepOutcome s = ox3_step_hetero(w1, w2, w3);
  check_weights(s.state,
                BellWeights{0.6939252336448597, 0.06074766355140189,
                            0.18457943925233647, 0.06074766355140189},
                1e-14);
  CHECK_THAT(s.probability, WithinAbs(0.17119999999999999, 1e-14));

  // Symmetric in the first two arguments, bitwise.
  const StepOutcome t = ox3_step_hetero(w2, w1, w3);
  CHECK(weight_gap(s.state, t.state) == 0.0);
  CHECK(s.probability == t.probability);

  // The homogeneous entry point is the same map.
  const StepOutcome u = ox3_step_hetero(w1, w1, w1);
  const StepOutcome v = ox3_step(w1);
  CHECK(weight_gap(u.state, v.state) == 0.0);
  CHECK(u.probability == v.probability);
}

TEST_CASE("protocol fixed points", "[protocols]") {
  for (const ProtocolId id : {ProtocolId::kOx1, ProtocolId::kOx2, ProtocolId::kOx3}) {
    const StepOutcome top = protocol_step(id, phi_plus());
    CHECK(weight_gap(top.state, phi_plus()) < 1e-15);
    const StepOutcome mixed = protocol_step(id, maximally_mixed());
    CHECK(weight_gap(mixed.state, maximally_mixed()) < 1e-15);
  }
  CHECK_THAT(protocol_step(ProtocolId::kOx1, phi_plus()).probability,
             WithinAbs(1.0, 1e-15));
  CHECK_THAT(protocol_step(ProtocolId::kOx3, phi_plus()).probability,
             WithinAbs(0.5, 1e-15));
  CHECK_THAT(protocol_step(ProtocolId::kOx1, maximally_mixed()).probability,
             WithinAbs(0.5, 1e-15));
  CHECK_THAT(protocol_step(ProtocolId::kOx3, maximally_mixed()).probability,
             WithinAbs(0.125, 1e-15));
}

TEST_CASE("protocol metadata", "[protocols]") {
  CHECK(protocol_name(ProtocolId::kOx1) == std::string("ox1"));
  CHECK(protocol_from_name("ox3") == ProtocolId::kOx3);
  CHECK_THROWS_AS(protocol_from_name("ox4"), std::invalid_argument);
  CHECK(pairs_per_round(ProtocolId::kOx1) == 2);
  CHECK(pairs_per_round(ProtocolId::kOx2) == 2);
  CHECK(pairs_per_round(ProtocolId::kOx3) == 3);
  CHECK_THROWS_AS(ox1_step(BellWeights{0.5, 0.2, 0.1, 0.1}), std::invalid_argument);
}

TEST_CASE("recurrences match the density-matrix oracle", "[protocols][oracle]") {
  // Spot equivalence on a handful of states; the full sweep with the
  // negative control runs in the verification harness below.
  Rng rng(101);
  for (int i = 0; i < 10; ++i) {
    const BellWeights w = sample_weights(rng);
    const StepOutcome closed = ox2_step(w);
    const oracle::OracleStep dm = oracle::ox2_step(w);
    CHECK(weight_gap(closed.state, dm.state) < 1e-9);
    CHECK(std::abs(closed.probability - dm.probability) < 1e-9);
    REQUIRE(closed.rotations_applied.size() == dm.rotations.size());
    for (std::size_t k = 0; k < dm.rotations.size(); ++k) {
      CHECK(closed.rotations_applied[k] == dm.rotations[k]);
    }

    const StepOutcome closed3 = ox3_step(w);
    const oracle::OracleStep dm3 = oracle::ox3_step(w);
    CHECK(weight_gap(closed3.state, dm3.state) < 1e-9);
    CHECK(std::abs(closed3.probability - dm3.probability) < 1e-9);
    CHECK(dm3.bell_residual < 1e-9);
  }

  verify::Options opt;
  opt.samples = 25;
  opt.hetero_samples = 6;
  const verify::Result r = verify::run_verification(opt);
  CHECK(r.max_deviation() <= opt.tolerance);
  CHECK(r.rotations_all_match());
  CHECK(r.corrupted_detected());
  CHECK(r.ok());
}

TEST_CASE("published correlation rows disagree with the inverse map",
          "[protocols][published]") {
  const BellWeights w{0.4, 0.3, 0.2, 0.1};
  const CorrelationVector truth = to_correlations(w);
  const CorrelationVector printed = published::correlation_map_as_printed(w);
  CHECK(printed.cx == truth.cx);  // first row is correct
  CHECK_THAT(printed.cy, WithinAbs(-0.2, 1e-15));
  CHECK_THAT(truth.cy, WithinAbs(0.4, 1e-15));
  CHECK_THAT(printed.cz, WithinAbs(0.4, 1e-15));
  CHECK_THAT(truth.cz, WithinAbs(0.0, 1e-15));
}

TEST_CASE("published two-pair expressions", "[protocols][published]") {
  const CorrelationVector c{0.36, 0.36, 0.36};
  CHECK_THAT(published::two_pair_success(c), WithinAbs(0.5648, 1e-15));
  CHECK_THAT(published::two_pair_success_adaptive(c), WithinAbs(0.5648, 1e-15));

  // The printed output fidelity divides by 4P where the map needs 8P, so it
  // is exactly twice the true value and exceeds 1 here.
  const double printed = published::two_pair_fidelity_as_printed(c);
  CHECK_THAT(printed, WithinAbs(1.0481586402266287, 1e-13));
  const double truth = ox1_step(werner(0.52)).state.A;
  CHECK_THAT(printed / truth, WithinAbs(2.0, 1e-12));
  CHECK(printed > 1.0);
}

TEST_CASE("published three-pair expressions", "[protocols][published]") {
  const BellWeights w = werner(0.52);

  const double p_true = published::three_pair_success_true(w);
  const double p_printed = published::three_pair_success_as_printed(w);
  CHECK_THAT(p_true, WithinAbs(0.152864, 1e-14));
  CHECK_THAT(p_printed, WithinAbs(0.169504, 1e-13));
  CHECK_THAT(ox3_step(w).probability, WithinAbs(p_true, 1e-15));

  // At the maximally mixed state the printed polynomial gives 7/64, the map 1/8.
  CHECK_THAT(published::three_pair_success_as_printed(maximally_mixed()),
             WithinAbs(0.109375, 1e-15));
  CHECK_THAT(published::three_pair_success_true(maximally_mixed()),
             WithinAbs(0.125, 1e-15));

  CHECK_THAT(published::three_pair_fidelity_as_printed(w),
             WithinAbs(0.478195204832924, 5e-14));

  // The printed components are normalized by the defective polynomial and do
  // not sum to one.
  const std::array<double, 4> printed = published::three_pair_weights_as_printed(w);
  const double sum = printed[0] + printed[1] + printed[2] + printed[3];
  CHECK_THAT(sum, WithinAbs(0.9018312252218238, 1e-12));
  CHECK(std::abs(sum - 1.0) > 0.05);

  // Multiplying the printed components back by their printed normalizer
  // recovers the raw numerators.  At a Werner input the single defective term
  // in the third numerator vanishes (it is proportional to the gap between
  // the last two weights), so all four numerators match the oracle here.
  const StepOutcome s = ox3_step(w);
  for (int i = 0; i < 4; ++i) {
    const double got = printed[i] * p_printed;
    const double want = to_array(s.state)[i] * s.probability;
    CHECK_THAT(got, WithinAbs(want, 1e-15));
  }

  // A state with distinct last two weights exposes the defective term: the
  // printed third numerator is off by half of A squared times their gap,
  // while the other numerators stay exact.
  const BellWeights skew{0.4, 0.3, 0.2, 0.1};
  const StepOutcome t = ox3_step(skew);
  const std::array<double, 4> skew_printed =
      published::three_pair_weights_as_printed(skew);
  const double p_skew = published::three_pair_success_as_printed(skew);
  const std::array<double, 4> truth = to_array(t.state);
  CHECK_THAT(skew_printed[0] * p_skew, WithinAbs(truth[0] * t.probability, 1e-15));
  CHECK_THAT(skew_printed[1] * p_skew, WithinAbs(truth[1] * t.probability, 1e-15));
  CHECK_THAT(skew_printed[3] * p_skew, WithinAbs(truth[3] * t.probability, 1e-15));
  CHECK_THAT(skew_printed[2] * p_skew - truth[2] * t.probability,
             WithinAbs(0.5 * 0.4 * 0.4 * (0.1 - 0.2), 1e-13));
}

TEST_CASE("published heterogeneous three-pair expressions",
          "[protocols][published]") {
  const BellWeights w1 = werner(0.52);
  const BellWeights w2 = werner(0.6);
  const BellWeights w3 = werner(0.7);

  const double p_printed = published::three_pair_success_hetero_as_printed(w1, w2, w3);
  const double f_printed = published::three_pair_fidelity_hetero_as_printed(w1, w2, w3);
  CHECK_THAT(p_printed, WithinAbs(0.192, 1e-14));
  CHECK_THAT(f_printed, WithinAbs(0.61875, 1e-13));

  // The printed fidelity numerator is exact: printed F times printed P equals
  // true F times true P.
  const StepOutcome s = ox3_step_hetero(w1, w2, w3);
  CHECK_THAT(f_printed * p_printed, WithinAbs(s.state.A * s.probability, 1e-14));

  // The homogeneous and heterogeneous printed polynomials carry independent
  // defects: the heterogeneous one does not specialize to the homogeneous one.
  const double homo_at_triple =
      published::three_pair_success_hetero_as_printed(w1, w1, w1);
  CHECK(std::abs(homo_at_triple - published::three_pair_success_as_printed(w1)) >
        0.01);
}

TEST_CASE("published comparison rows are frozen", "[protocols][published]") {
  const auto& rows = published::comparison_rows();
  CHECK(rows[0].protocol == std::string("ox1"));
  CHECK(rows[0].final_fidelity == 0.853);
  CHECK(rows[0].rounds == 9);
  CHECK(rows[0].pairs == 256.0);
  CHECK(rows[1].protocol == std::string("ox2"));
  CHECK(rows[1].final_fidelity == 0.805);
  CHECK(rows[1].rounds == 8);
  CHECK(rows[1].pairs == 128.0);
  CHECK(rows[2].protocol == std::string("ox3"));
  CHECK(rows[2].final_fidelity == 0.843);
  CHECK(rows[2].rounds == 3);
  CHECK(rows[2].pairs == 9.0);
  CHECK(published::kInitialWernerFidelity == 0.52);
  CHECK(published::kTargetFidelity == 0.8);
}
