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

#include <oxpure/campaign.hpp>

#include <json.hpp>

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

using namespace oxpure;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

std::vector<std::string> split_lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  std::string line;
  while (std::getline(is, line)) out.push_back(line);
  return out;
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream is(line);
  while (std::getline(is, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.push_back("");
  return out;
}

}  // namespace

TEST_CASE("benchmark run reaches the target in eight rounds", "[campaign]") {
  const Trajectory t = run_to_target(ProtocolId::kOx1, werner(0.52), 0.8);
  CHECK(t.status == RunStatus::kConverged);
  REQUIRE(t.rounds.size() == 8);
  CHECK_THAT(t.final_fidelity, WithinAbs(0.80966197501580284, 1e-14));
  CHECK(t.rounds.back().pairs_paper == 128.0);
  CHECK(t.rounds.back().pairs_tree == 256.0);
  CHECK_THAT(t.rounds.back().pairs_expected, WithinRel(22521.255646807214, 1e-12));

  for (std::size_t i = 0; i < t.rounds.size(); ++i) {
    CHECK(t.rounds[i].index == static_cast<int>(i) + 1);
    if (i > 0) CHECK(t.rounds[i].fidelity > t.rounds[i - 1].fidelity);
  }

  CHECK(consumed_pairs(t, AccountingModel::kPaper) == 128.0);
  CHECK(consumed_pairs(t, AccountingModel::kTree) == 256.0);
  CHECK_THAT(consumed_pairs(t, AccountingModel::kExpected),
             WithinRel(22521.255646807214, 1e-12));
}

TEST_CASE("accounting models are ordered on every round", "[campaign]") {
  for (const ProtocolId id : {ProtocolId::kOx1, ProtocolId::kOx3}) {
    for (const double f : {0.52, 0.75, 0.9}) {
      const Trajectory t = run_to_target(id, werner(f), 0.99, 16);
      for (const RoundRecord& r : t.rounds) {
        CHECK(r.pairs_expected >= r.pairs_tree);
        CHECK(r.pairs_tree >= r.pairs_paper);
        CHECK(r.pairs_paper >= 1.0);
      }
    }
  }
}

TEST_CASE("geometric accounting grows by one factor per extra round", "[campaign]") {
  const Trajectory t = run_to_target(ProtocolId::kOx3, werner(0.52), 2.0, 5);
  REQUIRE(t.rounds.size() == 5);
  CHECK(t.rounds[0].pairs_paper == 1.0);
  CHECK(t.rounds[0].pairs_tree == 3.0);
  for (std::size_t i = 1; i < t.rounds.size(); ++i) {
    CHECK(t.rounds[i].pairs_paper == 3.0 * t.rounds[i - 1].pairs_paper);
    CHECK(t.rounds[i].pairs_tree == 3.0 * t.rounds[i - 1].pairs_tree);
  }
}

TEST_CASE("stationary inputs are detected as fixed points", "[campaign]") {
  const Trajectory mixed = run_to_target(ProtocolId::kOx1, maximally_mixed(), 0.8);
  CHECK(mixed.status == RunStatus::kFixedPoint);
  CHECK(mixed.rounds.size() == 1);
  CHECK(mixed.final_fidelity == 0.25);

  const Trajectory top = run_to_target(ProtocolId::kOx2, phi_plus(), 0.8);
  CHECK(top.status == RunStatus::kConverged);
  CHECK(top.rounds.size() == 1);
  CHECK(top.final_fidelity == 1.0);
  CHECK(top.rounds.back().pairs_paper == 1.0);
}

TEST_CASE("three-pair benchmark run decays to the stationary line", "[campaign]") {
  const Trajectory t = run_to_target(ProtocolId::kOx3, werner(0.52), 0.8);
  CHECK(t.status == RunStatus::kFixedPoint);
  REQUIRE(t.rounds.size() == 9);
  CHECK_THAT(t.final_fidelity, WithinAbs(0.5, 1e-12));
  // Peak at round 2, first decrease at round 3.
  CHECK(t.rounds[1].fidelity > t.rounds[0].fidelity);
  CHECK(t.rounds[2].fidelity < t.rounds[1].fidelity);
  CHECK_THAT(t.rounds[2].fidelity, WithinAbs(0.52833732194498306, 1e-14));

  const Trajectory capped = run_to_target(ProtocolId::kOx3, werner(0.52), 0.8, 4);
  CHECK(capped.status == RunStatus::kMaxRoundsReached);
  CHECK(capped.rounds.size() == 4);
}

TEST_CASE("unit target converges exactly for the two-pair protocols", "[campaign]") {
  // In double precision the two-pair recurrence lands on fidelity 1.0
  // exactly once the lesser weights underflow the last bit.
  const Trajectory t = run_to_target(ProtocolId::kOx1, werner(0.52), 1.0, 64);
  CHECK(t.status == RunStatus::kConverged);
  CHECK(t.rounds.size() == 17);
  CHECK(t.final_fidelity == 1.0);

  const Trajectory t3 = run_to_target(ProtocolId::kOx3, werner(0.52), 1.0, 20);
  CHECK(t3.status != RunStatus::kConverged);
}

TEST_CASE("input validation in the driver", "[campaign]") {
  CHECK_THROWS_AS(run_to_target(ProtocolId::kOx1, BellWeights{0.5, 0.2, 0.1, 0.1}, 0.8),
                  std::invalid_argument);
  CHECK_THROWS_AS(run_to_target(ProtocolId::kOx1, werner(0.52), 0.8, 0),
                  std::invalid_argument);
  CHECK_THROWS_AS(fidelity_series(werner(0.52), 0), std::invalid_argument);
}

TEST_CASE("three-way comparison", "[campaign]") {
  const CompareResult r = compare(werner(0.52), 0.8);
  CHECK(r.trajectories[0].protocol == ProtocolId::kOx1);
  CHECK(r.trajectories[1].protocol == ProtocolId::kOx2);
  CHECK(r.trajectories[2].protocol == ProtocolId::kOx3);
  CHECK(r.trajectories[0].status == RunStatus::kConverged);
  CHECK(r.trajectories[0].rounds.size() == 8);
  CHECK(r.trajectories[1].rounds.size() == 8);
  CHECK(r.trajectories[2].status == RunStatus::kFixedPoint);
  // The two-pair trajectories coincide on this input.
  CHECK(r.trajectories[0].final_fidelity == r.trajectories[1].final_fidelity);
}

TEST_CASE("fidelity series includes round zero and pads stationary tails",
          "[campaign]") {
  const FidelitySeries s = fidelity_series(werner(0.52), 4);
  REQUIRE(s.fidelity[0].size() == 5);
  REQUIRE(s.fidelity[2].size() == 5);
  CHECK_THAT(s.fidelity[0][0], WithinAbs(0.52, 1e-15));
  CHECK_THAT(s.fidelity[0][1], WithinAbs(0.52407932011331448, 1e-14));
  CHECK_THAT(s.fidelity[0][2], WithinAbs(0.53745521079515135, 1e-14));
  CHECK_THAT(s.fidelity[1][3], WithinAbs(0.5554256769201994, 1e-14));
  CHECK_THAT(s.fidelity[2][1], WithinAbs(0.53024911032028477, 1e-14));
  CHECK_THAT(s.fidelity[2][2], WithinAbs(0.53738360277836761, 1e-14));
  CHECK_THAT(s.fidelity[2][3], WithinAbs(0.52833732194498306, 1e-14));
  // The crossover: the three-pair protocol leads at round 1 only.
  CHECK(s.fidelity[2][1] > s.fidelity[1][1]);
  CHECK(s.fidelity[2][2] < s.fidelity[1][2]);

  const FidelitySeries top = fidelity_series(phi_plus(), 5);
  for (int p = 0; p < 3; ++p) {
    REQUIRE(top.fidelity[p].size() == 6);
    for (const double f : top.fidelity[p]) CHECK(f == 1.0);
  }
}

TEST_CASE("sweep over the frozen grid", "[campaign]") {
  std::vector<SweepPoint> points;
  for (const double f : {0.55, 0.65, 0.75, 0.85, 0.95}) {
    points.push_back({"f" + std::to_string(f), to_correlations(werner(f))});
  }
  const std::vector<SweepCell> cells = sweep(points, 0.8, 64);
  REQUIRE(cells.size() == 15);

  const auto cell = [&](int point, ProtocolId id) -> const SweepCell& {
    return cells[3 * point + static_cast<int>(id)];
  };

  const int ox1_rounds[5] = {6, 3, 2, 1, 1};
  for (int i = 0; i < 5; ++i) {
    CHECK(cell(i, ProtocolId::kOx1).status == RunStatus::kConverged);
    CHECK(cell(i, ProtocolId::kOx1).rounds == ox1_rounds[i]);
    CHECK(cell(i, ProtocolId::kOx2).status == RunStatus::kConverged);
    CHECK(cell(i, ProtocolId::kOx2).rounds == ox1_rounds[i]);
    CHECK_FALSE(cell(i, ProtocolId::kOx1).skipped);
  }
  // The three-pair protocol only purifies the upper part of this grid.
  CHECK(cell(0, ProtocolId::kOx3).status == RunStatus::kFixedPoint);
  CHECK(cell(0, ProtocolId::kOx3).rounds == 9);
  CHECK(cell(1, ProtocolId::kOx3).status == RunStatus::kFixedPoint);
  CHECK(cell(1, ProtocolId::kOx3).rounds == 12);
  for (int i = 2; i < 5; ++i) {
    CHECK(cell(i, ProtocolId::kOx3).status == RunStatus::kConverged);
    CHECK(cell(i, ProtocolId::kOx3).rounds == 1);
  }

  // Unphysical points stay in the grid, flagged and skipped.
  const std::vector<SweepCell> bad =
      sweep({{"bad", CorrelationVector{0.9, 0.9, -0.9}}}, 0.8, 8);
  REQUIRE(bad.size() == 3);
  for (const SweepCell& c : bad) {
    CHECK(c.skipped);
    CHECK_FALSE(c.physical);
  }
}

TEST_CASE("trajectory csv emission", "[campaign][io]") {
  const Trajectory t = run_to_target(ProtocolId::kOx1, werner(0.52), 0.8);
  std::ostringstream os;
  write_trajectory_csv(os, t);
  const std::vector<std::string> lines = split_lines(os.str());
  REQUIRE(lines.size() == 9);
  CHECK(lines[0] == kTrajectoryCsvHeader);
  CHECK(lines[0] ==
        "round,fidelity,success_probability,pairs_paper,pairs_tree,pairs_expected,"
        "rotations");

  const std::vector<std::string> row = split_fields(lines[1]);
  REQUIRE(row.size() == 7);
  CHECK(row[0] == "1");
  CHECK(std::stod(row[1]) == t.rounds[0].fidelity);
  CHECK(std::stod(row[2]) == t.rounds[0].success_probability);
  CHECK(row[3] == "1");
  CHECK(row[4] == "2");
  CHECK(row[6] == "x");
}

TEST_CASE("comparison csv emission", "[campaign][io]") {
  const CompareResult r = compare(werner(0.52), 0.8);
  std::ostringstream os;
  write_compare_csv(os, r);
  const std::vector<std::string> lines = split_lines(os.str());
  REQUIRE(lines.size() == 1 + 8 + 8 + 9);
  CHECK(lines[0] == std::string("protocol,") + kTrajectoryCsvHeader);
  CHECK(lines[1].rfind("ox1,1,", 0) == 0);
  CHECK(lines[9].rfind("ox2,1,", 0) == 0);
  CHECK(lines[17].rfind("ox3,1,", 0) == 0);
}

TEST_CASE("series and sweep csv emission", "[campaign][io]") {
  const FidelitySeries s = fidelity_series(werner(0.52), 3);
  std::ostringstream os;
  write_series_csv(os, s);
  const std::vector<std::string> lines = split_lines(os.str());
  REQUIRE(lines.size() == 5);
  CHECK(lines[0] == "round,ox1,ox2,ox3");
  CHECK(lines[1].rfind("0,", 0) == 0);

  const std::vector<SweepCell> cells =
      sweep({{"w", to_correlations(werner(0.75))},
             {"bad", CorrelationVector{0.9, 0.9, -0.9}}},
            0.8, 8);
  std::ostringstream ss;
  write_sweep_csv(ss, cells);
  const std::vector<std::string> sweep_lines = split_lines(ss.str());
  REQUIRE(sweep_lines.size() == 7);
  CHECK(sweep_lines[0] ==
        "label,cx,cy,cz,physical,protocol,status,rounds,final_fidelity,pairs_paper,"
        "pairs_tree,pairs_expected");
  CHECK(sweep_lines[1].rfind("w,", 0) == 0);
  CHECK(sweep_lines[4].find(",skipped,,,,,") != std::string::npos);
  CHECK(split_fields(sweep_lines[4]).size() == 12);
}

TEST_CASE("json emission shapes", "[campaign][io]") {
  const Trajectory t = run_to_target(ProtocolId::kOx2, werner(0.52), 0.8);
  const nlohmann::json j = trajectory_json(t);
  CHECK(j.at("protocol") == "ox2");
  CHECK(j.at("status") == "converged");
  CHECK(j.at("max_rounds") == kDefaultMaxRounds);
  CHECK(j.at("target") == 0.8);
  CHECK(j.at("initial").at("A") == 0.52);
  CHECK(j.at("final_state").at("A") == t.final_fidelity);
  REQUIRE(j.at("rounds").size() == 8);
  const nlohmann::json& r0 = j.at("rounds")[0];
  CHECK(r0.at("index") == 1);
  CHECK(r0.at("pairs").at("paper") == 1.0);
  CHECK(r0.at("pairs").at("tree") == 2.0);
  CHECK(r0.at("rotations").is_array());
  CHECK(r0.at("rotations").empty());

  const CompareResult cr = compare(werner(0.52), 0.8);
  const nlohmann::json cj = compare_json(cr);
  REQUIRE(cj.at("protocols").size() == 3);
  CHECK(cj.at("protocols")[2].at("protocol") == "ox3");

  const nlohmann::json sj = series_json(fidelity_series(werner(0.52), 3));
  CHECK(sj.at("rounds") == 3);
  REQUIRE(sj.at("ox1").size() == 4);
  REQUIRE(sj.at("ox3").size() == 4);
  CHECK(sj.at("ox1")[0].get<double>() == 0.52);

  const nlohmann::json wj =
      sweep_json(sweep({{"w", to_correlations(werner(0.75))}}, 0.8, 8), 0.8);
  CHECK(wj.at("target") == 0.8);
  REQUIRE(wj.at("rows").size() == 3);
  CHECK(wj.at("rows")[0].at("protocol") == "ox1");
}

TEST_CASE("emission is replay deterministic", "[campaign][io]") {
  std::ostringstream a;
  std::ostringstream b;
  write_compare_csv(a, compare(werner(0.52), 0.8));
  write_compare_csv(b, compare(werner(0.52), 0.8));
  CHECK(a.str() == b.str());
  CHECK(compare_json(compare(werner(0.52), 0.8)).dump(2) ==
        compare_json(compare(werner(0.52), 0.8)).dump(2));
}

TEST_CASE("target-side measurement variant steps through the oracle",
          "[campaign][oracle]") {
  const StepFn twirled = step_function(ProtocolId::kOx3, Ox3Variant::kMeasureTargetSide);
  const StepOutcome s = twirled(werner(0.52));
  CHECK_THAT(s.state.A, WithinAbs(0.52441001621329497, 1e-9));
  CHECK_THAT(s.state.B, WithinAbs(0.11259232570707982, 1e-9));
  CHECK_THAT(s.state.C, WithinAbs(0.11259232570707982, 1e-9));
  CHECK_THAT(s.state.D, WithinAbs(0.25040533237254547, 1e-9));
  CHECK_THAT(s.probability, WithinAbs(0.177632, 1e-6));

  // The default variant dispatches to the closed form.
  const StepOutcome c = step_function(ProtocolId::kOx3)(werner(0.52));
  const StepOutcome direct = ox3_step(werner(0.52));
  CHECK(c.state.A == direct.state.A);
  CHECK(c.probability == direct.probability);

  // A run under the target-side variant stays finite and Bell-diagonal.
  const Trajectory t = run_to_target(ProtocolId::kOx3, werner(0.52), 0.8, 4,
                                     Ox3Variant::kMeasureTargetSide);
  CHECK(t.rounds.size() == 4);
  CHECK_THAT(t.rounds[0].fidelity, WithinAbs(0.52441001621329497, 1e-9));
  CHECK_THAT(t.rounds[3].fidelity, WithinAbs(0.51405823314617993, 1e-9));
}

TEST_CASE("names round trip", "[campaign]") {
  CHECK(accounting_name(AccountingModel::kPaper) == std::string("paper"));
  CHECK(accounting_name(AccountingModel::kTree) == std::string("tree"));
  CHECK(accounting_name(AccountingModel::kExpected) == std::string("expected"));
  CHECK(accounting_from_name("tree") == AccountingModel::kTree);
  CHECK_THROWS_AS(accounting_from_name("geometric"), std::invalid_argument);
  CHECK(status_name(RunStatus::kConverged) == std::string("converged"));
  CHECK(status_name(RunStatus::kMaxRoundsReached) == std::string("max_rounds"));
  CHECK(status_name(RunStatus::kFixedPoint) == std::string("fixed_point"));
}
