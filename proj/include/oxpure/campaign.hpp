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

// Multi-round simulation driver.
//
// A run iterates a protocol's single-round map from an initial state toward
// a fidelity target, recording per-round fidelity, branch probability, and
// cumulative pair consumption under three accounting models:
//
//   paper     geometric count, k^(rounds-1): the convention behind the
//             published consumed-pair figures
//   tree      deterministic tree, k^rounds: every leaf of the recombination
//             tree is a fresh source pair
//   expected  expected consumption, product of k/p_i over executed rounds:
//             accounts for discarded measurement branches
//
// where k is the protocol's pairs per round.  The models never cross:
// expected >= tree >= paper on any trajectory.
//
// Every round executes at least once, so purifying an already-pure state
// still consumes one round.  A run ends by reaching the target, by
// exhausting max_rounds, or by hitting a fixed point (round-to-round
// fidelity change below 1e-15 away from the target).  All emitted numbers
// go through g17, which makes replays byte-identical.

#ifndef OXPURE_CAMPAIGN_HPP_
#define OXPURE_CAMPAIGN_HPP_

#include <array>
#include <cmath>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "oxpure/bell.hpp"
#include "oxpure/format.hpp"
#include "oxpure/oracle.hpp"
#include "oxpure/protocols.hpp"

namespace oxpure {

inline constexpr double kFixedPointEpsilon = 1e-15;
inline constexpr int kDefaultMaxRounds = 64;

enum class AccountingModel : int { kPaper = 0, kTree = 1, kExpected = 2 };

inline const char* accounting_name(AccountingModel m) {
  switch (m) {
    case AccountingModel::kPaper: return "paper";
    case AccountingModel::kTree: return "tree";
    case AccountingModel::kExpected: return "expected";
  }
  throw std::invalid_argument("accounting_name: unknown model");
}

inline AccountingModel accounting_from_name(const std::string& s) {
  if (s == "paper") return AccountingModel::kPaper;
  if (s == "tree") return AccountingModel::kTree;
  if (s == "expected") return AccountingModel::kExpected;
  throw std::invalid_argument("unknown accounting model: " + s);
}

enum class RunStatus : int { kConverged = 0, kMaxRoundsReached = 1, kFixedPoint = 2 };

inline const char* status_name(RunStatus s) {
  switch (s) {
    case RunStatus::kConverged: return "converged";
    case RunStatus::kMaxRoundsReached: return "max_rounds";
    case RunStatus::kFixedPoint: return "fixed_point";
  }
  throw std::invalid_argument("status_name: unknown status");
}

struct RoundRecord {
  int index = 0;  // 1-based
  double fidelity = 0.0;
  double success_probability = 0.0;
  double pairs_paper = 0.0;
  double pairs_tree = 0.0;
  double pairs_expected = 0.0;
  std::vector<RotationAxis> rotations;
};

struct Trajectory {
  ProtocolId protocol = ProtocolId::kOx1;
  BellWeights initial;
  double target = 0.0;
  int max_rounds = 0;
  RunStatus status = RunStatus::kMaxRoundsReached;
  std::vector<RoundRecord> rounds;
  BellWeights final_state;
  double final_fidelity = 0.0;
};

using StepFn = std::function<StepOutcome(const BellWeights&)>;

// Single-round map used by the driver.  The target-side three-pair variant
// has no closed form because its kept pair is not Bell-diagonal; it steps
// through the oracle circuit and carries the twirled diagonal forward.
inline StepFn step_function(ProtocolId protocol,
                            Ox3Variant variant = Ox3Variant::kMeasureControls) {
  if (protocol == ProtocolId::kOx3 && variant == Ox3Variant::kMeasureTargetSide) {
    return [](const BellWeights& w) {
      const oracle::OracleStep s = oracle::ox3_step(w, Ox3Variant::kMeasureTargetSide);
      return StepOutcome{s.state, s.probability, s.rotations};
    };
  }
  return [protocol](const BellWeights& w) { return protocol_step(protocol, w); };
}

inline Trajectory run_to_target(ProtocolId protocol, const BellWeights& initial,
                                double target, int max_rounds = kDefaultMaxRounds,
                                Ox3Variant variant = Ox3Variant::kMeasureControls) {
  validate(initial);
  if (max_rounds < 1) throw std::invalid_argument("run_to_target: max_rounds must be >= 1");
  const StepFn step = step_function(protocol, variant);
  const double k = pairs_per_round(protocol);

  Trajectory t;
  t.protocol = protocol;
  t.initial = initial;
  t.target = target;
  t.max_rounds = max_rounds;

  BellWeights w = initial;
  double prev_fidelity = fidelity(initial);
  double paper = 1.0, tree = 1.0, expected = 1.0;
  for (int n = 1; n <= max_rounds; ++n) {
    const StepOutcome out = step(w);
    const double f = fidelity(out.state);
    if (n > 1) paper *= k;
    tree *= k;
    expected *= k / out.probability;
    t.rounds.push_back({n, f, out.probability, paper, tree, expected,
                        out.rotations_applied});
    w = out.state;
    if (f >= target) {
      t.status = RunStatus::kConverged;
      break;
    }
    // Target first: a round that lands exactly on the target converges even
    // if the map has gone stationary.
    if (std::abs(f - prev_fidelity) < kFixedPointEpsilon) {
      t.status = RunStatus::kFixedPoint;
      break;
    }
    prev_fidelity = f;
  }
  t.final_state = w;
  t.final_fidelity = fidelity(w);
  return t;
}

inline double consumed_pairs(const Trajectory& t, AccountingModel m) {
  if (t.rounds.empty()) throw std::logic_error("consumed_pairs: empty trajectory");
  const RoundRecord& last = t.rounds.back();
  switch (m) {
    case AccountingModel::kPaper: return last.pairs_paper;
    case AccountingModel::kTree: return last.pairs_tree;
    case AccountingModel::kExpected: return last.pairs_expected;
  }
  throw std::invalid_argument("consumed_pairs: unknown model");
}

struct CompareResult {
  BellWeights initial;
  double target = 0.0;
  int max_rounds = 0;
  std::array<Trajectory, 3> trajectories;  // ox1, ox2, ox3
};

inline CompareResult compare(const BellWeights& initial, double target,
                             int max_rounds = kDefaultMaxRounds) {
  CompareResult r;
  r.initial = initial;
  r.target = target;
  r.max_rounds = max_rounds;
  r.trajectories = {run_to_target(ProtocolId::kOx1, initial, target, max_rounds),
                    run_to_target(ProtocolId::kOx2, initial, target, max_rounds),
                    run_to_target(ProtocolId::kOx3, initial, target, max_rounds)};
  return r;
}

// Fidelity of all three protocols over a fixed number of rounds, including
// the initial state as round 0.  No target is involved; a trajectory that
// goes stationary early is continued with its fixed value, which is exact.
struct FidelitySeries {
  BellWeights initial;
  int rounds = 0;
  std::array<std::vector<double>, 3> fidelity;  // [protocol][round], round 0 first
};

inline FidelitySeries fidelity_series(const BellWeights& initial, int rounds) {
  if (rounds < 1) throw std::invalid_argument("fidelity_series: rounds must be >= 1");
  FidelitySeries s;
  s.initial = initial;
  s.rounds = rounds;
  const double unreachable = 2.0;
  for (int p = 0; p < 3; ++p) {
    const Trajectory t =
        run_to_target(static_cast<ProtocolId>(p), initial, unreachable, rounds);
    std::vector<double>& f = s.fidelity[p];
    f.push_back(oxpure::fidelity(initial));
    for (const RoundRecord& r : t.rounds) f.push_back(r.fidelity);
    while (static_cast<int>(f.size()) <= rounds) f.push_back(f.back());
  }
  return s;
}

struct SweepPoint {
  std::string label;
  CorrelationVector c;
};

struct SweepCell {
  std::string label;
  CorrelationVector c;
  bool physical = false;
  ProtocolId protocol = ProtocolId::kOx1;
  bool skipped = true;
  RunStatus status = RunStatus::kMaxRoundsReached;
  int rounds = 0;
  double final_fidelity = 0.0;
  double pairs_paper = 0.0;
  double pairs_tree = 0.0;
  double pairs_expected = 0.0;
};

// One cell per grid point per protocol.  Unphysical points are kept in the
// output, flagged and skipped, so grid shape is preserved.
inline std::vector<SweepCell> sweep(const std::vector<SweepPoint>& points,
                                    double target, int max_rounds = kDefaultMaxRounds) {
  std::vector<SweepCell> cells;
  cells.reserve(points.size() * 3);
  for (const SweepPoint& pt : points) {
    const bool physical = is_physical(pt.c);
    for (int p = 0; p < 3; ++p) {
      SweepCell cell;
      cell.label = pt.label;
      cell.c = pt.c;
      cell.physical = physical;
      cell.protocol = static_cast<ProtocolId>(p);
      if (physical) {
        const Trajectory t = run_to_target(static_cast<ProtocolId>(p),
                                           to_weights(pt.c), target, max_rounds);
        cell.skipped = false;
        cell.status = t.status;
        cell.rounds = static_cast<int>(t.rounds.size());
        cell.final_fidelity = t.final_fidelity;
        cell.pairs_paper = consumed_pairs(t, AccountingModel::kPaper);
        cell.pairs_tree = consumed_pairs(t, AccountingModel::kTree);
        cell.pairs_expected = consumed_pairs(t, AccountingModel::kExpected);
      }
      cells.push_back(cell);
    }
  }
  return cells;
}

// ---- emission ----

inline const char* kTrajectoryCsvHeader =
    "round,fidelity,success_probability,pairs_paper,pairs_tree,pairs_expected,rotations";

inline void write_round_csv(std::ostream& os, const RoundRecord& r) {
  os << r.index << ',' << g17(r.fidelity) << ',' << g17(r.success_probability)
     << ',' << g17(r.pairs_paper) << ',' << g17(r.pairs_tree) << ','
     << g17(r.pairs_expected) << ',' << rotation_names(r.rotations) << '\n';
}

inline void write_trajectory_csv(std::ostream& os, const Trajectory& t) {
  os << kTrajectoryCsvHeader << '\n';
  for (const RoundRecord& r : t.rounds) write_round_csv(os, r);
}

inline nlohmann::json round_json(const RoundRecord& r) {
  nlohmann::json rot = nlohmann::json::array();
  for (RotationAxis a : r.rotations) rot.push_back(std::string(1, axis_name(a)));
  return nlohmann::json{{"index", r.index},
                        {"fidelity", r.fidelity},
                        {"success_probability", r.success_probability},
                        {"pairs",
                         {{"paper", r.pairs_paper},
                          {"tree", r.pairs_tree},
                          {"expected", r.pairs_expected}}},
                        {"rotations", rot}};
}

inline nlohmann::json trajectory_json(const Trajectory& t) {
  nlohmann::json rounds = nlohmann::json::array();
  for (const RoundRecord& r : t.rounds) rounds.push_back(round_json(r));
  return nlohmann::json{{"protocol", protocol_name(t.protocol)},
                        {"initial", t.initial},
                        {"target", t.target},
                        {"max_rounds", t.max_rounds},
                        {"status", status_name(t.status)},
                        {"rounds", rounds},
                        {"final_state", t.final_state},
                        {"final_fidelity", t.final_fidelity}};
}

inline void write_compare_csv(std::ostream& os, const CompareResult& r) {
  os << "protocol," << kTrajectoryCsvHeader << '\n';
  for (const Trajectory& t : r.trajectories) {
    for (const RoundRecord& rec : t.rounds) {
      os << protocol_name(t.protocol) << ',';
      write_round_csv(os, rec);
    }
  }
}

inline nlohmann::json compare_json(const CompareResult& r) {
  nlohmann::json protocols = nlohmann::json::array();
  for (const Trajectory& t : r.trajectories) protocols.push_back(trajectory_json(t));
  return nlohmann::json{{"initial", r.initial},
                        {"target", r.target},
                        {"max_rounds", r.max_rounds},
                        {"protocols", protocols}};
}

inline void write_series_csv(std::ostream& os, const FidelitySeries& s) {
  os << "round,ox1,ox2,ox3\n";
  for (int n = 0; n <= s.rounds; ++n) {
    os << n << ',' << g17(s.fidelity[0][n]) << ',' << g17(s.fidelity[1][n]) << ','
       << g17(s.fidelity[2][n]) << '\n';
  }
}

inline nlohmann::json series_json(const FidelitySeries& s) {
  nlohmann::json out{{"initial", s.initial}, {"rounds", s.rounds}};
  for (int p = 0; p < 3; ++p) {
    out[protocol_name(static_cast<ProtocolId>(p))] = s.fidelity[p];
  }
  return out;
}

inline void write_sweep_csv(std::ostream& os, const std::vector<SweepCell>& cells) {
  os << "label,cx,cy,cz,physical,protocol,status,rounds,final_fidelity,"
        "pairs_paper,pairs_tree,pairs_expected\n";
  for (const SweepCell& cell : cells) {
    os << cell.label << ',' << g17(cell.c.cx) << ',' << g17(cell.c.cy) << ','
       << g17(cell.c.cz) << ',' << (cell.physical ? 1 : 0) << ','
       << protocol_name(cell.protocol) << ',';
    if (cell.skipped) {
      os << "skipped,,,,,\n";
    } else {
      os << status_name(cell.status) << ',' << cell.rounds << ','
         << g17(cell.final_fidelity) << ',' << g17(cell.pairs_paper) << ','
         << g17(cell.pairs_tree) << ',' << g17(cell.pairs_expected) << '\n';
    }
  }
}

inline nlohmann::json sweep_json(const std::vector<SweepCell>& cells, double target) {
  nlohmann::json rows = nlohmann::json::array();
  for (const SweepCell& cell : cells) {
    nlohmann::json row{{"label", cell.label},
                       {"correlations", cell.c},
                       {"physical", cell.physical},
                       {"protocol", protocol_name(cell.protocol)}};
    if (cell.skipped) {
      row["skipped"] = true;
    } else {
      row["skipped"] = false;
      row["status"] = status_name(cell.status);
      row["rounds"] = cell.rounds;
      row["final_fidelity"] = cell.final_fidelity;
      row["pairs"] = {{"paper", cell.pairs_paper},
                      {"tree", cell.pairs_tree},
                      {"expected", cell.pairs_expected}};
    }
    rows.push_back(row);
  }
  return nlohmann::json{{"target", target}, {"rows", rows}};
}

}  // namespace oxpure

#endif  // OXPURE_CAMPAIGN_HPP_
