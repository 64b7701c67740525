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

// Command implementations behind the oxpure tool.
//
// The binary's argument parser fills a CliConfig and dispatches to one
// cmd_* function; everything here is plain library code so the commands can
// be driven in-process by tests.  Exit codes: 0 success, 1 verification
// failure, 2 invalid input, 3 non-convergence under --strict.  Invalid
// input is reported by throwing std::invalid_argument or
// std::runtime_error; the binary maps those to exit code 2.
//
// Payloads (CSV, JSON, report text) go to the --out file when given,
// otherwise to the provided stream.  When a file is written, a short
// summary goes to the stream instead.  All output is deterministic for a
// fixed configuration.

#ifndef OXPURE_CLI_HPP_
#define OXPURE_CLI_HPP_

#include <cmath>
#include <cstdint>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "oxpure/bell.hpp"
#include "oxpure/campaign.hpp"
#include "oxpure/format.hpp"
#include "oxpure/protocols.hpp"
#include "oxpure/published.hpp"
#include "oxpure/sampling.hpp"
#include "oxpure/verify.hpp"

namespace oxpure {
namespace cli {

struct CliConfig {
  // Initial state: at most one of these may be set.
  std::optional<double> werner_fidelity;
  std::optional<std::string> weights_csv;       // "A,B,C,D"
  std::optional<std::string> correlations_csv;  // "cx,cy,cz"

  double target = published::kTargetFidelity;
  int max_rounds = kDefaultMaxRounds;
  AccountingModel accounting = AccountingModel::kPaper;
  std::string out;     // empty writes to the stream
  std::string format;  // empty selects the command default
  bool strict = false;

  // run only
  std::optional<std::string> protocol;
  Ox3Variant ox3_variant = Ox3Variant::kMeasureControls;

  // verify only
  std::uint64_t seed = kDefaultSeed;
  int samples = 200;
  int hetero_samples = 50;
  double tolerance = 1e-9;

  // sweep only
  std::optional<std::string> werner_range;  // "a:b:step"
  std::optional<std::string> cx_range, cy_range, cz_range;
};

inline std::vector<double> parse_doubles(const std::string& s, char sep) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    const std::size_t next = s.find(sep, pos);
    const std::string tok =
        s.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(tok, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("not a number: '" + tok + "'");
    }
    if (used != tok.size()) throw std::invalid_argument("not a number: '" + tok + "'");
    out.push_back(v);
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  return out;
}

// "a" is a single point; "a:b:step" enumerates a, a+step, ... up to b
// (inclusive within 1e-12).
inline std::vector<double> parse_range(const std::string& s) {
  const std::vector<double> parts = parse_doubles(s, ':');
  if (parts.size() == 1) return parts;
  if (parts.size() != 3) {
    throw std::invalid_argument("range must be 'a' or 'a:b:step': '" + s + "'");
  }
  const double a = parts[0], b = parts[1], step = parts[2];
  if (!(step > 0.0)) throw std::invalid_argument("range step must be positive");
  if (b < a) throw std::invalid_argument("range end is below its start");
  if ((b - a) / step > 100000.0) throw std::invalid_argument("range has too many points");
  std::vector<double> out;
  for (double v = a; v <= b + 1e-12; v += step) out.push_back(v);
  return out;
}

// Resolves the initial state.  Tolerates 1e-9 of input dust, then
// renormalizes, so hand-typed decimals for thirds work; anything further
// from physical is rejected.
inline BellWeights resolve_state(const CliConfig& cfg, bool allow_default) {
  int given = 0;
  given += cfg.werner_fidelity.has_value();
  given += cfg.weights_csv.has_value();
  given += cfg.correlations_csv.has_value();
  if (given > 1) {
    throw std::invalid_argument(
        "give at most one of --werner, --weights, --correlations");
  }
  if (given == 0) {
    if (!allow_default) {
      throw std::invalid_argument(
          "an initial state is required: --werner F, --weights A,B,C,D, or "
          "--correlations cx,cy,cz");
    }
    return werner(published::kInitialWernerFidelity);
  }
  if (cfg.werner_fidelity) return werner(*cfg.werner_fidelity);

  BellWeights w;
  if (cfg.weights_csv) {
    const std::vector<double> v = parse_doubles(*cfg.weights_csv, ',');
    if (v.size() != 4) throw std::invalid_argument("--weights needs four values");
    w = BellWeights{v[0], v[1], v[2], v[3]};
  } else {
    const std::vector<double> v = parse_doubles(*cfg.correlations_csv, ',');
    if (v.size() != 3) throw std::invalid_argument("--correlations needs three values");
    w = to_weights(CorrelationVector{v[0], v[1], v[2]});
  }
  if (!is_valid(w, 1e-9)) {
    throw std::invalid_argument("initial state is not a physical Bell-diagonal state");
  }
  const double sum = weight_sum(w);
  BellWeights out{w.A / sum, w.B / sum, w.C / sum, w.D / sum};
  out.A = out.A < 0.0 ? 0.0 : out.A;
  out.B = out.B < 0.0 ? 0.0 : out.B;
  out.C = out.C < 0.0 ? 0.0 : out.C;
  out.D = out.D < 0.0 ? 0.0 : out.D;
  validate(out, 1e-9);
  return out;
}

namespace detail {

inline void validate_common(const CliConfig& cfg) {
  if (!(cfg.target >= 0.0 && cfg.target <= 1.0)) {
    throw std::invalid_argument("--target must lie in [0, 1]");
  }
  if (cfg.max_rounds < 1) throw std::invalid_argument("--max-rounds must be >= 1");
}

inline std::string pick_format(const CliConfig& cfg, const char* fallback) {
  return cfg.format.empty() ? fallback : cfg.format;
}

inline void require_format(const std::string& fmt, std::initializer_list<const char*> allowed) {
  for (const char* a : allowed) {
    if (fmt == a) return;
  }
  throw std::invalid_argument("unsupported --format value: " + fmt);
}

inline void emit(const CliConfig& cfg, const std::string& payload, std::ostream& os,
                 const std::string& summary) {
  if (cfg.out.empty()) {
    os << payload;
    return;
  }
  std::ofstream f(cfg.out, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open output file: " + cfg.out);
  f << payload;
  if (!summary.empty()) os << summary << '\n';
  os << "wrote " << cfg.out << '\n';
}

inline std::string trajectory_summary(const CliConfig& cfg, const Trajectory& t) {
  std::ostringstream s;
  s << protocol_name(t.protocol) << ": " << status_name(t.status) << " after "
    << t.rounds.size() << " round(s), final fidelity " << g17(t.final_fidelity)
    << ", pairs (" << accounting_name(cfg.accounting) << ") "
    << g17(consumed_pairs(t, cfg.accounting));
  return s.str();
}

}  // namespace detail

inline int cmd_verify(const CliConfig& cfg, std::ostream& os) {
  if (cfg.samples < 1 || cfg.hetero_samples < 0) {
    throw std::invalid_argument("--samples must be >= 1 and --hetero-samples >= 0");
  }
  if (!(cfg.tolerance > 0.0)) throw std::invalid_argument("--tol must be positive");
  verify::Options opt;
  opt.seed = cfg.seed;
  opt.samples = cfg.samples;
  opt.hetero_samples = cfg.hetero_samples;
  opt.tolerance = cfg.tolerance;
  const verify::Result r = verify::run_verification(opt);

  static const char* names[3] = {"ox1", "ox2", "ox3"};
  for (int p = 0; p < 3; ++p) {
    os << names[p] << " max deviation: state " << g17(r.protocols[p].state)
       << ", probability " << g17(r.protocols[p].probability) << ", rotations "
       << (r.protocols[p].rotations_match ? "match" : "MISMATCH") << '\n';
  }
  os << "ox3 heterogeneous max deviation: state " << g17(r.hetero.state)
     << ", probability " << g17(r.hetero.probability) << '\n';
  os << "max oracle Bell residual: " << g17(r.max_oracle_bell_residual) << '\n';
  os << "negative control deviation: " << g17(r.corrupted_deviation) << " ("
     << (r.corrupted_detected() ? "detected" : "NOT DETECTED") << ")\n";
  os << "verdict: " << (r.ok() ? "PASS" : "FAIL") << " (tolerance "
     << g17(cfg.tolerance) << ")\n";

  const std::string report = verify::discrepancy_report(r);
  if (cfg.out.empty()) {
    os << '\n' << report;
  } else {
    std::ofstream f(cfg.out, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file: " + cfg.out);
    f << report;
    os << "report written to " << cfg.out << '\n';
  }
  return r.ok() ? 0 : 1;
}

inline int cmd_run(const CliConfig& cfg, std::ostream& os) {
  detail::validate_common(cfg);
  if (!cfg.protocol) throw std::invalid_argument("--protocol is required");
  const ProtocolId protocol = protocol_from_name(*cfg.protocol);
  const BellWeights initial = resolve_state(cfg, false);
  const std::string fmt = detail::pick_format(cfg, "csv");
  detail::require_format(fmt, {"csv", "json"});

  const Trajectory t =
      run_to_target(protocol, initial, cfg.target, cfg.max_rounds, cfg.ox3_variant);
  std::string payload;
  if (fmt == "json") {
    payload = trajectory_json(t).dump(2) + "\n";
  } else {
    std::ostringstream buf;
    write_trajectory_csv(buf, t);
    payload = buf.str();
  }
  detail::emit(cfg, payload, os, detail::trajectory_summary(cfg, t));
  return (cfg.strict && t.status != RunStatus::kConverged) ? 3 : 0;
}

inline int cmd_compare(const CliConfig& cfg, std::ostream& os) {
  detail::validate_common(cfg);
  const BellWeights initial = resolve_state(cfg, false);
  const std::string fmt = detail::pick_format(cfg, "csv");
  detail::require_format(fmt, {"csv", "json"});

  const CompareResult r = compare(initial, cfg.target, cfg.max_rounds);
  std::string payload;
  if (fmt == "json") {
    payload = compare_json(r).dump(2) + "\n";
  } else {
    std::ostringstream buf;
    write_compare_csv(buf, r);
    payload = buf.str();
  }
  std::ostringstream summary;
  bool all_converged = true;
  for (const Trajectory& t : r.trajectories) {
    summary << detail::trajectory_summary(cfg, t) << '\n';
    all_converged = all_converged && t.status == RunStatus::kConverged;
  }
  std::string summary_str = summary.str();
  if (!summary_str.empty()) summary_str.pop_back();
  detail::emit(cfg, payload, os, summary_str);
  return (cfg.strict && !all_converged) ? 3 : 0;
}

inline int cmd_sweep(const CliConfig& cfg, std::ostream& os) {
  detail::validate_common(cfg);
  const std::string fmt = detail::pick_format(cfg, "csv");
  detail::require_format(fmt, {"csv", "json"});

  const bool have_correlation_grid =
      cfg.cx_range.has_value() || cfg.cy_range.has_value() || cfg.cz_range.has_value();
  if (cfg.werner_range.has_value() == have_correlation_grid) {
    throw std::invalid_argument(
        "give either --werner-range or all of --cx-range, --cy-range, --cz-range");
  }
  std::vector<SweepPoint> points;
  if (cfg.werner_range) {
    for (double f : parse_range(*cfg.werner_range)) {
      const double c = (4.0 * f - 1.0) / 3.0;
      points.push_back({"werner=" + g17(f), {c, c, c}});
    }
  } else {
    if (!cfg.cx_range || !cfg.cy_range || !cfg.cz_range) {
      throw std::invalid_argument(
          "a correlation sweep needs --cx-range, --cy-range, and --cz-range");
    }
    for (double x : parse_range(*cfg.cx_range)) {
      for (double y : parse_range(*cfg.cy_range)) {
        for (double z : parse_range(*cfg.cz_range)) {
          points.push_back(
              {"cx=" + g17(x) + ";cy=" + g17(y) + ";cz=" + g17(z), {x, y, z}});
        }
      }
    }
  }

  const std::vector<SweepCell> cells = sweep(points, cfg.target, cfg.max_rounds);
  std::string payload;
  if (fmt == "json") {
    payload = sweep_json(cells, cfg.target).dump(2) + "\n";
  } else {
    std::ostringstream buf;
    write_sweep_csv(buf, cells);
    payload = buf.str();
  }
  std::ostringstream summary;
  summary << points.size() << " grid point(s), " << cells.size() << " cell(s)";
  detail::emit(cfg, payload, os, summary.str());
  return 0;
}

inline int cmd_table2(const CliConfig& cfg, std::ostream& os) {
  detail::validate_common(cfg);
  const BellWeights initial = resolve_state(cfg, true);
  const std::string fmt = detail::pick_format(cfg, "text");
  detail::require_format(fmt, {"text", "csv", "json"});

  const std::vector<verify::ReferenceRow> rows =
      verify::reference_comparison(initial, cfg.target, cfg.max_rounds);
  std::string payload;
  if (fmt == "json") {
    nlohmann::json j{{"initial", initial},
                     {"target", cfg.target},
                     {"rows", verify::reference_comparison_json(rows)}};
    payload = j.dump(2) + "\n";
  } else if (fmt == "csv") {
    std::ostringstream buf;
    buf << "protocol,status,rounds,ref_rounds,rounds_match,fidelity,ref_fidelity,"
           "fidelity_match,pairs,ref_pairs,pairs_match\n";
    for (const verify::ReferenceRow& r : rows) {
      buf << r.protocol << ',' << status_name(r.status) << ',' << r.rounds_computed
          << ',' << r.rounds_published << ',' << (r.rounds_match ? 1 : 0) << ','
          << g17(r.fidelity_computed) << ',' << g17(r.fidelity_published) << ','
          << (r.fidelity_match ? 1 : 0) << ',' << g17(r.pairs_computed) << ','
          << g17(r.pairs_published) << ',' << (r.pairs_match ? 1 : 0) << '\n';
    }
    payload = buf.str();
  } else {
    std::ostringstream buf;
    buf << "input fidelity " << g17(fidelity(initial)) << ", target "
        << g17(cfg.target) << ", pairs under geometric accounting; reference "
        << "values in parentheses\n\n";
    buf << verify::reference_comparison_text(rows);
    payload = buf.str();
  }
  detail::emit(cfg, payload, os, "");
  return 0;
}

inline int cmd_fig1(const CliConfig& cfg, std::ostream& os) {
  if (cfg.max_rounds < 1) throw std::invalid_argument("--max-rounds must be >= 1");
  const BellWeights initial = resolve_state(cfg, true);
  const std::string fmt = detail::pick_format(cfg, "csv");
  detail::require_format(fmt, {"csv", "json"});

  const FidelitySeries s = fidelity_series(initial, cfg.max_rounds);
  std::string payload;
  if (fmt == "json") {
    payload = series_json(s).dump(2) + "\n";
  } else {
    std::ostringstream buf;
    write_series_csv(buf, s);
    payload = buf.str();
  }
  std::ostringstream summary;
  summary << "fidelity series over " << cfg.max_rounds << " round(s)";
  detail::emit(cfg, payload, os, summary.str());
  return 0;
}

}  // namespace cli
}  // namespace oxpure

#endif  // OXPURE_CLI_HPP_
