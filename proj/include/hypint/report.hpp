#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hypint/classical.hpp"
#include "hypint/eisenstein.hpp"
#include "hypint/series.hpp"

namespace hypint {

/*
 * Problem files in, canonical reports out.
 *
 * A problem file is a single JSON object: a mode, the mode's payload, the
 * primes to run, and optional search-parameter overrides.  Exact numbers
 * travel as strings ("p/q" for rationals, decimal strings for big
 * integers); matrix entries are plain JSON integers.
 *
 * The canonical report is byte-deterministic: fixed field order, no
 * timestamps, thread count never echoed.  Timing belongs to stderr.
 */

inline constexpr const char* kToolName = "hypint";
inline constexpr const char* kToolVersion = "0.1.0";

using ReportJson = nlohmann::ordered_json;

enum class Mode { analyze, classical, series, bound, thm63, eisenstein };

Mode mode_from_name(const std::string& name); // input_error on unknown names
std::string mode_name(Mode mode);

// Search bounds with their documented defaults; every run echoes the
// effective values into the report.
struct RunParameters {
    long max_b = 3;
    long box = 40;
    long order = 40;
    Int guard = 1'000'000;
};
bool operator==(const RunParameters& a, const RunParameters& b);

struct Problem {
    Mode mode = Mode::analyze;
    std::optional<Configuration> cfg; // analyze, series, bound, thm63
    VecQ v;                           // goes with cfg
    std::optional<ClassicalSpec> ratio;
    std::optional<AlgebraicSeries> algebraic;
    std::vector<Int> primes; // analyze, series, bound
    RunParameters params;
};

// Parses and validates a problem file.  Throws input_error with a
// line/field diagnostic on malformed JSON, unknown or missing fields,
// non-prime entries, or payloads rejected by the target module.
Problem parse_problem(const std::string& text);

struct Report {
    Mode mode = Mode::analyze;
    RunParameters params;
    std::string status;      // integral_certified, unbounded_certified,
                             // non_integral_certified, undecided, computed, mixed
    ReportJson payload;      // mode-specific keys, emitted after the envelope
};
bool operator==(const Report& a, const Report& b);

// Dispatches to the module pipeline for the problem's mode.
// Errors surface as input_error / resource_error from the modules.
Report run(const Problem& problem);

// Canonical JSON serialization: envelope (tool, version, mode, parameters,
// status) followed by the payload keys, two-space indent, trailing newline.
std::string emit_json(const Report& report);

// Fixed-layout human-readable rendering; contains the certificate line
// "w_p(v) = <q> ≥ bound = <q>" for weight-comparison modes.
std::string emit_text(const Report& report);

// Inverse of emit_json; parse_report(emit_json(r)) == r.
Report parse_report(const std::string& text);

// 0 for any certified or computed outcome, 2 for undecided.
int exit_code_for(const std::string& status);

} // namespace hypint
