#pragma once

#include "qexpand/coefficients.hpp"
#include "qexpand/discovery.hpp"
#include "qexpand/qlaurent.hpp"
#include "qexpand/verify.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qexpand {

// Output formats shared by the command-line surface. json is the machine
// format with an exact inverse; csv is a flat spreadsheet view; plain is for
// reading in a terminal.
enum class OutputFormat { json, csv, plain };
std::optional<OutputFormat> parse_format(std::string_view s);
std::string to_string(OutputFormat f);

// ---------------------------------------------------------------------------
// JSON
//
// Schema, chosen so exact values survive any JSON reader:
//   - big integers and rationals are decimal strings ("-42", "3/7"), never
//     native numbers — the values here overflow 64 bits routinely;
//   - a Laurent polynomial is {"offset": int, "coeffs": [decimal strings]}
//     listing the dense coefficient window from q^offset upward (the zero
//     polynomial is {"offset": 0, "coeffs": []});
//   - a coefficient table is {"family", "k", "r", "provenance",
//     "entries": {j: value}} with one entry for every j in its support
//     window, zeros included, so the window is recoverable;
//   - a proof report is {"statement", "family", "params", "status",
//     "degree_bound", "points_checked"} plus "counterexample" when the
//     statement was falsified;
//   - machine-width fields (indices, bounds, counts) stay native integers.
//
// Every serializer below has an exact inverse: x == *_from_json(to_json(x)).
// The parsers throw std::invalid_argument on malformed input.
// ---------------------------------------------------------------------------

std::string to_json(const QLaurent& p);
std::string to_json(const IntTable& t);
std::string to_json(const RatTable& t);
std::string to_json(const QTable& t);
std::string to_json(const SchmidtRow& row);
std::string to_json(const ProofReport& rep);
std::string to_json(const std::vector<ProofReport>& reps);
std::string to_json(const DiscoveredS& row);
std::string to_json(const std::vector<DiscoveredS>& rows);
std::string to_json(const RecurrenceCandidate& cand);
std::string to_json(const ProbeReport& rep);

QLaurent qlaurent_from_json(const std::string& text);
IntTable int_table_from_json(const std::string& text);
RatTable rat_table_from_json(const std::string& text);
QTable q_table_from_json(const std::string& text);
SchmidtRow schmidt_row_from_json(const std::string& text);
ProofReport proof_report_from_json(const std::string& text);
std::vector<ProofReport> proof_reports_from_json(const std::string& text);
DiscoveredS discovered_s_from_json(const std::string& text);
std::vector<DiscoveredS> discovered_s_list_from_json(const std::string& text);
RecurrenceCandidate recurrence_from_json(const std::string& text);
ProbeReport probe_report_from_json(const std::string& text);

// ---------------------------------------------------------------------------
// CSV
//
// Flat views; the table metadata (family, k, r, provenance) lives in the
// JSON form, not here. Tables flatten to (j, value) rows; Laurent values
// flatten to space-separated exponent:coefficient pairs in ascending
// exponent order (empty for zero); Schmidt rows flatten to (k, value);
// report lists flatten to one row per report with params as space-separated
// key=value pairs. Fields containing commas, quotes, or newlines are quoted
// per RFC 4180.
// ---------------------------------------------------------------------------

std::string to_csv(const IntTable& t);
std::string to_csv(const RatTable& t);
std::string to_csv(const QTable& t);
std::string to_csv(const SchmidtRow& row);
std::string to_csv(const ProofReport& rep);
std::string to_csv(const std::vector<ProofReport>& reps);
std::string to_csv(const DiscoveredS& row);
std::string to_csv(const std::vector<DiscoveredS>& rows); // (k, i, j, value)
std::string to_csv(const RecurrenceCandidate& cand);      // (l, e, coefficient)

// ---------------------------------------------------------------------------
// Plain — one human-readable block per object, newline-terminated.
// ---------------------------------------------------------------------------

std::string to_plain(const IntTable& t);
std::string to_plain(const RatTable& t);
std::string to_plain(const QTable& t);
std::string to_plain(const SchmidtRow& row);
std::string to_plain(const ProofReport& rep);
std::string to_plain(const std::vector<ProofReport>& reps);
std::string to_plain(const DiscoveredS& row);
std::string to_plain(const std::vector<DiscoveredS>& rows);
std::string to_plain(const RecurrenceCandidate& cand);
std::string to_plain(const ProbeReport& rep);

} // namespace qexpand
