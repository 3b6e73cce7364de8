#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bikoeff/bounds.hpp"
#include "bikoeff/oracle.hpp"

namespace bikoeff {

inline constexpr const char* kSchemaVersion = "1";

struct ReportRow {
  std::string coefficient;  ///< "a2".."a5"
  double bound = 0.0;
  std::optional<std::string> branch;  ///< case_a / case_b; absent for a5
  std::optional<std::string> route;   ///< route_one / route_two / min; absent for a5
  std::map<std::string, double> constants;
  std::optional<std::string> variant;  ///< a5 only
  std::optional<double> route_one;
  std::optional<double> route_two;
  std::optional<double> oracle_best;
  std::optional<double> slack;

  bool operator==(const ReportRow&) const = default;
};

struct Provenance {
  /// Which family of closed forms produced the rows, e.g. "st_theorem".
  std::string anchor;
  /// Default a5 variant, when a5 rows are present.
  std::optional<std::string> variant;

  bool operator==(const Provenance&) const = default;
};

struct ReportDocument {
  std::string schema_version = kSchemaVersion;
  std::string spec;
  std::vector<ReportRow> rows;
  Provenance provenance;

  bool operator==(const ReportDocument&) const = default;
};

/// Rounds to 15 significant digits, the precision every report number carries.
double round15(double x);

/// Rows for the requested coefficients (2..5). a5 needs st, lambda = 0 and the
/// order or strong generator, and yields one row per variant.
ReportDocument bounds_document(const ClassSpec& spec, const std::vector<Target>& coefficients);
/// Bound rows for the target, completed with the search result.
ReportDocument verify_document(const OracleReport& report);

/// The a5 variant a plain a5 query reports: proof for order rho, stated for strong beta.
A5Variant default_a5_variant(const ClassSpec& spec);

std::string to_json(const ReportDocument& doc, int indent = 2);
std::string to_json(const std::vector<ReportDocument>& docs, int indent = 2);
ReportDocument document_from_json(const std::string& text);
std::vector<ReportDocument> documents_from_json(const std::string& text);

/// RFC 4180; every row repeats the document columns so several documents can share one file.
std::string to_csv(const std::vector<ReportDocument>& docs);
std::vector<ReportDocument> documents_from_csv(const std::string& text);

std::string to_table(const ReportDocument& doc);

/// Search witness (p, q, a) as JSON, for violation dumps.
std::string witness_json(const OracleReport& report);

}  // namespace bikoeff
