#include "bikoeff/report.hpp"

#include <cmath>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

namespace bikoeff {

using nlohmann::json;

double round15(double x) {
  if (!std::isfinite(x)) return x;
  return std::stod(fmt::format("{:.15g}", x));
}

namespace {

std::string num(double x) { return fmt::format("{:.15g}", x); }

std::string anchor_for(const ClassSpec& spec) { return spec.op == OperatorKind::ST ? "st_theorem" : "m_theorem"; }

ReportRow bound_row(const BoundBreakdown& b, int n) {
  ReportRow row;
  row.coefficient = "a" + std::to_string(n);
  row.bound = round15(b.value);
  row.branch = to_string(b.branch);
  row.route = to_string(b.route);
  for (const auto& [k, v] : b.constants) row.constants[k] = round15(v);
  if (b.route_one) row.route_one = round15(*b.route_one);
  if (b.route_two) row.route_two = round15(*b.route_two);
  return row;
}

struct A5Source {
  bool order;  // order rho, else strong beta
  double param;
};

A5Source a5_source(const ClassSpec& spec) {
  if (spec.op == OperatorKind::ST && spec.lambda == 0) {
    if (spec.generator.family == GeneratorFamily::Order) return {true, spec.generator.param("rho").get_d()};
    if (spec.generator.family == GeneratorFamily::Strong) return {false, spec.generator.param("beta").get_d()};
  }
  throw DomainError("a5 bounds exist only for st:lambda=0 with the order or strong generator");
}

std::vector<ReportRow> a5_rows(const ClassSpec& spec) {
  const A5Source src = a5_source(spec);
  std::vector<ReportRow> rows;
  const std::vector<A5Variant> variants = src.order ? std::vector{A5Variant::Stated, A5Variant::Proof}
                                                    : std::vector{A5Variant::Stated, A5Variant::Rederived};
  for (A5Variant v : variants) {
    ReportRow row;
    row.coefficient = "a5";
    row.bound = round15(src.order ? st_rho_a5(src.param, v) : ss_beta_a5(src.param, v));
    row.variant = to_string(v);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

A5Variant default_a5_variant(const ClassSpec& spec) {
  return a5_source(spec).order ? A5Variant::Proof : A5Variant::Stated;
}

ReportDocument bounds_document(const ClassSpec& spec, const std::vector<Target>& coefficients) {
  if (coefficients.empty()) throw DomainError("no coefficients requested");
  ReportDocument doc;
  doc.spec = to_text(spec);
  doc.provenance.anchor = anchor_for(spec);
  std::optional<BoundSet> set;
  for (Target t : coefficients) {
    const int n = coefficient_index(t);
    if (t == Target::a5) {
      for (auto& row : a5_rows(spec)) doc.rows.push_back(std::move(row));
      doc.provenance.variant = to_string(default_a5_variant(spec));
    } else {
      if (!set) set = class_bounds(spec);
      doc.rows.push_back(bound_row(set->at(n), n));
    }
  }
  return doc;
}

ReportDocument verify_document(const OracleReport& report) {
  ReportDocument doc = bounds_document(report.spec, {report.target});
  for (ReportRow& row : doc.rows) {
    row.oracle_best = round15(report.best_value);
    row.slack = round15(row.bound - report.best_value);
  }
  return doc;
}

// ---------------------------------------------------------------------------
// JSON

namespace {

json row_json(const ReportRow& r) {
  json j;
  j["coefficient"] = r.coefficient;
  j["bound"] = r.bound;
  if (r.branch) j["branch"] = *r.branch;
  if (r.route) j["route"] = *r.route;
  j["constants"] = json::object();
  for (const auto& [k, v] : r.constants) j["constants"][k] = v;
  if (r.variant) j["variant"] = *r.variant;
  if (r.route_one) j["route_one"] = *r.route_one;
  if (r.route_two) j["route_two"] = *r.route_two;
  if (r.oracle_best) j["oracle_best"] = *r.oracle_best;
  if (r.slack) j["slack"] = *r.slack;
  return j;
}

json doc_json(const ReportDocument& d) {
  json j;
  j["schema_version"] = d.schema_version;
  j["spec"] = d.spec;
  j["rows"] = json::array();
  for (const auto& r : d.rows) j["rows"].push_back(row_json(r));
  j["provenance"] = {{"anchor", d.provenance.anchor}};
  if (d.provenance.variant) j["provenance"]["variant"] = *d.provenance.variant;
  return j;
}

template <typename T>
std::optional<T> opt(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<T>();
}

ReportDocument doc_from(const json& j) {
  ReportDocument d;
  d.schema_version = j.at("schema_version").get<std::string>();
  if (d.schema_version != kSchemaVersion) throw ParseError("unsupported schema_version " + d.schema_version);
  d.spec = j.at("spec").get<std::string>();
  for (const json& rj : j.at("rows")) {
    ReportRow r;
    r.coefficient = rj.at("coefficient").get<std::string>();
    r.bound = rj.at("bound").get<double>();
    r.branch = opt<std::string>(rj, "branch");
    r.route = opt<std::string>(rj, "route");
    if (rj.contains("constants")) {
      for (const auto& [k, v] : rj.at("constants").items()) r.constants[k] = v.get<double>();
    }
    r.variant = opt<std::string>(rj, "variant");
    r.route_one = opt<double>(rj, "route_one");
    r.route_two = opt<double>(rj, "route_two");
    r.oracle_best = opt<double>(rj, "oracle_best");
    r.slack = opt<double>(rj, "slack");
    d.rows.push_back(std::move(r));
  }
  const json& p = j.at("provenance");
  d.provenance.anchor = p.at("anchor").get<std::string>();
  d.provenance.variant = opt<std::string>(p, "variant");
  return d;
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace

std::string to_json(const ReportDocument& doc, int indent) { return doc_json(doc).dump(indent); }

std::string to_json(const std::vector<ReportDocument>& docs, int indent) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["documents"] = json::array();
  for (const auto& d : docs) j["documents"].push_back(doc_json(d));
  return j.dump(indent);
}

ReportDocument document_from_json(const std::string& text) {
  try {
    return doc_from(parse_json(text));
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed report: ") + e.what());
  }
}

std::vector<ReportDocument> documents_from_json(const std::string& text) {
  try {
    json j = parse_json(text);
    std::vector<ReportDocument> out;
    if (j.contains("documents")) {
      for (const json& d : j.at("documents")) out.push_back(doc_from(d));
    } else {
      out.push_back(doc_from(j));
    }
    return out;
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed report: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// CSV

namespace {

const std::vector<std::string> kCsvHeader = {
    "document", "schema_version", "spec",      "anchor",  "default_variant", "coefficient", "bound",
    "branch",   "route",          "route_one", "route_two", "variant",       "oracle_best", "slack", "constants"};

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string opt_num(const std::optional<double>& x) { return x ? num(*x) : ""; }

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool quoted = false, any = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    if (c == '"') {
      quoted = true;
      any = true;
    } else if (c == ',') {
      record.push_back(std::move(field));
      field.clear();
      any = true;
    } else if (c == '\r' || c == '\n') {
      if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
      if (any || !field.empty()) {
        record.push_back(std::move(field));
        records.push_back(std::move(record));
      }
      record.clear();
      field.clear();
      any = false;
    } else {
      field += c;
      any = true;
    }
  }
  if (quoted) throw ParseError("unterminated quoted CSV field");
  if (any || !field.empty()) {
    record.push_back(std::move(field));
    records.push_back(std::move(record));
  }
  return records;
}

std::optional<std::string> opt_str(const std::string& s) {
  return s.empty() ? std::nullopt : std::optional<std::string>(s);
}

double to_num(const std::string& s) {
  try {
    std::size_t used = 0;
    double x = std::stod(s, &used);
    if (used != s.size()) throw ParseError("bad number '" + s + "'");
    return x;
  } catch (const std::logic_error&) {
    throw ParseError("bad number '" + s + "'");
  }
}

std::optional<double> opt_dbl(const std::string& s) {
  return s.empty() ? std::nullopt : std::optional<double>(to_num(s));
}

}  // namespace

std::string to_csv(const std::vector<ReportDocument>& docs) {
  std::string out;
  for (std::size_t i = 0; i < kCsvHeader.size(); ++i) out += (i ? "," : "") + kCsvHeader[i];
  out += "\r\n";
  for (std::size_t di = 0; di < docs.size(); ++di) {
    const ReportDocument& d = docs[di];
    for (const auto& r : d.rows) {
      std::string constants;
      for (const auto& [k, v] : r.constants) constants += (constants.empty() ? "" : ";") + k + "=" + num(v);
      const std::vector<std::string> fields = {std::to_string(di),
                                               d.schema_version,
                                               d.spec,
                                               d.provenance.anchor,
                                               d.provenance.variant.value_or(""),
                                               r.coefficient,
                                               num(r.bound),
                                               r.branch.value_or(""),
                                               r.route.value_or(""),
                                               opt_num(r.route_one),
                                               opt_num(r.route_two),
                                               r.variant.value_or(""),
                                               opt_num(r.oracle_best),
                                               opt_num(r.slack),
                                               constants};
      for (std::size_t i = 0; i < fields.size(); ++i) out += (i ? "," : "") + csv_field(fields[i]);
      out += "\r\n";
    }
  }
  return out;
}

std::vector<ReportDocument> documents_from_csv(const std::string& text) {
  auto records = parse_csv(text);
  if (records.empty() || records[0] != kCsvHeader) throw ParseError("CSV header does not match the report layout");
  std::vector<ReportDocument> docs;
  for (std::size_t i = 1; i < records.size(); ++i) {
    const auto& f = records[i];
    if (f.size() != kCsvHeader.size()) throw ParseError("CSV row " + std::to_string(i) + " has the wrong field count");
    if (f[1] != kSchemaVersion) throw ParseError("unsupported schema_version " + f[1]);
    if (f[0] != std::to_string(docs.size()) && f[0] != std::to_string(docs.size() - 1)) {
      throw ParseError("CSV row " + std::to_string(i) + " has an out-of-order document number");
    }
    if (f[0] == std::to_string(docs.size())) {
      ReportDocument d;
      d.schema_version = f[1];
      d.spec = f[2];
      d.provenance = Provenance{f[3], opt_str(f[4])};
      docs.push_back(std::move(d));
    }
    ReportRow r;
    r.coefficient = f[5];
    r.bound = to_num(f[6]);
    r.branch = opt_str(f[7]);
    r.route = opt_str(f[8]);
    r.route_one = opt_dbl(f[9]);
    r.route_two = opt_dbl(f[10]);
    r.variant = opt_str(f[11]);
    r.oracle_best = opt_dbl(f[12]);
    r.slack = opt_dbl(f[13]);
    std::stringstream ss(f[14]);
    std::string item;
    while (std::getline(ss, item, ';')) {
      const auto eq = item.find('=');
      if (eq == std::string::npos) throw ParseError("bad constant '" + item + "'");
      r.constants[item.substr(0, eq)] = to_num(item.substr(eq + 1));
    }
    docs.back().rows.push_back(std::move(r));
  }
  return docs;
}

// ---------------------------------------------------------------------------
// Table

std::string to_table(const ReportDocument& doc) {
  std::vector<std::vector<std::string>> cells = {
      {"coeff", "bound", "branch", "route", "variant", "oracle_best", "slack"}};
  for (const auto& r : doc.rows) {
    cells.push_back({r.coefficient, num(r.bound), r.branch.value_or("-"), r.route.value_or("-"),
                     r.variant.value_or("-"), r.oracle_best ? num(*r.oracle_best) : "-",
                     r.slack ? num(*r.slack) : "-"});
  }
  std::vector<std::size_t> width(cells[0].size(), 0);
  for (const auto& row : cells) {
    for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
  }
  std::string out = "spec: " + doc.spec + "\n";
  for (const auto& row : cells) {
    std::string line;
    for (std::size_t i = 0; i < row.size(); ++i) line += fmt::format("{:<{}}  ", row[i], width[i]);
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out += line + "\n";
  }
  return out;
}

std::string witness_json(const OracleReport& report) {
  auto arr = [](const std::vector<Complex>& v) {
    json a = json::array();
    for (const Complex& c : v) a.push_back({c.real(), c.imag()});
    return a;
  };
  json j;
  j["spec"] = to_text(report.spec);
  j["target"] = to_string(report.target);
  j["best_value"] = report.best_value;
  j["bound_value"] = report.bound_value;
  j["sample_index"] = report.witness_index;
  j["p"] = arr(report.witness_p);
  j["q"] = arr(report.witness_q);
  j["a"] = arr(report.witness_a);
  return j.dump();
}

}  // namespace bikoeff
