#pragma once

// Input records (json-lines, brace matrices, two-column CSV) and report
// records (json, csv, table).

#include "algconc/core.hpp"
#include "algconc/exact_linalg.hpp"
#include "algconc/matrix.hpp"
#include "algconc/order_engine.hpp"

#include <cctype>
#include <iomanip>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace algconc {

enum class InputFormat { JsonLines, Brace, Csv };
enum class ReportFormat { Json, Csv, Table };

inline InputFormat input_format_from_string(const std::string& s) {
  if (s == "json") return InputFormat::JsonLines;
  if (s == "brace") return InputFormat::Brace;
  if (s == "csv") return InputFormat::Csv;
  throw std::invalid_argument("unknown input format \"" + s + "\"");
}

inline ReportFormat report_format_from_string(const std::string& s) {
  if (s == "json") return ReportFormat::Json;
  if (s == "csv") return ReportFormat::Csv;
  if (s == "table") return ReportFormat::Table;
  throw std::invalid_argument("unknown report format \"" + s + "\"");
}

/// One input item. A record that failed to parse or validate keeps its
/// place in the stream with `error` set.
struct InputRecord {
  std::string name;
  IntMat seifert_matrix;
  std::optional<bool> amphicheiral;
  std::size_t line = 0;
  std::string error;

  bool ok() const { return error.empty(); }
};

// ---------------------------------------------------------------------------
// Validation.

namespace detail {

/// Position (1-based row, col) where elimination of the square matrix s
/// fails to find a pivot, over Q when det = 0, else mod the least prime
/// dividing det.
inline std::pair<std::size_t, std::size_t> first_elimination_failure(const IntMat& s, const Integer& d) {
  const std::size_t n = s.rows();
  RatMat m = to_rational(s);
  std::optional<Integer> p;
  if (d != 0) p = prime_divisors(abs(d)).front();
  auto is_zero = [&](const Rational& x) {
    if (!p) return x == 0;
    return numerator(x) % *p == 0;  // denominators stay prime to p below
  };
  std::size_t row = 0;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = n;
    for (std::size_t i = row; i < n && piv == n; ++i)
      if (!is_zero(m(i, col))) piv = i;
    if (piv == n) return {row + 1, col + 1};
    for (std::size_t j = 0; j < n; ++j) std::swap(m(row, j), m(piv, j));
    for (std::size_t i = row + 1; i < n; ++i) {
      if (m(i, col) == 0) continue;
      const Rational f = m(i, col) / m(row, col);
      for (std::size_t j = col; j < n; ++j) m(i, j) -= f * m(row, j);
    }
    ++row;
  }
  return {n, n};
}

}  // namespace detail

/// Empty string when v is a Seifert matrix, else the reason.
inline std::string seifert_condition_error(const IntMat& v) {
  if (!v.is_square()) return "matrix is not square";
  if (v.rows() % 2 != 0) return "matrix has odd size " + std::to_string(v.rows());
  if (v.rows() == 0) return "";
  const IntMat s = v - v.transpose();
  const Integer d = det(s);
  if (d == 1 || d == -1) return "";
  auto [r, c] = detail::first_elimination_failure(s, d);
  return "det(V - V^t) = " + d.str() + ", expected +-1 (elimination of V - V^t fails at row " + std::to_string(r) +
         ", col " + std::to_string(c) + ")";
}

// ---------------------------------------------------------------------------
// Parsing.

namespace detail {

inline std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

/// Rows of integers from a JSON array of arrays.
inline std::vector<std::vector<Integer>> rows_from_json(const json& j) {
  if (!j.is_array()) throw std::invalid_argument("seifert_matrix must be an array of rows");
  std::vector<std::vector<Integer>> rows;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_array()) throw std::invalid_argument("row " + std::to_string(i + 1) + " is not an array");
    std::vector<Integer> row;
    for (std::size_t k = 0; k < j[i].size(); ++k) {
      const json& x = j[i][k];
      if (x.is_number_integer()) {
        row.push_back(Integer(x.get<std::int64_t>()));
      } else if (x.is_number_float() && x.get<double>() == static_cast<double>(static_cast<std::int64_t>(x.get<double>())) &&
                 std::abs(x.get<double>()) < 9.0e15) {
        row.push_back(Integer(static_cast<std::int64_t>(x.get<double>())));
      } else {
        throw std::invalid_argument("entry (" + std::to_string(i + 1) + "," + std::to_string(k + 1) +
                                    ") is not an integer: " + x.dump());
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

/// Rows from a brace "{{a,b},{c,d}}" or bracket "[[a,b],[c,d]]" literal.
inline std::vector<std::vector<Integer>> rows_from_literal(const std::string& text) {
  const std::string s = trim(text);
  if (s.empty()) throw std::invalid_argument("empty matrix");
  const char open = s.front();
  if (open != '{' && open != '[') throw std::invalid_argument("matrix must start with '{' or '['");
  const char close = open == '{' ? '}' : ']';
  std::vector<std::vector<Integer>> rows;
  std::size_t i = 1;
  auto skip_ws = [&] {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  };
  auto expect = [&](char c) {
    skip_ws();
    if (i >= s.size() || s[i] != c)
      throw std::invalid_argument(std::string("expected '") + c + "' at position " + std::to_string(i + 1));
    ++i;
  };
  skip_ws();
  if (i < s.size() && s[i] == close) {
    ++i;
  } else {
    for (;;) {
      expect(open);
      std::vector<Integer> row;
      skip_ws();
      if (i < s.size() && s[i] == close) {
        ++i;
      } else {
        for (;;) {
          skip_ws();
          std::size_t start = i;
          if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
          while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
          const std::string tok = s.substr(start, i - start);
          if (tok.empty() || tok == "-" || tok == "+") {
            std::size_t end = s.find_first_of(",}]", start);
            throw std::invalid_argument("entry (" + std::to_string(rows.size() + 1) + "," + std::to_string(row.size() + 1) +
                                        ") is not an integer: \"" + trim(s.substr(start, end - start)) + "\"");
          }
          row.push_back(Integer(tok[0] == '+' ? tok.substr(1) : tok));
          skip_ws();
          if (i < s.size() && s[i] == ',') {
            ++i;
            continue;
          }
          if (i < s.size() && s[i] == close) {
            ++i;
            break;
          }
          std::size_t end = s.find_first_of(",}]", start);
          throw std::invalid_argument("entry (" + std::to_string(rows.size() + 1) + "," + std::to_string(row.size()) +
                                      ") is not an integer: \"" + trim(s.substr(start, end - start)) + "\"");
        }
      }
      rows.push_back(std::move(row));
      skip_ws();
      if (i < s.size() && s[i] == ',') {
        ++i;
        continue;
      }
      expect(close);
      break;
    }
  }
  skip_ws();
  if (i != s.size()) throw std::invalid_argument("trailing characters after matrix");
  return rows;
}

inline IntMat matrix_from_rows(const std::vector<std::vector<Integer>>& rows) {
  for (std::size_t i = 0; i < rows.size(); ++i)
    if (rows[i].size() != rows.size())
      throw std::invalid_argument("row " + std::to_string(i + 1) + " has " + std::to_string(rows[i].size()) +
                                  " entries, expected " + std::to_string(rows.size()));
  return rows.empty() ? IntMat(0, 0) : IntMat::from_rows(rows);
}

/// Fields of one CSV record (double-quoted fields may contain commas and "").
inline std::vector<std::string> csv_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (quoted) throw std::invalid_argument("unterminated quoted field");
  out.push_back(cur);
  return out;
}

inline std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline void finish_record(InputRecord& r, const std::vector<std::vector<Integer>>& rows) {
  r.seifert_matrix = matrix_from_rows(rows);
  r.error = seifert_condition_error(r.seifert_matrix);
}

}  // namespace detail

inline std::vector<InputRecord> parse_input(std::istream& in, InputFormat format) {
  std::vector<InputRecord> out;
  std::string line;
  std::size_t lineno = 0;
  bool first_data_line = true;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::string t = detail::trim(line);
    if (t.empty() || t[0] == '#') continue;
    InputRecord r;
    r.line = lineno;
    r.name = "line " + std::to_string(lineno);
    try {
      switch (format) {
        case InputFormat::JsonLines: {
          json j;
          try {
            j = json::parse(t);
          } catch (const json::parse_error& e) {
            throw std::invalid_argument(std::string("malformed JSON: ") + e.what());
          }
          if (!j.is_object()) throw std::invalid_argument("record is not a JSON object");
          if (j.contains("name")) {
            if (!j["name"].is_string()) throw std::invalid_argument("name must be a string");
            r.name = j["name"].get<std::string>();
          }
          if (j.contains("amphicheiral") && !j["amphicheiral"].is_null()) {
            if (!j["amphicheiral"].is_boolean()) throw std::invalid_argument("amphicheiral must be a boolean");
            r.amphicheiral = j["amphicheiral"].get<bool>();
          }
          if (!j.contains("seifert_matrix")) throw std::invalid_argument("missing seifert_matrix");
          detail::finish_record(r, detail::rows_from_json(j["seifert_matrix"]));
          break;
        }
        case InputFormat::Brace: {
          // Optional leading name, then the matrix literal.
          const std::size_t at = t.find_first_of("{[");
          if (at == std::string::npos) throw std::invalid_argument("no matrix literal on line");
          std::string name = detail::trim(t.substr(0, at));
          while (!name.empty() && (name.back() == ',' || name.back() == ':')) name.pop_back();
          name = detail::trim(name);
          if (!name.empty()) r.name = name;
          detail::finish_record(r, detail::rows_from_literal(t.substr(at)));
          break;
        }
        case InputFormat::Csv: {
          std::vector<std::string> f = detail::csv_fields(t);
          if (f.size() != 2) throw std::invalid_argument("expected 2 CSV columns (name, matrix), got " + std::to_string(f.size()));
          const std::string m = detail::trim(f[1]);
          if (first_data_line && (m.empty() || (m[0] != '{' && m[0] != '['))) {
            first_data_line = false;
            continue;  // header row
          }
          r.name = detail::trim(f[0]);
          detail::finish_record(r, detail::rows_from_literal(m));
          break;
        }
      }
    } catch (const std::exception& e) {
      r.error = e.what();
    }
    first_data_line = false;
    out.push_back(std::move(r));
  }
  return out;
}

inline std::vector<InputRecord> parse_input(const std::string& text, InputFormat format) {
  std::istringstream in(text);
  return parse_input(in, format);
}

// ---------------------------------------------------------------------------
// Reports.

struct ReportRecord {
  std::string name;
  std::optional<Order> order;  ///< absent when the item failed
  std::string reason;          ///< Undetermined blocking condition
  std::string rule;            ///< rule tag of the decisive certificate step
  std::vector<CertificateStep> certificate;
  double seconds = 0;
  std::string error;
  std::optional<bool> verified;  ///< set when certificates were replayed

  friend bool operator==(const ReportRecord&, const ReportRecord&) = default;
};

/// Pinned sign conventions carried in every report header.
inline json report_conventions() {
  return {{"alexander_polynomial", "Delta_V(t) = det(V - t V^t)"},
          {"isometric_structure", "Q = V + V^t, T = V^{-1} V^t, det(tI - T) = Delta_V / det V"},
          {"signature", "sign((1 - w) V + (1 - conj w) V^t) at w = c + i sqrt(1 - c^2), c in (-1, 1)"},
          {"orders", "slice | 2 | 4 | infinite | undetermined"}};
}

inline json to_json(const CertificateStep& s) {
  return {{"rule", s.rule}, {"witnesses", s.witnesses}, {"verifiable", s.verifiable}};
}

inline CertificateStep step_from_json(const json& j) {
  return {j.at("rule").get<std::string>(), j.at("witnesses"), j.at("verifiable").get<bool>()};
}

inline json to_json(const ReportRecord& r) {
  json j = {{"name", r.name}, {"seconds", r.seconds}};
  if (r.order) j["order"] = to_string(*r.order);
  if (!r.reason.empty()) j["reason"] = r.reason;
  if (!r.rule.empty()) j["rule"] = r.rule;
  if (!r.error.empty()) j["error"] = r.error;
  if (r.verified) j["verified"] = *r.verified;
  if (!r.certificate.empty()) {
    json steps = json::array();
    for (const auto& s : r.certificate) steps.push_back(to_json(s));
    j["certificate"] = steps;
  }
  return j;
}

inline ReportRecord record_from_json(const json& j) {
  ReportRecord r;
  r.name = j.at("name").get<std::string>();
  r.seconds = j.value("seconds", 0.0);
  if (j.contains("order")) r.order = order_from_string(j["order"].get<std::string>());
  r.reason = j.value("reason", std::string());
  r.rule = j.value("rule", std::string());
  r.error = j.value("error", std::string());
  if (j.contains("verified")) r.verified = j["verified"].get<bool>();
  if (j.contains("certificate"))
    for (const auto& s : j["certificate"]) r.certificate.push_back(step_from_json(s));
  return r;
}

inline json report_to_json(const std::vector<ReportRecord>& records) {
  json rs = json::array();
  for (const auto& r : records) rs.push_back(to_json(r));
  return {{"conventions", report_conventions()}, {"records", rs}};
}

inline std::vector<ReportRecord> report_from_json(const json& j) {
  std::vector<ReportRecord> out;
  for (const auto& r : j.at("records")) out.push_back(record_from_json(r));
  return out;
}

inline void write_conventions(std::ostream& os) {
  const json conv = report_conventions();
  for (const auto& [k, v] : conv.items()) os << "# " << k << ": " << v.get<std::string>() << "\n";
}

inline void write_report(std::ostream& os, const std::vector<ReportRecord>& records, ReportFormat format) {
  switch (format) {
    case ReportFormat::Json:
      os << report_to_json(records).dump(2) << "\n";
      return;
    case ReportFormat::Csv: {
      write_conventions(os);
      os << "name,order,rule,reason,seconds,verified,error,certificate\n";
      for (const auto& r : records) {
        json steps = json::array();
        for (const auto& s : r.certificate) steps.push_back(to_json(s));
        std::ostringstream secs;
        secs << std::setprecision(17) << r.seconds;
        os << detail::csv_escape(r.name) << "," << (r.order ? to_string(*r.order) : "") << "," << detail::csv_escape(r.rule) << ","
           << detail::csv_escape(r.reason)
           << "," << secs.str() << "," << (r.verified ? (*r.verified ? "true" : "false") : "") << ","
           << detail::csv_escape(r.error) << "," << (r.certificate.empty() ? "" : detail::csv_escape(steps.dump())) << "\n";
      }
      return;
    }
    case ReportFormat::Table: {
      write_conventions(os);
      std::size_t w = 4;
      for (const auto& r : records) w = std::max(w, r.name.size());
      os << std::left << std::setw(static_cast<int>(w)) << "name" << "  " << std::setw(12) << "order" << "  detail\n";
      for (const auto& r : records) {
        std::string detail = !r.error.empty() ? "error: " + r.error : r.reason;
        if (detail.empty()) detail = r.rule;
        if (r.verified && !*r.verified) detail += " [certificate replay FAILED]";
        os << std::left << std::setw(static_cast<int>(w)) << r.name << "  " << std::setw(12)
           << (r.order ? to_string(*r.order) : "error") << "  " << detail << "\n";
      }
      return;
    }
  }
}

/// Inverse of the CSV report writer.
inline std::vector<ReportRecord> parse_csv_report(std::istream& in) {
  std::vector<ReportRecord> out;
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (header) {
      header = false;
      continue;
    }
    std::vector<std::string> f = detail::csv_fields(line);
    if (f.size() != 8) throw std::invalid_argument("report row has " + std::to_string(f.size()) + " columns, expected 8");
    ReportRecord r;
    r.name = f[0];
    if (!f[1].empty()) r.order = order_from_string(f[1]);
    r.rule = f[2];
    r.reason = f[3];
    r.seconds = std::stod(f[4]);
    if (!f[5].empty()) r.verified = f[5] == "true";
    r.error = f[6];
    if (!f[7].empty())
      for (const auto& s : json::parse(f[7])) r.certificate.push_back(step_from_json(s));
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace algconc
