#pragma once

// Text formats: the scan CSV, JSON views of reports, and the `a+bi`
// complex literal used on the command line.

#include <charconv>
#include <cmath>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "coprime/complex_special.hpp"
#include "coprime/error.hpp"
#include "coprime/f_series.hpp"
#include "coprime/mellin.hpp"

namespace coprime {

/// Shortest decimal that parses back to exactly x.
inline std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

inline std::optional<double> parse_double(std::string_view text) {
  if (text == "nan") return std::nan("");
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size()) return std::nullopt;
  return v;
}

/// Parse `a`, `a+bi`, `a-bi` or `bi` (no spaces).
inline Complex parse_complex(std::string_view text) {
  const auto bad = [&] { return InvalidArgument("cannot parse complex literal '" + std::string(text) + "'"); };
  if (text.empty()) throw bad();
  if (text.back() != 'i') {
    const auto re = parse_double(text);
    if (!re) throw bad();
    return {*re, 0.0};
  }
  const std::string_view body = text.substr(0, text.size() - 1);
  std::size_t split = std::string_view::npos;
  for (std::size_t i = body.size(); i-- > 1;) {
    if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  auto coefficient = [&](std::string_view s) -> std::optional<double> {
    if (s.empty() || s == "+") return 1.0;
    if (s == "-") return -1.0;
    if (s.front() == '+') s.remove_prefix(1);
    return parse_double(s);
  };
  if (split == std::string_view::npos) {
    const auto im = coefficient(body);
    if (!im) throw bad();
    return {0.0, *im};
  }
  const auto re = parse_double(body.substr(0, split));
  const auto im = coefficient(body.substr(split));
  if (!re || !im) throw bad();
  return {*re, *im};
}

inline std::string format_complex(Complex z) {
  std::string s = format_double(z.real());
  s += (std::signbit(z.imag()) ? "-" : "+");
  s += format_double(std::abs(z.imag()));
  s += "i";
  return s;
}

// ---------------------------------------------------------------------------
// Scan CSV
// ---------------------------------------------------------------------------

inline constexpr std::string_view kScanCsvHeader =
    "beta,f,f_err,p,e_f,e_p,scaled_e_f,smooth_residual";

inline void write_scan_csv(std::ostream& out, const std::vector<ScanRecord>& records) {
  out << kScanCsvHeader << '\n';
  for (const auto& r : records) {
    out << format_double(r.beta) << ',' << format_double(r.f_value) << ','
        << format_double(r.f_error_bound) << ',' << format_double(r.p_coprime) << ','
        << format_double(r.e_f) << ',' << format_double(r.e_p) << ','
        << format_double(r.scaled_e_f) << ',' << format_double(r.smooth_residual) << '\n';
  }
}

inline std::vector<ScanRecord> read_scan_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line)) throw FormatError("empty scan file", line_no);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kScanCsvHeader) throw FormatError("unexpected scan CSV header", line_no);
  std::vector<ScanRecord> out;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<double> v;
    std::string_view rest = line;
    while (true) {
      const std::size_t comma = rest.find(',');
      const auto cell = parse_double(rest.substr(0, comma));
      if (!cell) throw FormatError("bad numeric cell", line_no);
      v.push_back(*cell);
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (v.size() != 8) throw FormatError("expected 8 columns", line_no);
    ScanRecord r;
    r.beta = v[0];
    r.f_value = v[1];
    r.f_error_bound = v[2];
    r.p_coprime = v[3];
    r.e_f = v[4];
    r.e_p = v[5];
    r.scaled_e_f = v[6];
    r.smooth_residual = v[7];
    if (std::isnan(r.f_value)) r.error = "failed point";
    out.push_back(r);
  }
  return out;
}

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

inline nlohmann::json to_json(Complex z) { return {{"re", z.real()}, {"im", z.imag()}}; }

inline nlohmann::json to_json(const ContourReport& r) {
  return {{"top_piece", to_json(r.top_piece)},
          {"bottom_piece", to_json(r.bottom_piece)},
          {"vertical_piece", to_json(r.vertical_piece)},
          {"main_piece", to_json(r.main_piece)},
          {"residue_at_2", r.residue_at_2},
          {"reconstruction_gap", r.reconstruction_gap}};
}

inline Complex complex_from_json(const nlohmann::json& j) {
  return {j.at("re").get<double>(), j.at("im").get<double>()};
}

inline ContourReport contour_report_from_json(const nlohmann::json& j) {
  ContourReport r;
  r.top_piece = complex_from_json(j.at("top_piece"));
  r.bottom_piece = complex_from_json(j.at("bottom_piece"));
  r.vertical_piece = complex_from_json(j.at("vertical_piece"));
  r.main_piece = complex_from_json(j.at("main_piece"));
  r.residue_at_2 = j.at("residue_at_2").get<double>();
  r.reconstruction_gap = j.at("reconstruction_gap").get<double>();
  return r;
}

}  // namespace coprime
