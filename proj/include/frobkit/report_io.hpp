#pragma once

// JSON and CSV renderings of verification reports. Every number that can
// exceed machine width is written as a decimal string.

#include <ostream>
#include <string>

#include <nlohmann/json.hpp>

#include "frobkit/bigint.hpp"
#include "frobkit/verifier.hpp"

namespace frobkit {

using Json = nlohmann::ordered_json;

namespace detail {

template <typename T>
Json string_or_null(const std::optional<T>& value) {
  if (!value) return nullptr;
  if constexpr (std::is_same_v<T, BigInt>) {
    return value->str();
  } else {
    return *value;
  }
}

}  // namespace detail

inline Json to_json(const Summary& s) {
  return Json{{"total", s.total},
              {"matched", s.matched},
              {"mismatched", s.mismatched},
              {"skipped_gcd", s.skipped_gcd},
              {"no_case", s.no_case},
              {"out_of_range", s.out_of_range},
              {"skipped_invalid", s.skipped_invalid},
              {"skipped_cost", s.skipped_cost}};
}

inline Json to_json(const PointResult& point) {
  return Json{{"a", point.params.a.str()},
              {"b", point.params.b.str()},
              {"c", point.params.c.str()},
              {"n", std::to_string(point.params.n)},
              {"p", std::to_string(point.p)},
              {"closed", detail::string_or_null(point.closed)},
              {"closed_error", detail::string_or_null(point.closed_error)},
              {"oracle", point.oracle.str()},
              {"case", detail::string_or_null(point.case_id)},
              {"match", point.match()}};
}

inline Json to_json(const SkippedTuple& skipped) {
  return Json{{"a", skipped.params.a.str()},
              {"b", skipped.params.b.str()},
              {"c", skipped.params.c.str()},
              {"n", std::to_string(skipped.params.n)},
              {"reason", to_string(skipped.reason)},
              {"detail", skipped.detail}};
}

inline Json to_json(const VerificationReport& report) {
  Json points = Json::array();
  for (const auto& p : report.points) points.push_back(to_json(p));
  Json skipped = Json::array();
  for (const auto& s : report.skipped) skipped.push_back(to_json(s));
  return Json{{"summary", to_json(report.summary)}, {"points", std::move(points)}, {"skipped", std::move(skipped)}};
}

inline void write_json(std::ostream& out, const VerificationReport& report) {
  out << to_json(report).dump(2) << '\n';
}

inline std::string csv_header() { return "a,b,c,n,p,closed,closed_error,oracle,case,match"; }

/// One row per point; empty fields stand for null.
inline void write_csv(std::ostream& out, const VerificationReport& report) {
  out << csv_header() << '\n';
  for (const auto& p : report.points) {
    out << p.params.a << ',' << p.params.b << ',' << p.params.c << ',' << p.params.n << ',' << p.p << ','
        << (p.closed ? p.closed->str() : "") << ',' << p.closed_error.value_or("") << ',' << p.oracle << ','
        << p.case_id.value_or("") << ',' << (p.match() ? "true" : "false") << '\n';
  }
}

inline void write_summary_text(std::ostream& out, const Summary& s) {
  out << "total " << s.total << ", matched " << s.matched << ", mismatched " << s.mismatched
      << ", no_case " << s.no_case << ", out_of_range " << s.out_of_range << ", skipped_gcd " << s.skipped_gcd
      << ", skipped_invalid " << s.skipped_invalid << ", skipped_cost " << s.skipped_cost << '\n';
}

}  // namespace frobkit
