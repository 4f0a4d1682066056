#pragma once

// JSON matrix documents:
//   {"n": 3, "entries": [[[re, im], ...], ...], "metadata": {"key": "value"}}
// Numbers are written in shortest round-trip form, so serialize -> parse
// reproduces every double exactly.

#include <map>
#include <string>

#include "json.hpp"

#include "invdec/bench.hpp"
#include "invdec/smallmat.hpp"

namespace invdec {

using Json = nlohmann::ordered_json;

struct MatrixDocument {
  ComplexMat matrix;
  std::map<std::string, std::string> metadata;
};

inline Json matrix_to_json(const ComplexMat& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.dim(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.dim(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

inline Json to_json(const MatrixDocument& doc) {
  Json j;
  j["n"] = doc.matrix.dim();
  j["entries"] = matrix_to_json(doc.matrix);
  if (!doc.metadata.empty()) j["metadata"] = doc.metadata;
  return j;
}

namespace detail {

[[noreturn]] inline void bad_document(const std::string& what) {
  throw Error(ErrorCode::InvalidInput, "matrix document: " + what);
}

inline double finite_number(const Json& v, const std::string& where) {
  if (!v.is_number()) bad_document(where + " is not a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) bad_document(where + " is not finite");
  return x;
}

}  // namespace detail

inline MatrixDocument parse_document(const Json& j) {
  if (!j.is_object()) detail::bad_document("expected an object");
  if (!j.contains("n") || !j["n"].is_number_integer()) {
    detail::bad_document("missing integer field 'n'");
  }
  const auto n = j["n"].get<long long>();
  if (n < kMinDim || n > kMaxDim) {
    throw Error(ErrorCode::DimensionMismatch,
                "matrix document: n = " + std::to_string(n) + " outside [2, 8]");
  }
  if (!j.contains("entries") || !j["entries"].is_array()) {
    detail::bad_document("missing array field 'entries'");
  }
  const Json& rows = j["entries"];
  if (static_cast<long long>(rows.size()) != n) {
    throw Error(ErrorCode::DimensionMismatch, "matrix document: row count differs from n");
  }
  MatrixDocument doc;
  doc.matrix = ComplexMat(static_cast<int>(n));
  for (int r = 0; r < n; ++r) {
    const Json& row = rows[r];
    if (!row.is_array() || static_cast<long long>(row.size()) != n) {
      throw Error(ErrorCode::DimensionMismatch,
                  "matrix document: row " + std::to_string(r) + " has the wrong length");
    }
    for (int c = 0; c < n; ++c) {
      const Json& e = row[c];
      const std::string where = "entry (" + std::to_string(r) + ", " + std::to_string(c) + ")";
      if (!e.is_array() || e.size() != 2) detail::bad_document(where + " is not [re, im]");
      doc.matrix(r, c) = Complex(detail::finite_number(e[0], where),
                                 detail::finite_number(e[1], where));
    }
  }
  if (j.contains("metadata")) {
    const Json& meta = j["metadata"];
    if (!meta.is_object()) detail::bad_document("'metadata' must be an object");
    for (const auto& [key, value] : meta.items()) {
      if (!value.is_string()) detail::bad_document("metadata values must be strings");
      doc.metadata[key] = value.get<std::string>();
    }
  }
  return doc;
}

inline MatrixDocument parse_document(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    detail::bad_document(std::string("invalid JSON: ") + e.what());
  }
  return parse_document(j);
}

inline Json to_json(const BenchReport& r) {
  Json j;
  j["task"] = r.task;
  j["method"] = r.method;
  j["regime"] = r.regime;
  j["seed"] = r.seed;
  j["n_samples"] = r.n_samples;
  j["median_ns"] = r.median_ns;
  j["p10_ns"] = r.p10_ns;
  j["p90_ns"] = r.p90_ns;
  j["max_rel_err"] = r.max_rel_err;
  j["median_rel_err"] = r.median_rel_err;
  j["failures"] = r.failures;
  j["failure_codes"] = r.failure_codes;
  return j;
}

inline Json error_document(const Error& e) {
  Json j;
  j["error"]["code"] = std::string(to_string(e.code()));
  j["error"]["message"] = e.what();
  return j;
}

}  // namespace invdec
