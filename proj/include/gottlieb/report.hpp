#pragma once

// Machine-readable reports. Rationals are always "p/q" strings and every
// collection is emitted in canonical order, so equal inputs give equal bytes.

#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "gottlieb/algebra.hpp"
#include "gottlieb/derivation.hpp"
#include "gottlieb/fibration.hpp"
#include "gottlieb/linalg.hpp"

namespace gottlieb {

inline constexpr std::string_view kToolVersion = "0.1.0";

using Json = nlohmann::ordered_json;

/// Lower-case hex SHA-256.
std::string sha256_hex(std::string_view data);

struct ReportDocument {
  std::string command;
  std::string input_sha256;
  std::vector<int> degrees_checked;
  Json results = Json::array();
};

Json to_json(const ReportDocument& report);
/// Two-space indented JSON with a trailing newline.
std::string dump(const ReportDocument& report);

Json rational_json(const Rational& q);
Json vector_json(const Vector& v);
Json matrix_json(const RatMatrix& m);
/// {generator name: value} over generators with a nonzero value.
Json derivation_json(const PhiDerivation& theta);
/// Basis functionals, each as {generator name: coefficient} over nonzero entries.
Json functionals_json(const DgAlgebra& algebra, const EvaluationSubgroup& group);
/// "2*v5* - w4*"; zero prints as "0".
std::string format_functional(const DgAlgebra& algebra, const std::vector<GenIndex>& gens,
                              const Vector& coefficients);

Json sequence_json(const KsModel& model, const SequenceReport& report);
Json theta_class_json(const KsModel& model, const ThetaClass& cls);
Json holonomy_json(const KsModel& model, const HolonomyReport& report);

}  // namespace gottlieb
