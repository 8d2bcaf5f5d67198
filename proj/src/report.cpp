#include "gottlieb/report.hpp"

#include <openssl/evp.h>

#include <array>
#include <cstdio>

#include "gottlieb/error.hpp"

namespace gottlieb {

std::string sha256_hex(std::string_view data) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int length = 0;
  if (EVP_Digest(data.data(), data.size(), digest.data(), &length, EVP_sha256(), nullptr) != 1) {
    throw Error(ErrorKind::InternalInvariant, "SHA-256 digest failed");
  }
  std::string out;
  char byte[3];
  for (unsigned int i = 0; i < length; ++i) {
    std::snprintf(byte, sizeof byte, "%02x", digest[i]);
    out += byte;
  }
  return out;
}

Json to_json(const ReportDocument& report) {
  Json j;
  j["version"] = std::string(kToolVersion);
  j["input_sha256"] = report.input_sha256;
  j["command"] = report.command;
  j["degrees_checked"] = report.degrees_checked;
  j["results"] = report.results;
  return j;
}

std::string dump(const ReportDocument& report) { return to_json(report).dump(2) + "\n"; }

Json rational_json(const Rational& q) { return to_fraction_string(q); }

Json vector_json(const Vector& v) {
  Json out = Json::array();
  for (const auto& q : v) out.push_back(rational_json(q));
  return out;
}

Json matrix_json(const RatMatrix& m) {
  Json out = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) out.push_back(vector_json(m.row(r)));
  return out;
}

Json derivation_json(const PhiDerivation& theta) {
  Json out = Json::object();
  const auto& source = theta.source();
  for (GenIndex g = 0; g < source.size(); ++g) {
    const auto& value = theta.value(g);
    if (!value.is_zero()) {
      out[source.generator(g).name] = format_element(theta.target(), value);
    }
  }
  return out;
}

Json functionals_json(const DgAlgebra& algebra, const EvaluationSubgroup& group) {
  Json out = Json::array();
  for (const auto& f : group.functionals.basis()) {
    Json entry = Json::object();
    for (std::size_t i = 0; i < group.generators.size(); ++i) {
      if (f[i] != 0) entry[algebra.generator(group.generators[i]).name] = rational_json(f[i]);
    }
    out.push_back(std::move(entry));
  }
  return out;
}

std::string format_functional(const DgAlgebra& algebra, const std::vector<GenIndex>& gens,
                              const Vector& coefficients) {
  std::string out;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const auto& c = coefficients[i];
    if (c == 0) continue;
    const Rational magnitude = abs(c);
    if (out.empty()) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    if (magnitude != 1) out += magnitude.get_str() + "*";
    out += algebra.generator(gens[i]).name + "*";
  }
  return out.empty() ? "0" : out;
}

Json sequence_json(const KsModel& model, const SequenceReport& r) {
  Json j;
  j["degree"] = r.degree;
  j["fibre_gottlieb_dim"] = r.fibre_gottlieb_dim;
  j["evaluation_dim"] = r.evaluation_dim;
  j["base_dual_dim"] = r.base_dual_dim;
  j["fibre_gottlieb"] = functionals_json(model.fibre(), r.fibre_gottlieb);
  j["evaluation"] = functionals_json(model.total(), r.evaluation);
  Json base = Json::array();
  for (auto w : r.base_generators) base.push_back(model.base().generator(w).name);
  j["base_generators"] = std::move(base);
  j["linearized_j"] = matrix_json(r.linearized_j);
  j["linearized_p"] = matrix_json(r.linearized_p);
  j["exact_left"] = r.exact_left;
  j["exact_middle"] = r.exact_middle;
  j["exact_right"] = r.exact_right;
  j["exact"] = r.exact();
  j["gottlieb_homology_dim"] = r.gottlieb_homology_dim;
  return j;
}

Json theta_class_json(const KsModel& model, const ThetaClass& cls) {
  Json j;
  j["base_generator"] = model.base().generator(cls.base_generator).name;
  j["base_degree"] = cls.base_degree;
  j["derivation_degree"] = cls.base_degree - 1;
  j["is_boundary"] = cls.is_boundary;
  j["witness"] = cls.witness ? derivation_json(*cls.witness) : Json(nullptr);
  j["class_coordinates"] = vector_json(cls.class_coordinates);
  return j;
}

Json holonomy_json(const KsModel& model, const HolonomyReport& report) {
  Json j;
  j["base_generator"] = model.base().generator(report.base_generator).name;
  j["derivation_degree"] = report.derivation_degree;
  j["cohomology_dims"] = report.cohomology_dims;
  Json blocks = Json::array();
  for (const auto& b : report.blocks) {
    Json block;
    block["source_degree"] = b.source_degree;
    block["target_degree"] = b.target_degree;
    block["matrix"] = matrix_json(b.matrix);
    blocks.push_back(std::move(block));
  }
  j["blocks"] = std::move(blocks);
  return j;
}

}  // namespace gottlieb
