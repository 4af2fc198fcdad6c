#pragma once

// JSON file formats shared by the CLI: automorphisms and surjectivity
// certificates. Both carry "version": 1; other versions are rejected.

#include "wreath/automorphism.hpp"
#include "wreath/reidemeister.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>

namespace wreath {

inline constexpr int kSchemaVersion = 1;

/// Malformed or unsupported input file.
class FormatError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

nlohmann::json torsion_to_json(const TorsionElement& s);
TorsionElement torsion_from_json(const nlohmann::json& j, GroupParams params);

nlohmann::json automorphism_to_json(const WreathAutomorphism& a);
WreathAutomorphism automorphism_from_json(const nlohmann::json& j);

std::string render_automorphism(const WreathAutomorphism& a);
WreathAutomorphism parse_automorphism(const std::string& text);

struct CertificateFile {
  WreathAutomorphism automorphism;
  SurjectivityCertificate certificate;
};

nlohmann::json certificate_to_json(const WreathAutomorphism& a, const SurjectivityCertificate& cert);
CertificateFile certificate_from_json(const nlohmann::json& j);

std::string render_certificate(const WreathAutomorphism& a, const SurjectivityCertificate& cert);
CertificateFile parse_certificate(const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

} // namespace wreath
