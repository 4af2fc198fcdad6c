#include "wreath/io.hpp"

#include <fstream>
#include <sstream>

namespace wreath {

using nlohmann::json;

namespace {

template <typename T>
T field(const json& j, const char* name) {
  if (!j.is_object() || !j.contains(name))
    throw FormatError(std::string("missing field '") + name + "'");
  try {
    return j.at(name).get<T>();
  } catch (const json::exception& e) {
    throw FormatError(std::string("field '") + name + "': " + e.what());
  }
}

void check_version(const json& j) {
  auto v = field<int>(j, "version");
  if (v != kSchemaVersion)
    throw FormatError("unsupported schema version " + std::to_string(v));
}

json point_to_json(const LatticeVector& x) { return x.coords(); }

LatticeVector point_from_json(const json& j, int rank) {
  if (!j.is_array() || static_cast<int>(j.size()) != rank)
    throw FormatError("lattice point must be an array of " + std::to_string(rank) + " integers");
  try {
    return LatticeVector(j.get<std::vector<std::int64_t>>());
  } catch (const json::exception& e) {
    throw FormatError(std::string("lattice point: ") + e.what());
  }
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("invalid JSON: ") + e.what());
  }
}

const char* kind_name(CertificateKind k) {
  switch (k) {
  case CertificateKind::OrbitUniform:
    return "orbit-uniform";
  case CertificateKind::TranslationUniform:
    return "translation-uniform";
  case CertificateKind::None:
    break;
  }
  return "none";
}

} // namespace

json torsion_to_json(const TorsionElement& s) {
  json out = json::array();
  for (const auto& [x, c] : s.support())
    out.push_back({{"coeff", c}, {"point", point_to_json(x)}});
  return out;
}

TorsionElement torsion_from_json(const json& j, GroupParams params) {
  if (!j.is_array())
    throw FormatError("torsion element must be an array of {coeff, point}");
  TorsionElement s(params);
  for (const auto& term : j)
    s.add_term(point_from_json(term.contains("point") ? term.at("point") : json(), params.rank),
               field<std::int64_t>(term, "coeff"));
  return s;
}

json automorphism_to_json(const WreathAutomorphism& a) {
  json cocycle = json::array();
  for (const auto& t : a.cocycle())
    cocycle.push_back(torsion_to_json(t));
  return {{"version", kSchemaVersion},
          {"modulus", a.params().modulus},
          {"rank", a.params().rank},
          {"matrix", a.matrix().to_rows()},
          {"u", torsion_to_json(a.u())},
          {"cocycle", cocycle}};
}

// Wrong-typed or missing values surface from the json library; report them
// as format errors like every other malformed input.
template <class F>
static auto reading(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw FormatError(e.what());
  }
}

static WreathAutomorphism read_automorphism(const json& j) {
  check_version(j);
  GroupParams params;
  try {
    params = GroupParams(field<std::int64_t>(j, "modulus"), field<int>(j, "rank"));
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
  auto rows = field<std::vector<std::vector<std::int64_t>>>(j, "matrix");
  if (static_cast<int>(rows.size()) != params.rank)
    throw FormatError("matrix must have " + std::to_string(params.rank) + " rows");
  for (const auto& r : rows)
    if (static_cast<int>(r.size()) != params.rank)
      throw FormatError("matrix rows must have " + std::to_string(params.rank) + " entries");
  auto u = torsion_from_json(j.at("u"), params);
  if (!j.contains("cocycle") || !j.at("cocycle").is_array() ||
      static_cast<int>(j.at("cocycle").size()) != params.rank)
    throw FormatError("cocycle must list " + std::to_string(params.rank) + " torsion elements");
  std::vector<TorsionElement> cocycle;
  for (const auto& t : j.at("cocycle"))
    cocycle.push_back(torsion_from_json(t, params));
  return {params, IntegerMatrix::from_rows(rows), std::move(u), std::move(cocycle)};
}

std::string render_automorphism(const WreathAutomorphism& a) { return automorphism_to_json(a).dump(2) + "\n"; }

WreathAutomorphism parse_automorphism(const std::string& text) { return automorphism_from_json(parse_json(text)); }

json certificate_to_json(const WreathAutomorphism& a, const SurjectivityCertificate& cert) {
  json witnesses = json::array();
  for (const auto& w : cert.witnesses)
    witnesses.push_back({{"point", point_to_json(w.point)}, {"preimage", torsion_to_json(w.preimage)}});
  json out = {{"version", kSchemaVersion},
              {"automorphism", automorphism_to_json(a)},
              {"status", cert.certified() ? "certified" : "unknown"},
              {"method", kind_name(cert.kind)},
              {"radius", cert.radius},
              {"witnesses", witnesses},
              {"diagnostics", cert.diagnostics}};
  if (cert.kind == CertificateKind::OrbitUniform) {
    json orbits = json::array();
    for (const auto& [len, coeffs] : cert.orbit_templates)
      orbits.push_back({{"length", len}, {"coefficients", coeffs}});
    out["template"] = {{"multiplier", cert.multiplier}, {"orbits", orbits}};
  } else if (cert.kind == CertificateKind::TranslationUniform && cert.translation_preimage) {
    out["template"] = {{"preimage", torsion_to_json(*cert.translation_preimage)}};
  }
  return out;
}

static CertificateFile read_certificate(const json& j) {
  check_version(j);
  if (!j.contains("automorphism"))
    throw FormatError("missing field 'automorphism'");
  auto a = automorphism_from_json(j.at("automorphism"));
  SurjectivityCertificate cert;
  auto status = field<std::string>(j, "status");
  if (status == "certified")
    cert.status = CertificateStatus::Certified;
  else if (status == "unknown")
    cert.status = CertificateStatus::Unknown;
  else
    throw FormatError("unknown certificate status '" + status + "'");
  auto method = field<std::string>(j, "method");
  if (method == "orbit-uniform")
    cert.kind = CertificateKind::OrbitUniform;
  else if (method == "translation-uniform")
    cert.kind = CertificateKind::TranslationUniform;
  else if (method == "none")
    cert.kind = CertificateKind::None;
  else
    throw FormatError("unknown certificate method '" + method + "'");
  cert.radius = field<std::int64_t>(j, "radius");
  if (j.contains("diagnostics"))
    cert.diagnostics = field<std::string>(j, "diagnostics");
  if (!j.contains("witnesses") || !j.at("witnesses").is_array())
    throw FormatError("missing witness list");
  for (const auto& w : j.at("witnesses")) {
    if (!w.contains("point") || !w.contains("preimage"))
      throw FormatError("witness needs 'point' and 'preimage'");
    cert.witnesses.push_back(
        {point_from_json(w.at("point"), a.params().rank), torsion_from_json(w.at("preimage"), a.params())});
  }
  if (j.contains("template")) {
    const auto& t = j.at("template");
    if (cert.kind == CertificateKind::OrbitUniform) {
      cert.multiplier = field<std::int64_t>(t, "multiplier");
      for (const auto& o : field<json>(t, "orbits"))
        cert.orbit_templates[field<unsigned>(o, "length")] = field<std::vector<std::int64_t>>(o, "coefficients");
    } else if (cert.kind == CertificateKind::TranslationUniform) {
      cert.translation_preimage = torsion_from_json(field<json>(t, "preimage"), a.params());
    }
  }
  return {std::move(a), std::move(cert)};
}

WreathAutomorphism automorphism_from_json(const json& j) {
  return reading([&] { return read_automorphism(j); });
}

CertificateFile certificate_from_json(const json& j) {
  return reading([&] { return read_certificate(j); });
}

std::string render_certificate(const WreathAutomorphism& a, const SurjectivityCertificate& cert) {
  return certificate_to_json(a, cert).dump(2) + "\n";
}

CertificateFile parse_certificate(const std::string& text) { return certificate_from_json(parse_json(text)); }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw FormatError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw FormatError("cannot write " + path);
  out << text;
}

} // namespace wreath
