// wreath: command-line front end.
//
// Exit codes: 0 definite success, 1 input error, 2 property violation,
// 3 unknown / inconclusive.

#include "wreath/io.hpp"
#include "wreath/oracle.hpp"
#include "wreath/reidemeister.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <iostream>
#include <map>
#include <random>
#include <set>

namespace {

using namespace wreath;
using nlohmann::json;

enum Exit { kOk = 0, kInputError = 1, kViolation = 2, kUnknown = 3 };

class InputError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct CliConfig {
  std::string subcommand;
  std::int64_t n = 0;
  std::int64_t m = 0;
  int k = 0;
  std::string automorphism_path;
  std::string certificate_path;
  std::string output_path;
  std::int64_t radius = 8;
  std::string format = "text";
  std::uint64_t budget = finite::kDefaultBudget;
  std::vector<std::int64_t> divisors;
  std::vector<std::string> checks;
  bool inner = false;
  std::uint64_t shift_samples = 16;
};

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (const auto& p : parts)
    out += (out.empty() ? "" : "; ") + p;
  return out;
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

WreathAutomorphism load_automorphism(const std::string& path) {
  try {
    return parse_automorphism(read_file(path));
  } catch (const FormatError& e) {
    throw InputError(path + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw InputError(path + ": " + e.what());
  }
}

WreathAutomorphism load_valid_automorphism(const std::string& path) {
  auto a = load_automorphism(path);
  if (!a.is_valid())
    throw InputError(path + ": not an automorphism: " + join(a.report().failures));
  return a;
}

// Finite counts as numbers, "infinite" or "unknown" as strings.
json count_json(const std::optional<ExtendedNat>& r) {
  if (!r)
    return "unknown";
  if (r->is_infinite())
    return "infinite";
  return r->value();
}

// ---------------------------------------------------------------------------

int cmd_classify(const CliConfig& cfg) {
  const auto r = classify_r_infinity(cfg.n, cfg.k, cfg.radius);
  const bool finite_r = r.verdict == Verdict::AdmitsFinite;
  std::string path;
  if (finite_r) {
    path = cfg.output_path.empty()
               ? "automorphism_" + std::to_string(cfg.n) + "_" + std::to_string(cfg.k) + ".json"
               : cfg.output_path;
    write_file(path, render_automorphism(*r.automorphism));
  }
  const std::string value = r.reidemeister ? r.reidemeister->to_string() : "unknown";
  if (cfg.format == "json") {
    json j = {{"n", cfg.n}, {"k", cfg.k}, {"verdict", finite_r ? "admits-finite" : "R-infinity"}, {"reason", r.reason}};
    if (finite_r) {
      j["R"] = count_json(r.reidemeister);
      j["automorphism_file"] = path;
    }
    emit(j);
  } else if (finite_r) {
    std::cout << "n=" << cfg.n << " k=" << cfg.k << ": admits finite, R = " << value << "\n"
              << "witness automorphism: " << r.reason << "\n"
              << "automorphism written to " << path << "\n";
  } else {
    std::cout << "n=" << cfg.n << " k=" << cfg.k << ": R-infinity\n" << r.reason << "\n";
  }
  if (finite_r && !r.reidemeister)
    return kUnknown;
  return kOk;
}

int cmd_construct(const CliConfig& cfg) {
  WreathAutomorphism a = [&] {
    try {
      return construct_finite_R(cfg.n, cfg.k);
    } catch (const std::invalid_argument& e) {
      throw InputError(e.what());
    }
  }();
  const auto text = render_automorphism(a);
  if (cfg.output_path.empty())
    std::cout << text;
  else
    write_file(cfg.output_path, text);
  return kOk;
}

const char* method_name(CertificateKind k) {
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

int cmd_reidemeister(const CliConfig& cfg) {
  const auto a = load_valid_automorphism(cfg.automorphism_path);
  const auto r = reidemeister_full(a, cfg.radius);
  if (!cfg.certificate_path.empty() && r.certificate)
    write_file(cfg.certificate_path, render_certificate(a, *r.certificate));

  std::string status = "not needed";
  if (r.certificate)
    status = std::string(r.certificate->certified() ? "certified" : "unknown") + " (" +
             method_name(r.certificate->kind) + ")";
  const std::string value = r.value ? r.value->to_string() : "Unknown";
  if (cfg.format == "json") {
    json j = {{"R_quotient", count_json(r.abelian)}, {"R", count_json(r.value)}, {"diagnostics", r.diagnostics}};
    if (r.certificate)
      j["certificate"] = {{"status", r.certificate->certified() ? "certified" : "unknown"},
                          {"method", method_name(r.certificate->kind)}};
    emit(j);
  } else {
    std::cout << "R(quotient) = " << r.abelian.to_string() << "\n"
              << "certificate: " << status << "\n"
              << "R = " << value << "\n";
  }
  return r.value ? kOk : kUnknown;
}

int cmd_validate(const CliConfig& cfg) {
  const auto a = load_automorphism(cfg.automorphism_path);
  const auto& rep = a.report();
  if (cfg.format == "json") {
    emit({{"valid", rep.ok()},
          {"unimodular", rep.matrix_unimodular},
          {"unit", rep.u_is_unit},
          {"cocycle", rep.cocycle_consistent},
          {"failures", rep.failures}});
  } else {
    std::cout << "matrix unimodular: " << (rep.matrix_unimodular ? "yes" : "no") << "\n"
              << "u is a unit: " << (rep.u_is_unit ? "yes" : "no") << "\n"
              << "cocycle consistent: " << (rep.cocycle_consistent ? "yes" : "no") << "\n"
              << (rep.ok() ? "valid" : "invalid: " + join(rep.failures)) << "\n";
  }
  return rep.ok() ? kOk : kViolation;
}

int cmd_verify(const CliConfig& cfg) {
  CertificateFile file = [&] {
    try {
      return parse_certificate(read_file(cfg.certificate_path));
    } catch (const FormatError& e) {
      throw InputError(cfg.certificate_path + ": " + e.what());
    } catch (const std::invalid_argument& e) {
      throw InputError(cfg.certificate_path + ": " + e.what());
    }
  }();
  std::string failure;
  bool ok = file.automorphism.is_valid();
  if (!ok)
    failure = "automorphism fails validation: " + join(file.automorphism.report().failures);
  else
    ok = replay_witnesses(file.automorphism, file.certificate, &failure);
  const auto& cert = file.certificate;
  const int code = !ok ? kViolation : cert.certified() ? kOk : kUnknown;
  if (cfg.format == "json") {
    json j = {{"status", cert.certified() ? "certified" : "unknown"},
              {"witnesses", cert.witnesses.size()},
              {"replay", ok ? "PASS" : "FAIL"}};
    if (!ok)
      j["failure"] = failure;
    emit(j);
  } else if (ok) {
    std::cout << "replayed " << cert.witnesses.size() << " witnesses: PASS\n"
              << "status: " << (cert.certified() ? "certified" : "unknown") << "\n";
  } else {
    std::cout << "replay FAIL: " << failure << "\n";
  }
  return code;
}

// ---------------------------------------------------------------------------
// oracle

struct NamedAutomorphism {
  finite::FiniteAutomorphism f;
  std::string tag;
  std::optional<WreathAutomorphism> source;
};

std::vector<NamedAutomorphism> oracle_automorphisms(const CliConfig& cfg, const finite::FiniteWreathGroup& g) {
  std::vector<NamedAutomorphism> out;
  std::set<std::vector<finite::Index>> seen;
  auto add = [&](finite::FiniteAutomorphism f, std::string tag, std::optional<WreathAutomorphism> src) {
    if (seen.insert(f.map).second)
      out.push_back({std::move(f), std::move(tag), std::move(src)});
  };
  if (!cfg.automorphism_path.empty()) {
    auto a = load_valid_automorphism(cfg.automorphism_path);
    if (a.params() != g.params())
      throw InputError("automorphism is for n=" + std::to_string(a.params().modulus) +
                       ", k=" + std::to_string(a.params().rank) + ", not " + g.label());
    try {
      add(finite::descend_automorphism(g, a), "file", a);
    } catch (const finite::DescentError& e) {
      throw InputError(e.what());
    }
  } else {
    int i = 0;
    for (const auto& a : finite::zero_cocycle_automorphisms(g.modulus(), g.box_modulus(), g.rank()))
      add(finite::descend_automorphism(g, a), "f=" + std::to_string(i++), a);
  }
  if (cfg.inner) {
    for (finite::Index x = 0; x < g.order(); ++x)
      add(finite::inner_automorphism(g, x), "inner=" + std::to_string(x), std::nullopt);
  }
  return out;
}

std::vector<finite::Index> shift_elements(const CliConfig& cfg, const finite::FiniteWreathGroup& g) {
  std::vector<finite::Index> xs;
  if (g.order() <= 200) {
    for (finite::Index x = 0; x < g.order(); ++x)
      xs.push_back(x);
    return xs;
  }
  std::mt19937_64 rng(0x5eed);
  std::uniform_int_distribution<finite::Index> pick(0, static_cast<finite::Index>(g.order() - 1));
  std::set<finite::Index> chosen{0};
  while (chosen.size() < std::min<std::uint64_t>(cfg.shift_samples + 1, g.order()))
    chosen.insert(pick(rng));
  return {chosen.begin(), chosen.end()};
}

int cmd_oracle(const CliConfig& cfg) {
  static const std::set<std::string> known{"tbft", "shift", "projection", "restriction-bound"};
  auto checks = cfg.checks.empty() ? std::vector<std::string>{"tbft"} : cfg.checks;
  for (const auto& c : checks)
    if (!known.count(c))
      throw InputError("unknown check '" + c + "' (expected tbft, shift, projection, restriction-bound)");
  const bool projection = std::count(checks.begin(), checks.end(), "projection") > 0;
  if (!cfg.divisors.empty() && !projection)
    throw InputError("--divisor only applies to --check projection");

  const auto g = finite::build_group(cfg.n, cfg.m, cfg.k, cfg.budget);
  std::vector<std::int64_t> divisors = cfg.divisors;
  if (projection) {
    for (auto d : divisors)
      if (d < 2 || cfg.n % d != 0)
        throw InputError("--divisor " + std::to_string(d) + " is not a divisor >= 2 of " + std::to_string(cfg.n));
    if (divisors.empty()) {
      for (std::int64_t d = 2; d < cfg.n; ++d)
        if (cfg.n % d == 0)
          divisors.push_back(d);
      if (divisors.empty())
        divisors.push_back(cfg.n);
    }
  }
  std::map<std::int64_t, finite::FiniteWreathGroup> quotients;
  for (auto d : divisors)
    quotients.emplace(d, finite::build_group(d, cfg.m, cfg.k, cfg.budget));

  const auto autos = oracle_automorphisms(cfg, g);
  std::vector<finite::CheckResult> results;
  for (const auto& check : checks) {
    for (const auto& [f, tag, source] : autos) {
      if (check == "tbft") {
        results.push_back(finite::verify_tbft_finite(g, f, tag));
      } else if (check == "restriction-bound") {
        results.push_back(finite::verify_restriction_bound(g, f, tag));
      } else if (check == "shift") {
        for (auto x : shift_elements(cfg, g))
          results.push_back(finite::verify_shift_invariance(g, f, x, tag));
      } else if (check == "projection") {
        if (!source)
          continue; // inner automorphisms carry no Z_n wr Z^k source to project
        for (const auto& [d, small] : quotients) {
          auto f_small = finite::descend_automorphism(small, induce_quotient(*source, d));
          results.push_back(finite::verify_projection(g, small, f, f_small, tag));
        }
      }
    }
  }

  bool all = true;
  for (const auto& r : results)
    all = all && r.pass;
  if (cfg.format == "json") {
    json arr = json::array();
    for (const auto& r : results)
      arr.push_back(r.to_json());
    emit({{"group", g.label()}, {"order", g.order()}, {"checks", arr}, {"pass", all}});
  } else {
    for (const auto& r : results)
      std::cout << r.to_text() << "\n";
    std::cout << "SUMMARY " << g.label() << " " << (all ? "PASS" : "FAIL") << " " << results.size() << " checks\n";
  }
  return all ? kOk : kViolation;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations in Z_n wr Z^k: automorphisms, Reidemeister numbers, finite oracles", "wreath"};
  app.require_subcommand(1);
  CliConfig cfg;

  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  };
  auto add_n = [&](CLI::App* sub) { sub->add_option("n", cfg.n, "Coefficient modulus n >= 2")->required(); };
  auto add_k = [&](CLI::App* sub) { sub->add_option("k", cfg.k, "Lattice rank k >= 1")->required(); };

  auto* classify = app.add_subcommand("classify", "Decide the R-infinity property of Z_n wr Z^k");
  add_n(classify);
  add_k(classify);
  classify->add_option("--radius", cfg.radius, "Search radius for certificates");
  classify->add_option("--output", cfg.output_path, "Where to write the witness automorphism");
  add_format(classify);

  auto* construct = app.add_subcommand("construct", "Emit an automorphism with finite Reidemeister number");
  add_n(construct);
  add_k(construct);
  construct->add_option("--output", cfg.output_path, "Output file (default: stdout)");

  auto* reidemeister = app.add_subcommand("reidemeister", "Reidemeister number of an automorphism file");
  reidemeister->add_option("automorphism", cfg.automorphism_path, "Automorphism JSON file")->required();
  reidemeister->add_option("--radius", cfg.radius, "Search radius for certificates");
  reidemeister->add_option("--certificate", cfg.certificate_path, "Write the surjectivity certificate here");
  add_format(reidemeister);

  auto* oracle = app.add_subcommand("oracle", "Brute-force checks on the truncation Z_n wr (Z/m)^k");
  add_n(oracle);
  oracle->add_option("m", cfg.m, "Box modulus m >= 1")->required();
  add_k(oracle);
  oracle->add_option("--automorphism", cfg.automorphism_path, "Check only this automorphism");
  oracle->add_option("--check", cfg.checks, "tbft, shift, projection, restriction-bound")->delimiter(',');
  oracle->add_option("--divisor", cfg.divisors, "Divisor d of n for the projection check")->delimiter(',');
  oracle->add_option("--budget", cfg.budget, "Maximum group order");
  oracle->add_flag("--inner", cfg.inner, "Also check all inner automorphisms");
  oracle->add_option("--shift-samples", cfg.shift_samples, "Sampled g per automorphism when |G| > 200");
  add_format(oracle);

  auto* verify = app.add_subcommand("verify", "Replay the witnesses of a certificate file");
  verify->add_option("certificate", cfg.certificate_path, "Certificate JSON file")->required();
  add_format(verify);

  auto* validate = app.add_subcommand("validate", "Check that a file describes an automorphism");
  validate->add_option("automorphism", cfg.automorphism_path, "Automorphism JSON file")->required();
  add_format(validate);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  try {
    if (*classify || *construct || *oracle) {
      if (cfg.n < 2 || cfg.k < 1)
        throw InputError("need n >= 2 and k >= 1");
      if (*oracle && cfg.m < 1)
        throw InputError("need m >= 1");
    }
    if (*classify)
      return cmd_classify(cfg);
    if (*construct)
      return cmd_construct(cfg);
    if (*reidemeister)
      return cmd_reidemeister(cfg);
    if (*oracle)
      return cmd_oracle(cfg);
    if (*verify)
      return cmd_verify(cfg);
    if (*validate)
      return cmd_validate(cfg);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const finite::BudgetExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const FormatError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kViolation;
  }
  return kInputError;
}
