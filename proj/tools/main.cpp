// Command-line front door: cone inspection, duality, tensor-product
// membership analysis, entangleability certification and verification,
// robustness and tensor-norm computations, and the reproduction suite.
//
// Exit codes: 0 success / proved entangleable; 2 verified negative (for
// example a classical input to certify, or an invalid certificate);
// 1 malformed input or internal error.

#include <CLI11.hpp>
#include <chrono>
#include <fstream>
#include <iostream>

#include "conelab/jsonio.hpp"
#include "conelab/repro.hpp"
#include "conelab/witness3d.hpp"
#include "conelab/version.hpp"

using namespace conelab;

namespace {

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
        .count();
  }
};

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  json j;
  in >> j;
  return j;
}

void write_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << j.dump(2) << "\n";
}

struct ReportSink {
  std::string command;
  uint64_t seed = 0;
  double tol = 1e-9;
  json verdicts = json::object();
  json certificate;
  std::string report_path;
  Timer timer;

  void emit() const {
    if (report_path.empty()) return;
    json j;
    j["command"] = command;
    j["version"] = kVersion;
    j["seed"] = seed;
    j["tolerance"] = tol;
    j["verdicts"] = verdicts;
    if (!certificate.is_null()) j["certificate"] = certificate;
    j["timings_ms"] = {{"total", timer.ms()}};
    write_file(report_path, j);
  }
};

const char* kind_name(Cone::Kind k) {
  switch (k) {
    case Cone::Kind::Polyhedral: return "polyhedral";
    case Cone::Kind::Lorentz: return "lorentz";
    case Cone::Kind::Psd: return "psd";
    case Cone::Kind::Classical: return "classical";
    case Cone::Kind::Polygon: return "polygon";
  }
  return "?";
}

int cmd_cone_info(const std::string& path, ReportSink& report) {
  Cone c = cone_from_json(load_json(path));
  std::cout << "kind: " << kind_name(c.kind()) << "\n";
  std::cout << "ambient dimension: " << c.ambient_dim() << "\n";
  auto cl = is_classical(c);
  std::cout << "classical: " << (cl.classical ? "yes" : "no");
  if (!cl.classical) std::cout << " (" << cl.obstruction << ")";
  std::cout << "\n";
  report.verdicts["kind"] = kind_name(c.kind());
  report.verdicts["dim"] = c.ambient_dim();
  report.verdicts["classical"] = cl.classical;
  if (c.kind() != Cone::Kind::Lorentz && c.kind() != Cone::Kind::Psd) {
    auto ext = extreme_rays(c);
    auto fac = facets(c);
    std::cout << "extreme rays: " << ext.size() << "\n";
    std::cout << "facets: " << fac.size() << "\n";
    report.verdicts["extreme_rays"] = ext.size();
    report.verdicts["facets"] = fac.size();
  }
  return 0;
}

int cmd_dual(const std::string& path, const std::string& out, ReportSink& report) {
  Cone c = cone_from_json(load_json(path));
  Cone d = dual_cone(c);
  json dj = cone_to_json(d);
  if (!out.empty())
    write_file(out, dj);
  else
    std::cout << dj.dump(2) << "\n";
  report.verdicts["dual_kind"] = kind_name(d.kind());
  return 0;
}

int cmd_tensor_analyze(const std::string& a_path, const std::string& b_path,
                       const std::string& tensor_path, const std::string& mode,
                       ReportSink& report) {
  Cone a = cone_from_json(load_json(a_path));
  Cone b = cone_from_json(load_json(b_path));
  QMat z = tensor_from_json(load_json(tensor_path));
  if (mode == "max" || mode == "both") {
    auto res = max_membership(a, b, z);
    std::cout << "maximal tensor product: " << (res.member ? "member" : "not a member") << "\n";
    Rational worst(0);
    for (const auto& e : res.evidence) worst = min(worst, e.value);
    std::cout << "  (" << res.evidence.size() << " dual pairs, least value " << worst.str()
              << ")\n";
    report.verdicts["max_member"] = res.member;
    report.verdicts["max_least_value"] = worst.str();
  }
  if (mode == "min" || mode == "both") {
    auto res = min_membership(a, b, z);
    std::cout << "minimal tensor product: " << (res.member ? "member" : "not a member") << "\n";
    report.verdicts["min_member"] = res.member;
    if (!res.member) {
      std::cout << "  separating functional value " << res.functional_value_at_z.str() << "\n";
      report.verdicts["separating_value"] = res.functional_value_at_z.str();
      report.certificate = json{{"functional", mat_to_json(res.functional)}};
    }
  }
  return 0;
}

int cmd_certify(const std::string& a_path, const std::string& b_path, const std::string& out,
                uint64_t seed, int samples, double tol, ReportSink& report) {
  Cone a = cone_from_json(load_json(a_path));
  Cone b = cone_from_json(load_json(b_path));
  const bool a_psd = a.kind() == Cone::Kind::Psd;
  const bool b_psd = b.kind() == Cone::Kind::Psd;
  json cert_json;
  if (a_psd && b_psd) throw Error("certify: at most one side may be a PSD cone");
  if (a_psd || b_psd) {
    const Cone& other = a_psd ? b : a;
    int n = (a_psd ? a : b).psd_n();
    SemiquantumOptions opt{seed, samples, tol};
    SemiquantumCertificate cert = certify_entangleable_semiquantum(other, n, opt);
    cert_json = semiquantum_to_json(cert);
    if (a_psd) cert_json["transposed"] = true;  // cones were given as (PSD, C)
    std::cout << "entangleable: yes (semiquantum pipeline)\n";
    std::cout << "separation value: " << cert.separation_value.str() << "\n";
    report.verdicts["separation_value"] = cert.separation_value.str();
  } else if (a.kind() == Cone::Kind::Lorentz || b.kind() == Cone::Kind::Lorentz) {
    throw Error("certify: general Lorentz factors have no finite certification path here");
  } else {
    SeparationCertificate cert;
    if (a.kind() == Cone::Kind::Polygon && b.kind() == Cone::Kind::Polygon)
      cert = entangle_3d(a, b);
    else
      cert = certify_entangleable_polyhedral(a, b);
    cert_json = certificate_to_json(cert);
    std::cout << "entangleable: yes\n";
    std::cout << "separation value: " << cert.separation_value.str() << "\n";
    report.verdicts["separation_value"] = cert.separation_value.str();
  }
  report.verdicts["entangleable"] = true;
  report.certificate = cert_json;
  if (!out.empty()) write_file(out, cert_json);
  return 0;
}

int cmd_verify(const std::string& cert_path, const std::string& a_path,
               const std::string& b_path, double tol, ReportSink& report) {
  json cj = load_json(cert_path);
  Cone a = cone_from_json(load_json(a_path));
  Cone b = cone_from_json(load_json(b_path));
  std::string kind = cj.value("kind", "polyhedral-pair");
  bool ok = false;
  std::string reason;
  if (kind == "semiquantum") {
    SemiquantumCertificate cert = semiquantum_from_json(cj);
    bool transposed = cj.value("transposed", false);
    const Cone& base = transposed ? b : a;
    const Cone& psd = transposed ? a : b;
    if (psd.kind() != Cone::Kind::Psd || psd.psd_n() != cert.psd_n)
      throw Error("verify: certificate does not match the PSD side");
    SemiquantumOptions opt{cert.seed, cert.samples, tol};
    auto check = verify_semiquantum(cert, base, opt);
    ok = check.ok;
    reason = check.reason;
  } else {
    SeparationCertificate cert = certificate_from_json(cj);
    auto check = verify_certificate(cert, a, b);
    ok = check.ok;
    reason = check.reason;
  }
  report.verdicts["certificate_valid"] = ok;
  if (ok) {
    std::cout << "certificate valid\n";
    return 0;
  }
  std::cout << "certificate INVALID: " << reason << "\n";
  report.verdicts["reason"] = reason;
  return 2;
}

int cmd_robustness(const std::string& a_path, const std::string& b_path,
                   const std::string& state_path, const std::string& unit_a,
                   const std::string& unit_b, ReportSink& report) {
  Cone a = cone_from_json(load_json(a_path));
  Cone b = cone_from_json(load_json(b_path));
  QMat omega = tensor_from_json(load_json(state_path));
  QVec ua = unit_a.empty() ? strictly_positive_functional(a)
                           : vec_from_json(json::parse(unit_a));
  QVec ub = unit_b.empty() ? strictly_positive_functional(b)
                           : vec_from_json(json::parse(unit_b));
  auto res = entanglement_robustness(make_gpt(a, ua), make_gpt(b, ub), omega);
  std::cout << "entanglement robustness: " << res.value.str() << "\n";
  std::cout << "documented universal floor for symmetric pairs: "
            << kRobustnessUniversalFloor.str() << " (not recomputed)\n";
  report.verdicts["robustness"] = res.value.str();
  report.verdicts["state"] = mat_to_json(omega);
  report.certificate = json{{"noise", mat_to_json(res.noise)}};
  return 0;
}

int cmd_norms(const std::string& x_path, const std::string& y_path,
              const std::string& tensor_path, ReportSink& report) {
  NormedSpace x = space_from_json(load_json(x_path));
  NormedSpace y = space_from_json(load_json(y_path));
  json tj = load_json(tensor_path);
  if (x.kind == NormedSpace::Kind::Polytope && y.kind == NormedSpace::Kind::Polytope) {
    QMat z = tensor_from_json(tj);
    Rational eps = injective_norm_exact(x, y, z);
    auto proj = projective_norm_exact(x, y, z);
    std::cout << "injective norm: " << eps.str() << "\n";
    std::cout << "projective norm: " << proj.value.str() << " (dual bound "
              << proj.dual_bound.str() << ")\n";
    report.verdicts["epsilon"] = eps.str();
    report.verdicts["pi"] = proj.value.str();
    if (eps <= Rational(1) && !eps.is_zero()) {
      SymmetricGpt sx{x}, sy{y};
      Rational lb = robustness_lower_bound_exact(sx, sy, z);
      std::cout << "robustness lower bound: " << lb.str() << "\n";
      report.verdicts["lower_bound"] = lb.str();
    }
  } else {
    QMat zq = tensor_from_json(tj);
    DMat z = to_double(zq);
    double eps = injective_norm(x, y, z);
    double pi = projective_norm(x, y, z);
    std::cout << "injective norm: " << eps << "\n";
    std::cout << "projective norm: " << pi << "\n";
    report.verdicts["epsilon"] = eps;
    report.verdicts["pi"] = pi;
  }
  std::cout << "reference ratio floor " << kProjectiveInjectiveRatioFloor.str()
            << ", robustness floor " << kRobustnessUniversalFloor.str()
            << " (documented constants)\n";
  return 0;
}

int cmd_repro(const std::string& only, uint64_t seed, double tol, const std::string& corrupt,
              ReportSink& report) {
  ReproOptions opt;
  opt.only = only;
  opt.seed = seed;
  opt.tol = tol;
  opt.corrupt = corrupt;
  auto results = run_acceptance(opt);
  int failed = 0;
  json items = json::array();
  for (const auto& r : results) {
    std::cout << (r.pass ? "PASS" : "FAIL") << "  " << r.number << " " << r.name << "  ("
              << r.details << ") [" << int(r.ms) << " ms]\n";
    if (!r.pass) ++failed;
    items.push_back(json{{"number", r.number},
                         {"name", r.name},
                         {"pass", r.pass},
                         {"details", r.details},
                         {"ms", r.ms}});
  }
  std::cout << (failed == 0 ? "all criteria passed" : "criteria FAILED") << " ("
            << results.size() - failed << "/" << results.size() << ")\n";
  report.verdicts["criteria"] = items;
  report.verdicts["failed"] = failed;
  return failed == 0 ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"conelab: exact tensor products of convex cones, entangleability "
               "certificates, and tensor-norm computations"};
  app.require_subcommand(1);

  std::string a_path, b_path, tensor_path, cert_path, state_path, out_path, report_path;
  std::string space_x, space_y, mode = "both", only, corrupt, unit_a, unit_b, input;
  uint64_t seed = 20240809;
  int samples = 1000;
  double tol = 1e-9;

  auto* info = app.add_subcommand("cone-info", "inspect a cone file");
  info->add_option("input", input, "cone JSON file")->required();
  info->add_option("--report", report_path, "write a JSON report");

  auto* dual = app.add_subcommand("dual", "dual cone in generator form");
  dual->add_option("input", input, "cone JSON file")->required();
  dual->add_option("--out", out_path, "output file (stdout otherwise)");
  dual->add_option("--report", report_path, "write a JSON report");

  auto* ta = app.add_subcommand("tensor-analyze", "membership in the tensor products");
  ta->add_option("--a", a_path)->required();
  ta->add_option("--b", b_path)->required();
  ta->add_option("--tensor", tensor_path)->required();
  ta->add_option("--mode", mode)->check(CLI::IsMember({"min", "max", "both"}));
  ta->add_option("--report", report_path);

  auto* certify = app.add_subcommand("certify", "produce an entangleability certificate");
  certify->add_option("--a", a_path)->required();
  certify->add_option("--b", b_path)->required();
  certify->add_option("--out", out_path, "certificate output file");
  certify->add_option("--seed", seed);
  certify->add_option("--samples", samples);
  certify->add_option("--tol", tol);
  certify->add_option("--report", report_path);

  auto* verify = app.add_subcommand("verify", "replay a certificate exactly");
  verify->add_option("--cert", cert_path)->required();
  verify->add_option("--a", a_path)->required();
  verify->add_option("--b", b_path)->required();
  verify->add_option("--tol", tol);
  verify->add_option("--report", report_path);

  auto* rob = app.add_subcommand("robustness", "entanglement robustness of a state");
  rob->add_option("--a", a_path)->required();
  rob->add_option("--b", b_path)->required();
  rob->add_option("--state", state_path)->required();
  rob->add_option("--unit-a", unit_a, "inline JSON unit functional");
  rob->add_option("--unit-b", unit_b, "inline JSON unit functional");
  rob->add_option("--report", report_path);

  auto* norms = app.add_subcommand("norms", "injective/projective norms of a tensor");
  norms->add_option("--space-x", space_x)->required();
  norms->add_option("--space-y", space_y)->required();
  norms->add_option("--tensor", tensor_path)->required();
  norms->add_option("--report", report_path);

  auto* repro = app.add_subcommand("repro", "run the reproduction suite");
  std::string names;
  for (const auto& n : criterion_names()) names += (names.empty() ? "" : ", ") + n;
  repro->add_option("--only", only, "single criterion: " + names);
  repro->add_option("--seed", seed);
  repro->add_option("--tol", tol);
  repro->add_option("--corrupt", corrupt)->group("");  // test hook, hidden
  repro->add_option("--report", report_path);

  CLI11_PARSE(app, argc, argv);

  ReportSink report;
  report.seed = seed;
  report.tol = tol;
  report.report_path = report_path;

  int code = 1;
  try {
    if (info->parsed()) {
      report.command = "cone-info";
      code = cmd_cone_info(input, report);
    } else if (dual->parsed()) {
      report.command = "dual";
      code = cmd_dual(input, out_path, report);
    } else if (ta->parsed()) {
      report.command = "tensor-analyze";
      code = cmd_tensor_analyze(a_path, b_path, tensor_path, mode, report);
    } else if (certify->parsed()) {
      report.command = "certify";
      code = cmd_certify(a_path, b_path, out_path, seed, samples, tol, report);
    } else if (verify->parsed()) {
      report.command = "verify";
      code = cmd_verify(cert_path, a_path, b_path, tol, report);
    } else if (rob->parsed()) {
      report.command = "robustness";
      code = cmd_robustness(a_path, b_path, state_path, unit_a, unit_b, report);
    } else if (norms->parsed()) {
      report.command = "norms";
      code = cmd_norms(space_x, space_y, tensor_path, report);
    } else if (repro->parsed()) {
      report.command = "repro";
      code = cmd_repro(only, seed, tol, corrupt, report);
    }
  } catch (const ClassicalInputError& e) {
    std::cout << "verified negative: " << e.what() << "\n";
    std::cout << "basis witness (" << e.basis.size() << " rays):\n";
    for (const auto& r : e.basis) {
      std::cout << " ";
      for (const auto& x : r) std::cout << " " << x.str();
      std::cout << "\n";
    }
    report.verdicts["entangleable"] = false;
    report.verdicts["reason"] = e.what();
    report.emit();
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    report.verdicts["error"] = e.what();
    report.emit();
    return 1;
  }
  report.emit();
  return code;
}
