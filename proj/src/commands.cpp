#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "revtri/cli.hpp"
#include "revtri/errors.hpp"

namespace revtri::cli {

namespace {

constexpr std::size_t kMaxReplayFiles = 16;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Reports name files by their last component only, so they do not depend on
// where the command ran.
std::string base_name(const std::string& path) {
  return std::filesystem::path(path).filename().string();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw InputError("cannot write '" + path + "'");
  os << text;
  if (!os) throw InputError("failed writing '" + path + "'");
}

// Report goes to the output file when one is given, to `out` otherwise.
void emit_report(const std::string& output_path, const std::string& report, std::ostream& out) {
  if (output_path.empty()) {
    out << report;
  } else {
    write_text(output_path, report);
  }
}

int exit_for(CertificateStatus status) {
  switch (status) {
    case CertificateStatus::certified: return kExitCertified;
    case CertificateStatus::hypotheses_unsatisfied: return kExitUnsatisfied;
    case CertificateStatus::soundness_violation: return kExitViolation;
  }
  return kExitInputError;
}

std::string summary_line(const std::string& command, const BoundCertificate& cert) {
  std::ostringstream os;
  os << command << ' ' << to_string(cert.theorem_id) << ": " << to_string(cert.status())
     << " (bound " << num(cert.bound) << ", ratio "
     << (cert.ratio ? num(*cert.ratio) : std::string("none")) << ")\n";
  return os.str();
}

template <typename Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }
}

}  // namespace

int cmd_certify(const std::string& input_path, double tol, const std::string& output_path,
                std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (!(tol >= 0.0) || !std::isfinite(tol)) throw InputError("--tol must be finite and >= 0");
    const ProblemInstance instance = load_instance(input_path);
    const BoundCertificate cert = evaluate(instance.vectors, instance.frame, instance.spec, tol);
    const int code = exit_for(cert.status());

    std::ostringstream report;
    report << "command = certify\n";
    report << "input = " << base_name(input_path) << '\n';
    report << "exit_code = " << code << '\n';
    report << "[certificate]\n" << format_certificate(cert);
    emit_report(output_path, report.str(), out);
    out << summary_line("certify", cert);
    return code;
  });
}

int cmd_scan(const std::string& input_path, const std::string& grid_path, double tol,
             const std::string& output_path, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (!(tol >= 0.0) || !std::isfinite(tol)) throw InputError("--tol must be finite and >= 0");
    const ProblemInstance instance = load_instance(input_path);
    const auto grid = load_grid(grid_path, instance.frame.size());
    const auto certs = tightness_scan(instance.vectors, instance.frame, grid, tol);

    int code = certs.empty() ? kExitUnsatisfied : kExitCertified;
    for (const auto& c : certs) {
      if (c.status() == CertificateStatus::soundness_violation) code = kExitViolation;
    }

    std::ostringstream report;
    report << "command = scan\n";
    report << "input = " << base_name(input_path) << '\n';
    report << "grid = " << base_name(grid_path) << '\n';
    report << "grid_entries = " << grid.size() << '\n';
    report << "certificates = " << certs.size() << '\n';
    report << "exit_code = " << code << '\n';
    for (std::size_t i = 0; i < certs.size(); ++i) {
      report << "[certificate " << i << "]\n" << format_certificate(certs[i]);
    }
    emit_report(output_path, report.str(), out);
    if (certs.empty()) {
      out << "scan: no applicable theorem in " << grid.size() << " grid entries\n";
    } else {
      out << summary_line("scan", certs.front());
    }
    return code;
  });
}

int cmd_equality(const EqualityRequest& request, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (request.norms.empty()) throw InputError("--norms must list at least one norm");
    if (request.dimension == 0) throw InputError("--dim must be at least 1");
    if (request.output_path.empty()) throw InputError("equality needs --output");

    std::size_t m = 1;
    if (request.theorem == TheoremId::thm5 || request.theorem == TheoremId::cor6) {
      const auto it = request.params.find("r");
      if (it == request.params.end()) throw InputError("missing parameter 'r'");
      m = it->second.size();
    } else if (request.theorem == TheoremId::cor8 || request.theorem == TheoremId::thm7) {
      m = request.frame_size;
    }
    if (m == 0 || m > request.dimension) {
      throw InputError("frame size " + std::to_string(m) + " must lie in [1, dimension]");
    }
    std::vector<Vector> basis;
    for (std::size_t t = 0; t < m; ++t) basis.push_back(Vector::basis(request.dimension, t));
    OrthonormalFrame frame(std::move(basis));
    const TheoremSpec spec{request.theorem, build_params(request.theorem, request.params, m)};

    SampleOutcome built = equality_family(spec, frame, request.norms, request.seed);
    if (const auto* report = std::get_if<FeasibilityReport>(&built)) {
      throw InputError("restricted parameter region: " + report->reason);
    }
    ProblemInstance instance{request.dimension, spec, frame, std::get<VectorFamily>(built)};
    const BoundCertificate cert = evaluate(instance.vectors, frame, spec, request.tol);

    const double gap = cert.ratio ? std::abs(*cert.ratio - cert.bound) : std::abs(cert.bound);
    const bool verified = cert.equality_case && gap <= request.tol;
    int code = verified ? kExitCertified : kExitUnsatisfied;
    if (cert.status() == CertificateStatus::soundness_violation) code = kExitViolation;

    const std::string instance_path = request.output_path + ".instance.json";
    write_text(instance_path, serialize_instance(instance));

    std::ostringstream report;
    report << "command = equality\n";
    report << "theorem = " << to_string(request.theorem) << '\n';
    report << "dimension = " << request.dimension << '\n';
    report << "frame_size = " << m << '\n';
    report << "seed = " << request.seed << '\n';
    report << "norms = [";
    for (std::size_t k = 0; k < request.norms.size(); ++k) {
      report << (k ? ", " : "") << num(request.norms[k]);
    }
    report << "]\n";
    report << "instance = " << base_name(instance_path) << '\n';
    report << "equality_verified = " << (verified ? "true" : "false") << '\n';
    report << "ratio_bound_gap = " << num(gap) << '\n';
    report << "exit_code = " << code << '\n';
    report << "[certificate]\n" << format_certificate(cert);
    write_text(request.output_path, report.str());
    out << summary_line("equality", cert);
    return code;
  });
}

int cmd_fuzz(const FuzzRequest& request, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (request.trials == 0) throw InputError("--trials must be at least 1");
    if (request.output_path.empty()) throw InputError("fuzz needs --output");
    const FuzzSummary summary = fuzz_falsify(request.theorem, request.trials, request.d_max,
                                             request.n_max, request.seed, request.threads);
    const int code = summary.violations.empty() ? kExitCertified : kExitViolation;

    std::ostringstream report;
    report << "command = fuzz\n";
    report << "theorem = " << to_string(summary.theorem) << '\n';
    report << "seed = " << request.seed << '\n';
    report << "d_max = " << request.d_max << '\n';
    report << "n_max = " << request.n_max << '\n';
    report << "trials_run = " << summary.trials_run << '\n';
    report << "hypothesis_hits = " << summary.hypothesis_hits << '\n';
    report << "sampled_families = " << summary.sampled_families << '\n';
    report << "infeasible_draws = " << summary.infeasible_draws << '\n';
    report << "rejected_inputs = " << summary.rejected_inputs << '\n';
    report << "violations = " << summary.violations.size() << '\n';
    report << "exit_code = " << code << '\n';
    for (std::size_t i = 0; i < summary.violations.size() && i < kMaxReplayFiles; ++i) {
      const auto& v = summary.violations[i];
      const std::string replay = request.output_path + ".violation" + std::to_string(i) + ".json";
      write_text(replay, serialize_instance({v.family[0].dimension(), v.spec, v.frame, v.family}));
      report << "[violation " << i << "]\n";
      report << "trial = " << v.trial << '\n';
      report << "replay = " << base_name(replay) << '\n';
      report << format_certificate(v.certificate);
    }
    write_text(request.output_path, report.str());
    out << "fuzz " << to_string(summary.theorem) << ": " << summary.trials_run << " trials, "
        << summary.hypothesis_hits << " hypothesis hits, " << summary.violations.size()
        << " violations\n";
    return code;
  });
}

}  // namespace revtri::cli
