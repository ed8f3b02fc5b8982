#include "revtri/certify.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "revtri/errors.hpp"

namespace revtri {

namespace {

template <typename Params>
const Params& params_for(const TheoremSpec& spec, const char* expected) {
  const auto* p = std::get_if<Params>(&spec.params);
  if (p == nullptr) {
    throw InputError("theorem " + std::string(to_string(spec.id)) + " expects " + expected +
                     " parameters");
  }
  return *p;
}

const Vector& single_vector(const OrthonormalFrame& frame, TheoremId id) {
  if (frame.size() != 1) {
    throw InputError("theorem " + std::string(to_string(id)) +
                     " takes a single unit vector a; frame has " +
                     std::to_string(frame.size()) + " members");
  }
  return frame[0];
}

Vector frame_combination(const OrthonormalFrame& frame, std::span<const Complex> coeffs) {
  Vector v(frame.dimension());
  for (std::size_t t = 0; t < frame.size(); ++t) v += coeffs[t] * frame[t];
  return v;
}

// Everything evaluate needs from one theorem: its bound, hypotheses and the
// direction whose multiple Σ‖x_k‖·direction is the equality case.
struct Evaluation {
  BoundResult result;
  Vector equality_direction;
  std::optional<bool> strict_applicable;
};

Evaluation dispatch(const VectorFamily& xs, const OrthonormalFrame& frame,
                    const TheoremSpec& spec, double tol) {
  switch (spec.id) {
    case TheoremId::dm: {
      const auto& p = params_for<DmParams>(spec, "dm {r}");
      const Vector& a = single_vector(frame, spec.id);
      return {dm_certificate(xs, a, p.r, tol), p.r * a, std::nullopt};
    }
    case TheoremId::thm1: {
      const auto& p = params_for<Thm1Params>(spec, "thm1 {r1, r2}");
      const Vector& a = single_vector(frame, spec.id);
      return {thm1_certificate(xs, a, p.r1, p.r2, tol), Complex(p.r1, p.r2) * a, std::nullopt};
    }
    case TheoremId::thm2: {
      const auto& p = params_for<Thm2Params>(spec, "thm2 {p1, p2}");
      const Vector& a = single_vector(frame, spec.id);
      auto r = thm2_certificate(xs, a, p.p1, p.p2, tol);
      Vector dir = Complex(*r.constants.alpha1, *r.constants.alpha2) * a;
      return {std::move(r), std::move(dir), std::nullopt};
    }
    case TheoremId::cor3: {
      params_for<NoParams>(spec, "no");
      const Vector& a = single_vector(frame, spec.id);
      auto r = cor3_certificate(xs, a, tol);
      Vector dir = (*r.constants.alpha * Complex(0.5, 0.5)) * a;
      return {std::move(r), std::move(dir), std::nullopt};
    }
    case TheoremId::thm4: {
      const auto& p = params_for<Thm4Params>(spec, "thm4 {p}");
      const Vector& a = single_vector(frame, spec.id);
      auto r = thm4_certificate(xs, a, p.p, tol);
      Vector dir = *r.constants.alpha1 * a;
      return {std::move(r), std::move(dir), std::nullopt};
    }
    case TheoremId::thm5:
    case TheoremId::cor6: {
      const auto& p = params_for<Thm5Params>(spec, "{r, rho}");
      if (spec.id == TheoremId::cor6) {
        auto r = cor6_certificate(xs, frame, p.r, tol);
        std::vector<Complex> coeffs(p.r.begin(), p.r.end());
        return {std::move(r), frame_combination(frame, coeffs), std::nullopt};
      }
      auto r = thm5_certificate(xs, frame, p.r, p.rho, tol);
      std::vector<Complex> coeffs;
      for (std::size_t t = 0; t < p.r.size(); ++t) coeffs.emplace_back(p.r[t], p.rho[t]);
      return {std::move(r), frame_combination(frame, coeffs), std::nullopt};
    }
    case TheoremId::thm7: {
      const auto& p = params_for<Thm7Params>(spec, "thm7 {p, q}");
      auto r = thm7_certificate(xs, frame, p.p, p.q, tol);
      std::vector<Complex> coeffs;
      for (std::size_t t = 0; t < frame.size(); ++t) {
        coeffs.emplace_back(r.constants.alpha_t[t], r.constants.beta_t[t]);
      }
      Vector dir = frame_combination(frame, coeffs);
      return {std::move(r), std::move(dir), std::nullopt};
    }
    case TheoremId::cor8: {
      params_for<NoParams>(spec, "no");
      auto r = cor8_certificate(xs, frame, tol);
      std::vector<Complex> coeffs(frame.size(), *r.constants.alpha * Complex(0.5, 0.5));
      Vector dir = frame_combination(frame, coeffs);
      return {std::move(r), std::move(dir), std::nullopt};
    }
    case TheoremId::cor9: {
      const auto& p = params_for<Thm2Params>(spec, "cor9 {p1, p2}");
      const Vector& a = single_vector(frame, spec.id);
      auto strict = cor9_strict_check(xs, a, p.p1, p.p2, tol);
      auto r = thm2_certificate(xs, a, p.p1, p.p2, tol);
      r.bound = strict.strict_bound;
      // When not applicable the alphas sit at their floors and the bound
      // coincides with thm2's, so thm2's equality vector applies.
      Vector dir =
          Complex(std::sqrt(1.0 - p.p1 * p.p1), std::sqrt(1.0 - p.p2 * p.p2)) * a;
      return {std::move(r), std::move(dir), strict.applicable};
    }
    case TheoremId::thm10:
    case TheoremId::thm11: {
      const auto& p = params_for<Thm10Params>(spec, "{m, M, ell, L}");
      const Vector& a = single_vector(frame, spec.id);
      auto r = thm10_certificate(xs, a, p.m, p.M, p.ell, p.L, tol);
      if (spec.id == TheoremId::thm10) {
        Vector dir = Complex(*r.constants.alpha_mM, *r.constants.alpha_lL) * a;
        return {std::move(r), std::move(dir), std::nullopt};
      }
      auto strict = thm11_strict_check(xs, a, p.m, p.M, p.ell, p.L, tol);
      r.bound = strict.strict_bound;
      Vector dir = Complex(2.0 * std::sqrt(p.m * p.M) / (p.m + p.M),
                           2.0 * std::sqrt(p.ell * p.L) / (p.ell + p.L)) *
                   a;
      return {std::move(r), std::move(dir), strict.applicable};
    }
  }
  throw InputError("unhandled theorem id");
}

}  // namespace

std::string_view to_string(CertificateStatus status) noexcept {
  switch (status) {
    case CertificateStatus::certified: return "certified";
    case CertificateStatus::hypotheses_unsatisfied: return "hypotheses_unsatisfied";
    case CertificateStatus::soundness_violation: return "soundness_violation";
  }
  return "unknown";
}

CertificateStatus BoundCertificate::status() const noexcept {
  if (!hypothesis.satisfied) return CertificateStatus::hypotheses_unsatisfied;
  if (!inequality_holds) return CertificateStatus::soundness_violation;
  if (strict_applicable.value_or(false) && !strict_holds.value_or(true)) {
    return CertificateStatus::soundness_violation;
  }
  return CertificateStatus::certified;
}

std::optional<double> true_ratio(const VectorFamily& xs) {
  const double denominator = xs.sum_of_norms();
  if (denominator < kRatioDenominatorFloor) return std::nullopt;
  return norm(xs.sum()) / denominator;
}

BoundCertificate evaluate(const VectorFamily& xs, const OrthonormalFrame& frame,
                          const TheoremSpec& spec, double tol) {
  Evaluation ev = dispatch(xs, frame, spec, tol);
#ifdef REVTRI_INJECT_DEFECT
  // Deliberately broken build used to exercise the soundness-violation path.
  ev.result.bound += 0.25;
#endif

  BoundCertificate cert;
  cert.theorem_id = spec.id;
  cert.hypothesis = std::move(ev.result.hypothesis);
  cert.constants = std::move(ev.result.constants);
  cert.bound = ev.result.bound;
  cert.tolerance = tol;

  const Vector total = xs.sum();
  cert.sum_of_norms = xs.sum_of_norms();
  cert.norm_of_sum = norm(total);
  if (cert.sum_of_norms >= kRatioDenominatorFloor) {
    cert.ratio = cert.norm_of_sum / cert.sum_of_norms;
  }
  cert.inequality_holds = cert.bound * cert.sum_of_norms <=
                          cert.norm_of_sum + tol * std::max(1.0, cert.sum_of_norms);

  cert.equality_residual = norm(total - cert.sum_of_norms * ev.equality_direction);
  cert.equality_case = cert.hypothesis.satisfied &&
                       cert.equality_residual <= tol * cert.sum_of_norms &&
                       !ev.strict_applicable.value_or(false);

  if (ev.strict_applicable.has_value()) {
    cert.strict_applicable = ev.strict_applicable;
    cert.strict_holds = cert.norm_of_sum > cert.bound * cert.sum_of_norms;
  }
  return cert;
}

std::vector<BoundCertificate> tightness_scan(const VectorFamily& xs,
                                             const OrthonormalFrame& frame,
                                             std::span<const TheoremSpec> grid, double tol) {
  std::vector<BoundCertificate> out;
  for (const auto& spec : grid) {
    try {
      BoundCertificate cert = evaluate(xs, frame, spec, tol);
      if (cert.hypothesis.satisfied) out.push_back(std::move(cert));
    } catch (const InputError&) {
      // Parameters outside the theorem's admissible region for this family.
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& lhs, const auto& rhs) {
    if (lhs.bound != rhs.bound) return lhs.bound > rhs.bound;
    return static_cast<int>(lhs.theorem_id) < static_cast<int>(rhs.theorem_id);
  });
  return out;
}

}  // namespace revtri
