#include "revtri/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>

#include "revtri/errors.hpp"

namespace revtri {

namespace {

std::string fmt_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void require_compatible(const VectorFamily& xs, std::size_t dimension) {
  if (xs.dimension() != dimension) {
    throw InputError("family dimension " + std::to_string(xs.dimension()) +
                     " does not match reference dimension " + std::to_string(dimension));
  }
}

// a is validated like a frame member, independently of the hypothesis tolerance.
void require_unit(const VectorFamily& xs, const Vector& a) {
  require_compatible(xs, a.dimension());
  const double deviation = std::abs(norm(a) - 1.0);
  if (deviation > kFrameTolerance) {
    throw InputError("reference vector a is not a unit vector (|norm - 1| = " +
                     fmt_double(deviation) + ")");
  }
}

void require_nonzero(const VectorFamily& xs) {
  for (std::size_t k = 0; k < xs.size(); ++k) {
    if (norm(xs[k]) < kZeroNormThreshold) {
      throw DegenerateInputError("vector " + std::to_string(k) +
                                 " is zero; this bound divides by its norm");
    }
  }
}

void require_tolerance(double tol) {
  if (!(tol >= 0.0) || !std::isfinite(tol)) {
    throw InputError("tolerance must be finite and nonnegative");
  }
}

void require_frame(const VectorFamily& xs, const OrthonormalFrame& frame, std::size_t lhs,
                   std::size_t rhs, const char* what) {
  require_compatible(xs, frame.dimension());
  if (lhs != frame.size() || rhs != frame.size()) {
    throw InputError(std::string(what) + " lists must have length m = " +
                     std::to_string(frame.size()) + " (got " + std::to_string(lhs) + " and " +
                     std::to_string(rhs) + ")");
  }
}

std::string indexed(const char* base, std::size_t t) {
  return std::string(base) + "[" + std::to_string(t) + "]";
}

class MarginCollector {
 public:
  explicit MarginCollector(double tol) { report_.tolerance_used = tol; }

  void add(std::size_t k, std::string condition, double margin) {
    if (!(margin >= -report_.tolerance_used)) report_.satisfied = false;
    report_.margins.push_back({k, std::move(condition), margin});
  }

  HypothesisReport finish() && { return std::move(report_); }

 private:
  HypothesisReport report_;
};

double ball_margin(const Vector& x, const Vector& center, double radius) {
  return radius - norm(x - center);
}

// min_k (‖x_k‖² + lo·hi) / ((lo + hi)‖x_k‖)
double interval_alpha(std::span<const double> norms, double lo, double hi) {
  double best = std::numeric_limits<double>::infinity();
  for (double n : norms) best = std::min(best, (n * n + lo * hi) / ((lo + hi) * n));
  return best;
}

void require_interval(double lo, double hi, const char* lo_name, const char* hi_name) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo > 0.0) || !(hi >= lo)) {
    throw InputError(std::string("interval parameters must satisfy ") + hi_name + " >= " +
                     lo_name + " > 0 (got " + lo_name + " = " + fmt_double(lo) + ", " +
                     hi_name + " = " + fmt_double(hi) + ")");
  }
}

}  // namespace

VectorFamily::VectorFamily(std::vector<Vector> vectors) : vectors_(std::move(vectors)) {
  if (vectors_.empty()) throw InputError("vector family must contain at least one vector");
  const std::size_t d = vectors_.front().dimension();
  for (std::size_t k = 1; k < vectors_.size(); ++k) {
    if (vectors_[k].dimension() != d) {
      throw InputError("family vector " + std::to_string(k) + " has dimension " +
                       std::to_string(vectors_[k].dimension()) + ", expected " +
                       std::to_string(d));
    }
  }
}

std::vector<double> VectorFamily::norms() const {
  std::vector<double> out;
  out.reserve(vectors_.size());
  for (const auto& x : vectors_) out.push_back(norm(x));
  return out;
}

double VectorFamily::sum_of_norms() const {
  double total = 0.0;
  for (const auto& x : vectors_) total += norm(x);
  return total;
}

Vector VectorFamily::sum() const {
  Vector total(dimension());
  for (const auto& x : vectors_) total += x;
  return total;
}

double VectorFamily::min_norm() const {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& x : vectors_) best = std::min(best, norm(x));
  return best;
}

std::string_view to_string(TheoremId id) noexcept {
  switch (id) {
    case TheoremId::dm: return "dm";
    case TheoremId::thm1: return "thm1";
    case TheoremId::thm2: return "thm2";
    case TheoremId::cor3: return "cor3";
    case TheoremId::thm4: return "thm4";
    case TheoremId::thm5: return "thm5";
    case TheoremId::cor6: return "cor6";
    case TheoremId::thm7: return "thm7";
    case TheoremId::cor8: return "cor8";
    case TheoremId::cor9: return "cor9";
    case TheoremId::thm10: return "thm10";
    case TheoremId::thm11: return "thm11";
  }
  return "unknown";
}

TheoremId parse_theorem_id(std::string_view name) {
  for (TheoremId id : kAllTheorems) {
    if (to_string(id) == name) return id;
  }
  throw InputError("unknown theorem id '" + std::string(name) + "'");
}

bool uses_single_vector(TheoremId id) noexcept {
  switch (id) {
    case TheoremId::thm5:
    case TheoremId::cor6:
    case TheoremId::thm7:
    case TheoremId::cor8:
      return false;
    default:
      return true;
  }
}

BoundResult dm_certificate(const VectorFamily& xs, const Vector& a, double r, double tol) {
  require_tolerance(tol);
  require_unit(xs, a);
  if (!std::isfinite(r) || r < 0.0) throw InputError("dm: r must be finite and >= 0");
  require_nonzero(xs);

  MarginCollector margins(tol);
  for (std::size_t k = 0; k < xs.size(); ++k) {
    const double cosine = real_inner_product(xs[k], a) / norm(xs[k]);
    margins.add(k, "re_cos", cosine - r);
  }
  return {std::move(margins).finish(), {}, r};
}

BoundResult thm1_certificate(const VectorFamily& xs, const Vector& a, double r1, double r2,
                             double tol) {
  require_tolerance(tol);
  require_unit(xs, a);
  if (!(r1 >= -1.0 && r1 <= 1.0) || !(r2 >= -1.0 && r2 <= 1.0)) {
    throw InputError("thm1: r1 and r2 must lie in [-1, 1] (got r1 = " + fmt_double(r1) +
                     ", r2 = " + fmt_double(r2) + ")");
  }

  MarginCollector margins(tol);
  for (std::size_t k = 0; k < xs.size(); ++k) {
    const double n = norm(xs[k]);
    margins.add(k, "re_r1", inner_product(xs[k], r1 * a).real() - r1 * r1 * n);
    margins.add(k, "im_r2", inner_product(xs[k], r2 * a).imag() - r2 * r2 * n);
  }
  return {std::move(margins).finish(), {}, std::sqrt(r1 * r1 + r2 * r2)};
}

double alpha_from_radius(std::span<const double> norms, double p) {
  if (norms.empty()) throw InputError("alpha_from_radius: empty norm list");
  double smallest = std::numeric_limits<double>::infinity();
  for (double n : norms) {
    if (!(n >= kZeroNormThreshold) || !std::isfinite(n)) {
      throw DegenerateInputError("alpha_from_radius: norms must be finite and >= 1e-12");
    }
    smallest = std::min(smallest, n);
  }
  if (!(p > 0.0)) {
    throw InputError("radius p = " + fmt_double(p) + " violates lower bound p > 0");
  }
  const double upper = std::sqrt(smallest * smallest + 1.0);
  if (!(p < upper)) {
    throw InputError("radius p = " + fmt_double(p) +
                     " violates upper bound p < sqrt(alpha^2 + 1) = " + fmt_double(upper));
  }
  double best = std::numeric_limits<double>::infinity();
  for (double n : norms) best = std::min(best, (n * n - p * p + 1.0) / (2.0 * n));
  return best;
}

BoundResult thm2_certificate(const VectorFamily& xs, const Vector& a, double p1, double p2,
                             double tol) {
  require_tolerance(tol);
  require_unit(xs, a);
  require_nonzero(xs);
  const auto norms = xs.norms();

  DerivedConstants constants;
  constants.alpha = xs.min_norm();
  constants.alpha1 = alpha_from_radius(norms, p1);
  constants.alpha2 = alpha_from_radius(norms, p2);

  const Vector ia = kI * a;
  MarginCollector margins(tol);
  for (std::size_t k = 0; k < xs.size(); ++k) {
    margins.add(k, "ball_a", ball_margin(xs[k], a, p1));
    margins.add(k, "ball_ia", ball_margin(xs[k], ia, p2));
  }
  const double a1 = *constants.alpha1;
  const double a2 = *constants.alpha2;
  return {std::move(margins).finish(), std::move(constants), std::sqrt(a1 * a1 + a2 * a2)};
}

BoundResult cor3_certificate(const VectorFamily& xs, const Vector& a, double tol) {
  require_tolerance(tol);
  require_unit(xs, a);
  require_nonzero(xs);

  DerivedConstants constants;
  const double alpha = xs.min_norm();
  constants.alpha = alpha;

  const Vector ia = kI * a;
  MarginCollector margins(tol);
  for (std::size_t k = 0; k < xs.size(); ++k) {
    margins.add(k, "ball_a", ball_margin(xs[k], a, 1.0));
    margins.add(k, "ball_ia", ball_margin(xs[k], ia, 1.0));
  }
  return {std::move(margins).finish(), std::move(constants), alpha / std::sqrt(2.0)};
}

BoundResult thm4_certificate(const VectorFamily& xs, const Vector& a, double p, double tol) {
  require_tolerance(tol);
  require_unit(xs, a);
  require_nonzero(xs);

  DerivedConstants constants;
  constants.alpha = xs.min_norm();
  constants.alpha1 = alpha_from_radius(xs.norms(), p);

  MarginCollector margins(tol);
  for (std::size_t k = 0; k < xs.size(); ++k) {
    margins.add(k, "ball_a", ball_margin(xs[k], a, p));
  }
  const double bound = *constants.alpha1;
  return {std::move(margins).finish(), std::move(constants), bound};
}

BoundResult thm5_certificate(const VectorFamily& xs, const OrthonormalFrame& frame,
                             std::span<const double> r, std::span<const double> rho,
                             double tol) {
  require_tolerance(tol);
  require_frame(xs, frame, r.size(), rho.size(), "thm5: r and rho");
  for (std::size_t t = 0; t < r.size(); ++t) {
    if (!std::isfinite(r[t]) || !std::isfinite(rho[t])) {
      throw InputError("thm5: coefficients must be finite");
    }
  }

  MarginCollector margins(tol);
  for (std::size_t k = 0; k < xs.size(); ++k) {
    const double n = norm(xs[k]);
    for (std::size_t t = 0; t < frame.size(); ++t) {
      margins.add(k, indexed("re_r", t),
                  inner_product(xs[k], r[t] * frame[t]).real() - r[t] * r[t] * n);
      margins.add(k, indexed("im_rho", t),
                  inner_product(xs[k], rho[t] * frame[t]).imag() - rho[t] * rho[t] * n);
    }
  }
  double total = 0.0;
  for (std::size_t t = 0; t < r.size(); ++t) total += r[t] * r[t] + rho[t] * rho[t];
  return {std::move(margins).finish(), {}, std::sqrt(total)};
}

BoundResult cor6_certificate(const VectorFamily& xs, const OrthonormalFrame& frame,
                             std::span<const double> r, double tol) {
  const std::vector<double> zeros(r.size(), 0.0);
  BoundResult result = thm5_certificate(xs, frame, r, zeros, tol);
  // Drop the vacuous imaginary conditions (0 <= 0) so the report lists only
  // what the corollary states.
  auto& ms = result.hypothesis.margins;
  std::erase_if(ms, [](const MarginRecord& m) { return m.condition_id.starts_with("im_"); });
  return result;
}

BoundResult thm7_certificate(const VectorFamily& xs, const OrthonormalFrame& frame,
                             std::span<const double> p, std::span<const double> q, double tol) {
  require_tolerance(tol);
  require_frame(xs, frame, p.size(), q.size(), "thm7: p and q");
  require_nonzero(xs);
  const auto norms = xs.norms();

  DerivedConstants constants;
  constants.alpha = xs.min_norm();
  for (std::size_t t = 0; t < frame.size(); ++t) {
    constants.alpha_t.push_back(alpha_from_radius(norms, p[t]));
    constants.beta_t.push_back(alpha_from_radius(norms, q[t]));
  }

  MarginCollector margins(tol);
  for (std::size_t k = 0; k < xs.size(); ++k) {
    for (std::size_t t = 0; t < frame.size(); ++t) {
      margins.add(k, indexed("ball_a", t), ball_margin(xs[k], frame[t], p[t]));
      margins.add(k, indexed("ball_ia", t), ball_margin(xs[k], kI * frame[t], q[t]));
    }
  }
  double total = 0.0;
  for (std::size_t t = 0; t < frame.size(); ++t) {
    const double at = constants.alpha_t[t];
    const double bt = constants.beta_t[t];
    total += at * at + bt * bt;
  }
  return {std::move(margins).finish(), std::move(constants), std::sqrt(total)};
}

BoundResult cor8_certificate(const VectorFamily& xs, const OrthonormalFrame& frame,
                             double tol) {
  require_tolerance(tol);
  require_compatible(xs, frame.dimension());
  require_nonzero(xs);

  DerivedConstants constants;
  const double alpha = xs.min_norm();
  constants.alpha = alpha;

  MarginCollector margins(tol);
  for (std::size_t k = 0; k < xs.size(); ++k) {
    for (std::size_t t = 0; t < frame.size(); ++t) {
      margins.add(k, indexed("ball_a", t), ball_margin(xs[k], frame[t], 1.0));
      margins.add(k, indexed("ball_ia", t), ball_margin(xs[k], kI * frame[t], 1.0));
    }
  }
  const double m = static_cast<double>(frame.size());
  return {std::move(margins).finish(), std::move(constants),
          alpha / std::sqrt(2.0) * std::sqrt(m)};
}

StrictCheck cor9_strict_check(const VectorFamily& xs, const Vector& a, double p1, double p2,
                              double tol) {
  require_tolerance(tol);
  require_unit(xs, a);
  require_nonzero(xs);
  if (!(p1 > 0.0 && p1 <= 1.0) || !(p2 > 0.0 && p2 <= 1.0)) {
    throw InputError("cor9: p1 and p2 must lie in (0, 1] (got p1 = " + fmt_double(p1) +
                     ", p2 = " + fmt_double(p2) + ")");
  }
  const auto norms = xs.norms();

  StrictCheck check;
  check.constants.alpha = xs.min_norm();
  const double a1 = alpha_from_radius(norms, p1);
  const double a2 = alpha_from_radius(norms, p2);
  check.constants.alpha1 = a1;
  check.constants.alpha2 = a2;
  check.applicable = std::abs(a1 - std::sqrt(1.0 - p1 * p1)) > tol ||
                     std::abs(a2 - std::sqrt(1.0 - p2 * p2)) > tol;
  check.strict_bound = std::sqrt(2.0 - p1 * p1 - p2 * p2);
  return check;
}

BoundResult thm10_certificate(const VectorFamily& xs, const Vector& a, double m, double M,
                              double ell, double L, double tol) {
  require_tolerance(tol);
  require_unit(xs, a);
  require_interval(m, M, "m", "M");
  require_interval(ell, L, "ell", "L");
  require_nonzero(xs);
  const auto norms = xs.norms();

  DerivedConstants constants;
  constants.alpha = xs.min_norm();
  constants.alpha_mM = interval_alpha(norms, m, M);
  constants.alpha_lL = interval_alpha(norms, ell, L);

  const Vector center_re = ((m + M) / 2.0) * a;
  const Vector center_im = ((L + ell) / 2.0) * (kI * a);
  MarginCollector margins(tol);
  for (std::size_t k = 0; k < xs.size(); ++k) {
    margins.add(k, "ball_mM", ball_margin(xs[k], center_re, (M - m) / 2.0));
    margins.add(k, "ball_lL", ball_margin(xs[k], center_im, (L - ell) / 2.0));
  }
  const double am = *constants.alpha_mM;
  const double al = *constants.alpha_lL;
  return {std::move(margins).finish(), std::move(constants), std::sqrt(am * am + al * al)};
}

StrictCheck thm11_strict_check(const VectorFamily& xs, const Vector& a, double m, double M,
                               double ell, double L, double tol) {
  require_tolerance(tol);
  require_unit(xs, a);
  require_interval(m, M, "m", "M");
  require_interval(ell, L, "ell", "L");
  require_nonzero(xs);
  const auto norms = xs.norms();

  StrictCheck check;
  check.constants.alpha = xs.min_norm();
  const double am = interval_alpha(norms, m, M);
  const double al = interval_alpha(norms, ell, L);
  check.constants.alpha_mM = am;
  check.constants.alpha_lL = al;
  check.applicable = std::abs(am - 2.0 * std::sqrt(m * M) / (m + M)) > tol ||
                     std::abs(al - 2.0 * std::sqrt(ell * L) / (ell + L)) > tol;
  check.strict_bound =
      2.0 * std::sqrt(m * M / ((m + M) * (m + M)) + ell * L / ((ell + L) * (ell + L)));
  return check;
}

double interval_product_form(const Vector& x, const Vector& a, double lo, double hi) {
  return inner_product(hi * a - x, x - lo * a).real();
}

}  // namespace revtri
