#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "revtri/linalg.hpp"

namespace revtri {

inline constexpr double kDefaultTolerance = 1e-9;

/// Norms below this are treated as zero vectors by theorems whose constants
/// divide by ‖x_k‖.
inline constexpr double kZeroNormThreshold = 1e-12;

/// The x_1, ..., x_n of every bound: n >= 1 vectors sharing one dimension.
class VectorFamily {
 public:
  explicit VectorFamily(std::vector<Vector> vectors);

  std::size_t size() const noexcept { return vectors_.size(); }
  std::size_t dimension() const noexcept { return vectors_.front().dimension(); }
  const Vector& operator[](std::size_t k) const { return vectors_[k]; }
  std::span<const Vector> vectors() const noexcept { return vectors_; }
  auto begin() const noexcept { return vectors_.begin(); }
  auto end() const noexcept { return vectors_.end(); }

  std::vector<double> norms() const;
  double sum_of_norms() const;
  Vector sum() const;
  /// min_k ‖x_k‖.
  double min_norm() const;

  friend bool operator==(const VectorFamily&, const VectorFamily&) = default;

 private:
  std::vector<Vector> vectors_;
};

/// Theorem identifiers, in the order used to break ties when ranking.
enum class TheoremId { dm, thm1, thm2, cor3, thm4, thm5, cor6, thm7, cor8, cor9, thm10, thm11 };

inline constexpr TheoremId kAllTheorems[] = {
    TheoremId::dm,   TheoremId::thm1, TheoremId::thm2, TheoremId::cor3,
    TheoremId::thm4, TheoremId::thm5, TheoremId::cor6, TheoremId::thm7,
    TheoremId::cor8, TheoremId::cor9, TheoremId::thm10, TheoremId::thm11};

std::string_view to_string(TheoremId id) noexcept;
/// Throws InputError on an unknown name.
TheoremId parse_theorem_id(std::string_view name);

/// True for theorems stated with a single unit vector a rather than a frame.
bool uses_single_vector(TheoremId id) noexcept;

struct DmParams {
  double r = 0.0;
  friend bool operator==(const DmParams&, const DmParams&) = default;
};
struct Thm1Params {
  double r1 = 0.0;
  double r2 = 0.0;
  friend bool operator==(const Thm1Params&, const Thm1Params&) = default;
};
/// Also the parameters of cor9.
struct Thm2Params {
  double p1 = 0.0;
  double p2 = 0.0;
  friend bool operator==(const Thm2Params&, const Thm2Params&) = default;
};
struct Thm4Params {
  double p = 0.0;
  friend bool operator==(const Thm4Params&, const Thm4Params&) = default;
};
/// Also the parameters of cor6, which ignores rho.
struct Thm5Params {
  std::vector<double> r;
  std::vector<double> rho;
  friend bool operator==(const Thm5Params&, const Thm5Params&) = default;
};
struct Thm7Params {
  std::vector<double> p;
  std::vector<double> q;
  friend bool operator==(const Thm7Params&, const Thm7Params&) = default;
};
/// Also the parameters of thm11. m <= M bound the component along a,
/// ell <= L the component along i·a.
struct Thm10Params {
  double m = 0.0;
  double M = 0.0;
  double ell = 0.0;
  double L = 0.0;
  friend bool operator==(const Thm10Params&, const Thm10Params&) = default;
};
/// cor3 and cor8 take no parameters.
struct NoParams {
  friend bool operator==(const NoParams&, const NoParams&) = default;
};

using TheoremParams = std::variant<NoParams, DmParams, Thm1Params, Thm2Params, Thm4Params,
                                   Thm5Params, Thm7Params, Thm10Params>;

/// A theorem together with its hypothesis parameters.
struct TheoremSpec {
  TheoremId id = TheoremId::dm;
  TheoremParams params;
  friend bool operator==(const TheoremSpec&, const TheoremSpec&) = default;
};

struct MarginRecord {
  std::size_t vector_index = 0;
  std::string condition_id;
  /// rhs - lhs of the checked inequality; positive means strictly satisfied.
  double margin = 0.0;
};

struct HypothesisReport {
  bool satisfied = true;
  std::vector<MarginRecord> margins;
  double tolerance_used = kDefaultTolerance;
};

/// Constants derived from the family; only the entries a theorem defines are
/// populated.
struct DerivedConstants {
  std::optional<double> alpha;
  std::optional<double> alpha1;
  std::optional<double> alpha2;
  std::vector<double> alpha_t;
  std::vector<double> beta_t;
  std::optional<double> alpha_mM;
  std::optional<double> alpha_lL;
};

struct BoundResult {
  HypothesisReport hypothesis;
  DerivedConstants constants;
  double bound = 0.0;
};

struct StrictCheck {
  bool applicable = false;
  double strict_bound = 0.0;
  DerivedConstants constants;
};

BoundResult dm_certificate(const VectorFamily& xs, const Vector& a, double r,
                           double tol = kDefaultTolerance);

BoundResult thm1_certificate(const VectorFamily& xs, const Vector& a, double r1, double r2,
                             double tol = kDefaultTolerance);

/// min over the norms of (‖x‖² - p² + 1) / (2‖x‖). Requires every norm to be
/// at least kZeroNormThreshold and 0 < p < sqrt(min_norm² + 1).
double alpha_from_radius(std::span<const double> norms, double p);

BoundResult thm2_certificate(const VectorFamily& xs, const Vector& a, double p1, double p2,
                             double tol = kDefaultTolerance);

BoundResult cor3_certificate(const VectorFamily& xs, const Vector& a,
                             double tol = kDefaultTolerance);

BoundResult thm4_certificate(const VectorFamily& xs, const Vector& a, double p,
                             double tol = kDefaultTolerance);

BoundResult thm5_certificate(const VectorFamily& xs, const OrthonormalFrame& frame,
                             std::span<const double> r, std::span<const double> rho,
                             double tol = kDefaultTolerance);

BoundResult cor6_certificate(const VectorFamily& xs, const OrthonormalFrame& frame,
                             std::span<const double> r, double tol = kDefaultTolerance);

BoundResult thm7_certificate(const VectorFamily& xs, const OrthonormalFrame& frame,
                             std::span<const double> p, std::span<const double> q,
                             double tol = kDefaultTolerance);

BoundResult cor8_certificate(const VectorFamily& xs, const OrthonormalFrame& frame,
                             double tol = kDefaultTolerance);

/// Strict variant of thm2 for p1, p2 in (0, 1]: applicable when either
/// alpha_j differs from sqrt(1 - p_j²) by more than tol.
StrictCheck cor9_strict_check(const VectorFamily& xs, const Vector& a, double p1, double p2,
                              double tol = kDefaultTolerance);

BoundResult thm10_certificate(const VectorFamily& xs, const Vector& a, double m, double M,
                              double ell, double L, double tol = kDefaultTolerance);

StrictCheck thm11_strict_check(const VectorFamily& xs, const Vector& a, double m, double M,
                               double ell, double L, double tol = kDefaultTolerance);

/// Re<hi·a - x, x - lo·a>, the inner-product form of the interval hypothesis
/// of thm10. Nonnegative exactly when ‖x - (lo+hi)/2·a‖ <= (hi-lo)/2 for
/// unit a.
double interval_product_form(const Vector& x, const Vector& a, double lo, double hi);

}  // namespace revtri
