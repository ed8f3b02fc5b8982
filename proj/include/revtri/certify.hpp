#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "revtri/bounds.hpp"
#include "revtri/linalg.hpp"

namespace revtri {

/// Denominators below this make the ratio ‖Σx_k‖ / Σ‖x_k‖ undefined.
inline constexpr double kRatioDenominatorFloor = 1e-15;

enum class CertificateStatus {
  certified,
  hypotheses_unsatisfied,
  /// Hypotheses hold but the bound (or, for cor9/thm11, its strictness)
  /// fails. Either an implementation defect or a counterexample.
  soundness_violation,
};

std::string_view to_string(CertificateStatus status) noexcept;

struct BoundCertificate {
  TheoremId theorem_id = TheoremId::dm;
  HypothesisReport hypothesis;
  DerivedConstants constants;
  double bound = 0.0;
  double sum_of_norms = 0.0;
  double norm_of_sum = 0.0;
  /// Empty when sum_of_norms < kRatioDenominatorFloor.
  std::optional<double> ratio;
  /// bound·Σ‖x_k‖ <= ‖Σx_k‖ + tolerance·max(1, Σ‖x_k‖).
  bool inequality_holds = true;
  /// Hypotheses hold and ‖Σx_k - target‖ <= tolerance·Σ‖x_k‖, where target
  /// is the theorem's equality vector.
  bool equality_case = false;
  double equality_residual = 0.0;
  /// Set only for the strict variants cor9 and thm11.
  std::optional<bool> strict_applicable;
  /// ‖Σx_k‖ > bound·Σ‖x_k‖; set only for the strict variants.
  std::optional<bool> strict_holds;
  double tolerance = kDefaultTolerance;

  CertificateStatus status() const noexcept;
};

/// Evaluates one theorem on an instance. Single-vector theorems take a frame
/// of size one whose member is a. Throws InputError/DegenerateInputError
/// when the parameters or the family fall outside the theorem's domain.
BoundCertificate evaluate(const VectorFamily& xs, const OrthonormalFrame& frame,
                          const TheoremSpec& spec, double tol = kDefaultTolerance);

std::optional<double> true_ratio(const VectorFamily& xs);

/// Certificates of every grid entry whose hypotheses hold, best bound first.
/// Ties are ordered by theorem id, then by grid position. Entries whose
/// parameters are inadmissible for the family are skipped.
std::vector<BoundCertificate> tightness_scan(const VectorFamily& xs,
                                             const OrthonormalFrame& frame,
                                             std::span<const TheoremSpec> grid,
                                             double tol = kDefaultTolerance);

}  // namespace revtri
