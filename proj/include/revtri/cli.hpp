#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "revtri/bounds.hpp"
#include "revtri/certify.hpp"
#include "revtri/generators.hpp"
#include "revtri/linalg.hpp"

namespace revtri::cli {

enum ExitCode : int {
  kExitCertified = 0,
  kExitUnsatisfied = 1,
  kExitViolation = 2,
  kExitInputError = 3,
};

/// One problem instance, as stored in an instance file:
///
///   {"dimension": 2, "theorem": "thm1", "params": {"r1": 0.6, "r2": 0.8},
///    "frame": [[[1, 0], [0, 0]]], "vectors": [[[0.6, 0.8], [0, 0]]]}
///
/// Every complex coordinate is an [re, im] pair. List-valued parameters
/// (thm5 r/rho, cor6 r, thm7 p/q) are JSON arrays.
struct ProblemInstance {
  std::size_t dimension = 0;
  TheoremSpec spec;
  OrthonormalFrame frame;
  VectorFamily vectors;
};

/// Raw parameter values by key; scalars are single-element lists.
using ParamMap = std::map<std::string, std::vector<double>>;

/// Builds typed parameters, rejecting missing, unknown or mis-sized keys.
/// `frame_size` fixes the expected length of per-frame-member lists.
TheoremParams build_params(TheoremId id, const ParamMap& raw, std::size_t frame_size);
ParamMap params_to_map(const TheoremParams& params);

ProblemInstance parse_instance(const std::string& text);
ProblemInstance load_instance(const std::string& path);
/// Canonical text of an instance; numbers use 17 significant digits so the
/// file re-parses to bit-identical doubles.
std::string serialize_instance(const ProblemInstance& instance);

/// Grid file: {"grid": [{"theorem": "thm2", "params": {"p1": 0.8, "p2": 0.8}}, ...]}.
/// Frame-dependent list lengths are checked against `frame_size`.
std::vector<TheoremSpec> load_grid(const std::string& path, std::size_t frame_size);

/// key = value lines describing every certificate field, margins included.
std::string format_certificate(const BoundCertificate& cert);

int cmd_certify(const std::string& input_path, double tol, const std::string& output_path,
                std::ostream& out, std::ostream& err);

int cmd_scan(const std::string& input_path, const std::string& grid_path, double tol,
             const std::string& output_path, std::ostream& out, std::ostream& err);

struct EqualityRequest {
  TheoremId theorem = TheoremId::thm1;
  ParamMap params;
  std::vector<double> norms;
  std::size_t dimension = 1;
  /// Frame size for cor8; other theorems infer it from their parameters.
  std::size_t frame_size = 1;
  std::uint64_t seed = 0;
  double tol = kDefaultTolerance;
  std::string output_path;
};

/// The frame is the first m standard basis vectors of C^dimension. Writes the
/// report to output_path and the family to output_path + ".instance.json".
int cmd_equality(const EqualityRequest& request, std::ostream& out, std::ostream& err);

struct FuzzRequest {
  TheoremId theorem = TheoremId::dm;
  std::size_t trials = 0;
  std::size_t d_max = 8;
  std::size_t n_max = 6;
  std::uint64_t seed = 0;
  unsigned threads = 0;
  std::string output_path;
};

/// Violating instances are written for replay to
/// output_path + ".violation<i>.json" (first 16 only).
int cmd_fuzz(const FuzzRequest& request, std::ostream& out, std::ostream& err);

}  // namespace revtri::cli
