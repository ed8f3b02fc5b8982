#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace revtri {

using Complex = std::complex<double>;

inline constexpr Complex kI{0.0, 1.0};

/// Tolerance used for orthonormality of frames produced by gram_schmidt and
/// accepted from instance files.
inline constexpr double kFrameTolerance = 1e-9;

/// Residual norm below which gram_schmidt declares the input rank deficient.
inline constexpr double kRankTolerance = 1e-12;

/// A vector in C^d with the standard inner product. Coordinates are always
/// finite; the dimension is at least one.
class Vector {
 public:
  /// Zero vector of the given dimension.
  explicit Vector(std::size_t dimension);
  explicit Vector(std::vector<Complex> coords);
  Vector(std::initializer_list<Complex> coords);

  static Vector basis(std::size_t dimension, std::size_t index);

  std::size_t dimension() const noexcept { return coords_.size(); }
  const Complex& operator[](std::size_t j) const { return coords_[j]; }
  std::span<const Complex> coords() const noexcept { return coords_; }

  Vector& operator+=(const Vector& other);
  Vector& operator-=(const Vector& other);
  Vector& operator*=(Complex s) noexcept;

  friend bool operator==(const Vector&, const Vector&) = default;

 private:
  std::vector<Complex> coords_;
};

Vector operator+(Vector x, const Vector& y);
Vector operator-(Vector x, const Vector& y);
Vector operator*(Complex s, Vector x);

/// <x, y> = sum_j x_j conj(y_j); linear in the first argument.
Complex inner_product(const Vector& x, const Vector& y);

double norm(const Vector& x);

/// Real part of the inner product: the Euclidean inner product of x and y
/// viewed as vectors in R^{2d}.
double real_inner_product(const Vector& x, const Vector& y);

/// Orthonormal vectors a_1..a_m in C^d. Construction validates
/// |‖a_t‖ - 1| <= tol, |<a_s, a_t>| <= tol for s != t, and m <= d.
class OrthonormalFrame {
 public:
  explicit OrthonormalFrame(std::vector<Vector> members, double tol = kFrameTolerance);

  std::size_t size() const noexcept { return members_.size(); }
  std::size_t dimension() const noexcept { return members_.front().dimension(); }
  double tolerance() const noexcept { return tol_; }
  const Vector& operator[](std::size_t t) const { return members_[t]; }
  std::span<const Vector> members() const noexcept { return members_; }

 private:
  std::vector<Vector> members_;
  double tol_;
};

/// Modified Gram-Schmidt with one re-orthogonalization pass. Throws
/// DegenerateInputError naming the first index whose residual falls below
/// kRankTolerance.
OrthonormalFrame gram_schmidt(std::span<const Vector> vs);

/// Vector with independent standard normal real and imaginary parts.
Vector gaussian_vector(std::size_t dimension, std::mt19937_64& rng);

/// Uniform direction on the unit sphere of R^{2d}.
Vector random_unit_vector(std::size_t dimension, std::mt19937_64& rng);

/// Unit vector orthogonal (complex inner product) to every member of the
/// frame. Requires frame.size() < frame.dimension().
Vector random_unit_orthogonal(const OrthonormalFrame& frame, std::mt19937_64& rng);

/// Uniform point of the real 2d-dimensional ball ‖y - center‖ <= radius.
Vector sample_in_ball(const Vector& center, double radius, std::mt19937_64& rng);
Vector sample_in_ball(const Vector& center, double radius, std::uint64_t seed);

/// Deterministic 64-bit mixing used to derive independent per-trial seeds
/// from a base seed and a counter.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t counter) noexcept;

}  // namespace revtri
