#include "revtri/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "revtri/errors.hpp"

namespace revtri {

namespace {

void require_same_dimension(const Vector& x, const Vector& y, const char* op) {
  if (x.dimension() != y.dimension()) {
    throw InputError(std::string(op) + ": dimension mismatch (" +
                     std::to_string(x.dimension()) + " vs " +
                     std::to_string(y.dimension()) + ")");
  }
}

}  // namespace

Vector::Vector(std::size_t dimension) : coords_(dimension) {
  if (dimension == 0) throw InputError("vector dimension must be at least 1");
}

Vector::Vector(std::vector<Complex> coords) : coords_(std::move(coords)) {
  if (coords_.empty()) throw InputError("vector dimension must be at least 1");
  for (std::size_t j = 0; j < coords_.size(); ++j) {
    if (!std::isfinite(coords_[j].real()) || !std::isfinite(coords_[j].imag())) {
      throw InputError("vector coordinate " + std::to_string(j) + " is not finite");
    }
  }
}

Vector::Vector(std::initializer_list<Complex> coords)
    : Vector(std::vector<Complex>(coords)) {}

Vector Vector::basis(std::size_t dimension, std::size_t index) {
  if (index >= dimension) throw InputError("basis index out of range");
  Vector e(dimension);
  e.coords_[index] = 1.0;
  return e;
}

Vector& Vector::operator+=(const Vector& other) {
  require_same_dimension(*this, other, "vector addition");
  for (std::size_t j = 0; j < coords_.size(); ++j) coords_[j] += other.coords_[j];
  return *this;
}

Vector& Vector::operator-=(const Vector& other) {
  require_same_dimension(*this, other, "vector subtraction");
  for (std::size_t j = 0; j < coords_.size(); ++j) coords_[j] -= other.coords_[j];
  return *this;
}

Vector& Vector::operator*=(Complex s) noexcept {
  for (auto& c : coords_) c *= s;
  return *this;
}

Vector operator+(Vector x, const Vector& y) { return x += y; }
Vector operator-(Vector x, const Vector& y) { return x -= y; }
Vector operator*(Complex s, Vector x) { return x *= s; }

Complex inner_product(const Vector& x, const Vector& y) {
  require_same_dimension(x, y, "inner_product");
  Complex acc{0.0, 0.0};
  for (std::size_t j = 0; j < x.dimension(); ++j) acc += x[j] * std::conj(y[j]);
  return acc;
}

double real_inner_product(const Vector& x, const Vector& y) {
  return inner_product(x, y).real();
}

double norm(const Vector& x) {
  // Scaled accumulation, same idea as hypot, so large coordinates do not
  // overflow the sum of squares.
  double scale = 0.0;
  for (const auto& c : x.coords()) {
    scale = std::max({scale, std::abs(c.real()), std::abs(c.imag())});
  }
  if (scale == 0.0) return 0.0;
  double sum = 0.0;
  for (const auto& c : x.coords()) {
    const double re = c.real() / scale;
    const double im = c.imag() / scale;
    sum += re * re + im * im;
  }
  return scale * std::sqrt(sum);
}

OrthonormalFrame::OrthonormalFrame(std::vector<Vector> members, double tol)
    : members_(std::move(members)), tol_(tol) {
  if (members_.empty()) throw InputError("orthonormal frame needs at least one member");
  if (!(tol_ >= 0.0)) throw InputError("frame tolerance must be nonnegative");
  const std::size_t d = members_.front().dimension();
  if (members_.size() > d) {
    throw InputError("orthonormal frame has " + std::to_string(members_.size()) +
                     " members but ambient dimension is " + std::to_string(d));
  }
  for (std::size_t s = 0; s < members_.size(); ++s) {
    if (members_[s].dimension() != d) {
      throw InputError("frame member " + std::to_string(s) + " has mismatched dimension");
    }
    const double deviation = std::abs(norm(members_[s]) - 1.0);
    if (deviation > tol_) {
      throw InputError("frame member " + std::to_string(s) +
                       " is not a unit vector (|norm - 1| = " + std::to_string(deviation) + ")");
    }
    for (std::size_t t = 0; t < s; ++t) {
      const double overlap = std::abs(inner_product(members_[s], members_[t]));
      if (overlap > tol_) {
        throw InputError("frame members " + std::to_string(t) + " and " + std::to_string(s) +
                         " are not orthogonal (|<a_s,a_t>| = " + std::to_string(overlap) + ")");
      }
    }
  }
}

OrthonormalFrame gram_schmidt(std::span<const Vector> vs) {
  if (vs.empty()) throw InputError("gram_schmidt: empty input");
  std::vector<Vector> basis;
  basis.reserve(vs.size());
  for (std::size_t k = 0; k < vs.size(); ++k) {
    if (k > 0 && vs[k].dimension() != basis.front().dimension()) {
      throw InputError("gram_schmidt: vector " + std::to_string(k) + " has mismatched dimension");
    }
    Vector v = vs[k];
    // Two sweeps of modified Gram-Schmidt ("twice is enough").
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& q : basis) v -= inner_product(v, q) * q;
    }
    const double r = norm(v);
    if (r < kRankTolerance) {
      throw DegenerateInputError("gram_schmidt: vector " + std::to_string(k) +
                                 " is linearly dependent on its predecessors");
    }
    v *= 1.0 / r;
    basis.push_back(std::move(v));
  }
  return OrthonormalFrame(std::move(basis), kFrameTolerance);
}

Vector gaussian_vector(std::size_t dimension, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<Complex> coords(dimension);
  for (auto& c : coords) {
    const double re = normal(rng);
    const double im = normal(rng);
    c = Complex(re, im);
  }
  return Vector(std::move(coords));
}

Vector random_unit_vector(std::size_t dimension, std::mt19937_64& rng) {
  for (;;) {
    Vector g = gaussian_vector(dimension, rng);
    const double r = norm(g);
    if (r > 1e-300) return (1.0 / r) * std::move(g);
  }
}

Vector random_unit_orthogonal(const OrthonormalFrame& frame, std::mt19937_64& rng) {
  if (frame.size() >= frame.dimension()) {
    throw DegenerateInputError("no direction orthogonal to a frame that spans the space");
  }
  for (;;) {
    Vector v = gaussian_vector(frame.dimension(), rng);
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& a : frame.members()) v -= inner_product(v, a) * a;
    }
    const double r = norm(v);
    if (r > 1e-6) return (1.0 / r) * std::move(v);
  }
}

Vector sample_in_ball(const Vector& center, double radius, std::mt19937_64& rng) {
  if (!(radius >= 0.0) || !std::isfinite(radius)) {
    throw InputError("sample_in_ball: radius must be finite and nonnegative");
  }
  if (radius == 0.0) return center;
  const std::size_t d = center.dimension();
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double scale = radius * std::pow(unit(rng), 1.0 / static_cast<double>(2 * d));
  Vector y = center + scale * random_unit_vector(d, rng);
  // Rounding in the addition can push a boundary draw a few ulps outside.
  if (norm(y - center) > radius) return sample_in_ball(center, radius, rng);
  return y;
}

Vector sample_in_ball(const Vector& center, double radius, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return sample_in_ball(center, radius, rng);
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t counter) noexcept {
  // splitmix64 finalizer over (seed, counter).
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (counter + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace revtri
