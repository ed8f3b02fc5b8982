#pragma once

#include <random>
#include <vector>

#include "oracles.hpp"
#include "revtri/bounds.hpp"
#include "revtri/linalg.hpp"

namespace support {

inline oracle::Vec coords(const revtri::Vector& v) {
  return oracle::Vec(v.coords().begin(), v.coords().end());
}

inline std::vector<oracle::Vec> coords(const revtri::VectorFamily& xs) {
  std::vector<oracle::Vec> out;
  for (const auto& x : xs) out.push_back(coords(x));
  return out;
}

inline std::vector<double> norms_of(const revtri::VectorFamily& xs) {
  std::vector<double> out;
  for (const auto& x : xs) out.push_back(oracle::norm(coords(x)));
  return out;
}

inline revtri::OrthonormalFrame single(const revtri::Vector& a) {
  return revtri::OrthonormalFrame({a});
}

inline revtri::OrthonormalFrame standard_frame(std::size_t d, std::size_t m) {
  std::vector<revtri::Vector> members;
  for (std::size_t t = 0; t < m; ++t) members.push_back(revtri::Vector::basis(d, t));
  return revtri::OrthonormalFrame(std::move(members));
}

inline revtri::OrthonormalFrame random_frame(std::size_t d, std::size_t m, std::mt19937_64& rng) {
  std::vector<revtri::Vector> raw;
  for (std::size_t t = 0; t < m; ++t) raw.push_back(revtri::gaussian_vector(d, rng));
  return revtri::gram_schmidt(raw);
}

inline revtri::VectorFamily gaussian_family(std::size_t n, std::size_t d, std::mt19937_64& rng,
                                            double scale = 1.0) {
  std::vector<revtri::Vector> xs;
  for (std::size_t k = 0; k < n; ++k) xs.push_back(scale * revtri::gaussian_vector(d, rng));
  return revtri::VectorFamily(std::move(xs));
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

}  // namespace support
