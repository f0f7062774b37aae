#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "gcsi/complex_matrix.hpp"

namespace gcsi {

/// Deterministic random source. Gaussians come from an explicit Box-Muller
/// transform so that streams are bit-identical across platforms and library
/// versions (std::normal_distribution is implementation-defined).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  /// Uniform in (0, 1), strictly excluding both endpoints.
  double uniform_open() {
    return (static_cast<double>(gen_() >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, n).
  std::uint64_t uniform_index(std::uint64_t n) { return gen_() % n; }

  /// Standard real Gaussian N(0, 1).
  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = uniform_open();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * 3.14159265358979323846 * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
  }

  /// Standard complex Gaussian with E|z|^2 = 1.
  Complex complex_normal() {
    const double re = gaussian();
    const double im = gaussian();
    return Complex{re * 0.7071067811865476, im * 0.7071067811865476};
  }

  /// Matrix with iid standard complex Gaussian entries.
  ComplexMatrix ginibre(std::size_t rows, std::size_t cols) {
    ComplexMatrix m(rows, cols);
    for (auto& z : m.entries()) z = complex_normal();
    return m;
  }

 private:
  std::mt19937_64 gen_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace gcsi
