#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "hardball/geometry.hpp"

namespace hardball {

/// Exact rational over checked 64-bit integers; always normalized with a
/// positive denominator. Overflow throws OverflowError.
class Rational {
 public:
  Rational(std::int64_t num = 0, std::int64_t den = 1);

  std::int64_t num() const noexcept { return num_; }
  std::int64_t den() const noexcept { return den_; }
  bool is_integer() const noexcept { return den_ == 1; }
  std::string str() const;

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend bool operator==(const Rational& a, const Rational& b) = default;

 private:
  std::int64_t num_;
  std::int64_t den_;
};

std::int64_t checked_add(std::int64_t a, std::int64_t b);
std::int64_t checked_mul(std::int64_t a, std::int64_t b);
std::int64_t factorial(std::int64_t m);

struct PoincarePolynomial {
  std::vector<std::int64_t> coefficients;  // index = degree
  std::size_t degree() const { return coefficients.empty() ? 0 : coefficients.size() - 1; }
  std::int64_t at(std::size_t degree) const {
    return degree < coefficients.size() ? coefficients[degree] : 0;
  }
};

/// prod_{i=1}^{n-1} (1 + i t^{d-1}).
PoincarePolynomial poincare_conf(std::int64_t n, std::int64_t d);

Rational harmonic(std::int64_t m);

/// Number of sides equal (within abs_tol) to the shortest one.
std::size_t k_multiplicity(const BoxDomain& domain);

struct BettiTables {
  std::int64_t n = 0, d = 0, k = 0;
  std::int64_t top_degree = 0;  // N = (n-1)(d-1)
  std::vector<std::int64_t> below;
  std::vector<std::int64_t> above;
  std::int64_t cells_attached = 0;    // k n!
  std::int64_t cells_to_betti_N = 0;  // (n-1)!
  // Vanishing above degree N-1 is assumed, not derived.
  bool conditional = true;
};

BettiTables betti_across_threshold(std::int64_t n, std::int64_t d, std::int64_t k);

std::int64_t euler_characteristic(const std::vector<std::int64_t>& betti);

}  // namespace hardball
