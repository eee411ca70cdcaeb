#include "hardball/topo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>

#include "hardball/errors.hpp"

namespace hardball {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError("integer overflow in addition");
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("integer overflow in multiplication");
  return r;
}

std::int64_t factorial(std::int64_t m) {
  if (m < 0) throw ParameterError("factorial of a negative number");
  std::int64_t f = 1;
  for (std::int64_t i = 2; i <= m; ++i) f = checked_mul(f, i);
  return f;
}

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw ParameterError("zero denominator");
  if (den < 0) {
    num = checked_mul(num, -1);
    den = checked_mul(den, -1);
  }
  const std::int64_t g = std::gcd(num, den);
  num_ = g ? num / g : num;
  den_ = g ? den / g : den;
}

std::string Rational::str() const {
  return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
}

Rational operator+(const Rational& a, const Rational& b) {
  const std::int64_t g = std::gcd(a.den_, b.den_);
  const std::int64_t den = checked_mul(a.den_ / g, b.den_);
  return {checked_add(checked_mul(a.num_, b.den_ / g), checked_mul(b.num_, a.den_ / g)), den};
}

Rational operator-(const Rational& a, const Rational& b) { return a + Rational(checked_mul(b.num_, -1), b.den_); }

Rational operator*(const Rational& a, const Rational& b) {
  const std::int64_t g1 = std::gcd(a.num_, b.den_) ? std::gcd(a.num_, b.den_) : 1;
  const std::int64_t g2 = std::gcd(b.num_, a.den_) ? std::gcd(b.num_, a.den_) : 1;
  return {checked_mul(a.num_ / g1, b.num_ / g2), checked_mul(a.den_ / g2, b.den_ / g1)};
}

Rational harmonic(std::int64_t m) {
  if (m < 0) throw ParameterError("harmonic number of a negative index");
  Rational h(0);
  for (std::int64_t i = 1; i <= m; ++i) h = h + Rational(1, i);
  return h;
}

PoincarePolynomial poincare_conf(std::int64_t n, std::int64_t d) {
  if (n < 1 || d < 2) throw ParameterError("poincare_conf needs n >= 1 and d >= 2");
  const auto step = static_cast<std::size_t>(d - 1);
  PoincarePolynomial p;
  p.coefficients = {1};
  for (std::int64_t i = 1; i <= n - 1; ++i) {
    std::vector<std::int64_t> next(p.coefficients.size() + step, 0);
    for (std::size_t k = 0; k < p.coefficients.size(); ++k) {
      next[k] = checked_add(next[k], p.coefficients[k]);
      next[k + step] = checked_add(next[k + step], checked_mul(i, p.coefficients[k]));
    }
    p.coefficients = std::move(next);
  }

  // The two leading coefficients are (n-1)! H_{n-1} and (n-1)!.
  const std::int64_t top = factorial(n - 1);
  if (p.coefficients.back() != top) throw NumericError("poincare_conf: top coefficient mismatch");
  if (n >= 2) {
    const Rational sub = Rational(top) * harmonic(n - 1);
    const std::size_t deg = static_cast<std::size_t>((n - 2) * (d - 1));
    if (!sub.is_integer() || p.coefficients[deg] != sub.num())
      throw NumericError("poincare_conf: sub-top coefficient mismatch");
  }
  return p;
}

std::size_t k_multiplicity(const BoxDomain& domain) {
  const double L = domain.shortest_side();
  return static_cast<std::size_t>(std::count_if(
      domain.lengths().begin(), domain.lengths().end(),
      [&](double l) { return std::abs(l - L) <= domain.abs_tol(); }));
}

BettiTables betti_across_threshold(std::int64_t n, std::int64_t d, std::int64_t k) {
  if (n < 2 || d < 2 || k < 1 || k > d)
    throw ParameterError("betti_across_threshold needs n >= 2, d >= 2, 1 <= k <= d");
  BettiTables t;
  t.n = n;
  t.d = d;
  t.k = k;
  t.top_degree = checked_mul(n - 1, d - 1);
  t.below = poincare_conf(n, d).coefficients;
  const auto N = static_cast<std::size_t>(t.top_degree);
  const std::int64_t fact = factorial(n - 1);
  t.cells_attached = checked_mul(k, factorial(n));
  t.cells_to_betti_N = fact;

  t.above.assign(N + 1, 0);
  for (std::size_t i = 0; i + 2 <= N; ++i) t.above[i] = t.below[i];
  const Rational kn_minus_1(checked_add(checked_mul(k, n), -1));
  const Rational factor = d == 2 ? harmonic(n - 1) + kn_minus_1 : kn_minus_1;
  const Rational beta = factor * Rational(fact);
  if (!beta.is_integer()) throw NumericError("betti_across_threshold: non-integral Betti number");
  t.above[N - 1] = beta.num();

  // Same value through the cell count: below + k n! - (n-1)!.
  const std::int64_t via_cells =
      checked_add(checked_add(t.below[N - 1], t.cells_attached), -t.cells_to_betti_N);
  if (via_cells != t.above[N - 1]) throw NumericError("betti_across_threshold: cell count mismatch");
  return t;
}

std::int64_t euler_characteristic(const std::vector<std::int64_t>& betti) {
  std::int64_t chi = 0;
  for (std::size_t i = 0; i < betti.size(); ++i)
    chi = checked_add(chi, i % 2 == 0 ? betti[i] : -betti[i]);
  return chi;
}

}  // namespace hardball
