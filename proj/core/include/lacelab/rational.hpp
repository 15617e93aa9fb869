#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>

namespace lacelab {

// Exact rational scalar, a thin value wrapper around GMP's mpq_class.
// Results are kept canonicalized. Adds the string forms used at the CLI
// boundary: "p/q" input and exact decimal output where the denominator
// is of the form 2^a 5^b.
class Rational {
 public:
  Rational() : q_(0) {}
  Rational(int n) : q_(n) {}
  Rational(long n) : q_(n) {}
  Rational(long long n) : q_(static_cast<long>(n)) {}
  Rational(long num, long den);

  // Accepts "p/q", plain integers and decimal literals ("0.05" -> 1/20).
  static std::optional<Rational> parse(const std::string& text);

  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  Rational operator-() const;

  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.q_ != b.q_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.q_ < b.q_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.q_ <= b.q_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.q_ > b.q_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.q_ >= b.q_; }

  bool is_zero() const { return sgn(q_) == 0; }
  int sign() const { return sgn(q_); }
  Rational abs() const;

  double to_double() const { return q_.get_d(); }
  std::string to_fraction_string() const;  // "p" or "p/q"
  std::string to_decimal_string() const;   // exact decimal, or fraction if impossible

 private:
  explicit Rational(mpq_class q) : q_(std::move(q)) {}
  mpq_class q_;
};

Rational pow(Rational base, unsigned exp);

// Uniform access to the two arithmetic backends (exact rationals for the
// identity checks, doubles for the asymptotic scans).
template <class T>
struct scalar_traits;

template <>
struct scalar_traits<double> {
  static double zero() { return 0.0; }
  static double one() { return 1.0; }
  static double from_ratio(long num, long den) {
    return static_cast<double>(num) / static_cast<double>(den);
  }
  static double from_rational(const Rational& r) { return r.to_double(); }
  static bool is_zero(double x) { return x == 0.0; }
  static double to_double(double x) { return x; }
  static constexpr bool exact = false;
};

template <>
struct scalar_traits<Rational> {
  static Rational zero() { return Rational(0); }
  static Rational one() { return Rational(1); }
  static Rational from_ratio(long num, long den) { return Rational(num, den); }
  static Rational from_rational(const Rational& r) { return r; }
  static bool is_zero(const Rational& x) { return x.is_zero(); }
  static double to_double(const Rational& x) { return x.to_double(); }
  static constexpr bool exact = true;
};

}  // namespace lacelab
