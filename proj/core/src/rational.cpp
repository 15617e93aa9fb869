#include "lacelab/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace lacelab {

Rational::Rational(long num, long den) : q_(num, den) {
  if (den == 0) throw std::invalid_argument("Rational: zero denominator");
  q_.canonicalize();
}

Rational& Rational::operator+=(const Rational& o) {
  q_ += o.q_;
  return *this;
}
Rational& Rational::operator-=(const Rational& o) {
  q_ -= o.q_;
  return *this;
}
Rational& Rational::operator*=(const Rational& o) {
  q_ *= o.q_;
  return *this;
}
Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("Rational: division by zero");
  q_ /= o.q_;
  return *this;
}

Rational Rational::operator-() const { return Rational(mpq_class(-q_)); }

Rational Rational::abs() const { return Rational(mpq_class(::abs(q_))); }

std::optional<Rational> Rational::parse(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) return std::nullopt;

  auto is_int = [](const std::string& t) {
    std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (i >= t.size()) return false;
    for (; i < t.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
    return true;
  };

  auto slash = s.find('/');
  if (slash != std::string::npos) {
    std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    if (!is_int(num) || !is_int(den)) return std::nullopt;
    mpq_class q;
    if (q.set_str(num + "/" + den, 10) != 0) return std::nullopt;
    if (q.get_den() == 0) return std::nullopt;
    q.canonicalize();
    return Rational(q);
  }

  auto dot = s.find('.');
  if (dot != std::string::npos) {
    std::string ipart = s.substr(0, dot), fpart = s.substr(dot + 1);
    bool neg = !ipart.empty() && ipart[0] == '-';
    if (!ipart.empty() && (ipart[0] == '-' || ipart[0] == '+')) ipart.erase(0, 1);
    if (ipart.empty() && fpart.empty()) return std::nullopt;
    for (char c : ipart + fpart)
      if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
    // base forced to 10: the default base-0 parse would read leading
    // zeros ("025") as octal
    mpz_class digits((ipart + fpart).empty() ? std::string("0") : ipart + fpart, 10);
    mpz_class den = 1;
    for (std::size_t i = 0; i < fpart.size(); ++i) den *= 10;
    mpq_class q(digits, den);
    q.canonicalize();
    if (neg) q = -q;
    return Rational(q);
  }

  if (!is_int(s)) return std::nullopt;
  mpq_class q;
  if (q.set_str(s, 10) != 0) return std::nullopt;
  return Rational(q);
}

std::string Rational::to_fraction_string() const {
  if (q_.get_den() == 1) return q_.get_num().get_str();
  return q_.get_str();
}

std::string Rational::to_decimal_string() const {
  mpz_class num = q_.get_num(), den = q_.get_den();
  if (den == 1) return num.get_str();

  // The expansion terminates iff den = 2^a 5^b.
  mpz_class d = den;
  unsigned a = 0, b = 0;
  while (d % 2 == 0) {
    d /= 2;
    ++a;
  }
  while (d % 5 == 0) {
    d /= 5;
    ++b;
  }
  if (d != 1) return to_fraction_string();

  unsigned k = std::max(a, b);
  mpz_class scale = 1;
  for (unsigned i = 0; i < k; ++i) scale *= 10;
  mpz_class scaled = num * scale / den;  // exact by construction
  bool neg = scaled < 0;
  mpz_class mag = neg ? mpz_class(-scaled) : scaled;
  std::string digits = mag.get_str();
  if (digits.size() <= k) digits.insert(0, k + 1 - digits.size(), '0');
  digits.insert(digits.size() - k, ".");
  // Trim trailing zeros but keep at least one fractional digit.
  while (digits.back() == '0' && digits[digits.size() - 2] != '.') digits.pop_back();
  return (neg ? "-" : "") + digits;
}

Rational pow(Rational base, unsigned exp) {
  Rational result(1);
  while (exp > 0) {
    if (exp & 1u) result *= base;
    base *= base;
    exp >>= 1u;
  }
  return result;
}

}  // namespace lacelab
