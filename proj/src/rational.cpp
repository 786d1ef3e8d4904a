#include "ramsey/rational.hpp"

#include <stdexcept>

namespace ramsey {

Rational::Rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  value_ = mpq_class(num, den);
  value_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty numeral");
  bool neg = false;
  std::size_t pos = 0;
  if (s[0] == '-' || s[0] == '+') {
    neg = s[0] == '-';
    pos = 1;
  }
  std::string body = s.substr(pos);
  auto digits_only = [](const std::string& d) {
    if (d.empty()) return false;
    for (char c : d)
      if (c < '0' || c > '9') return false;
    return true;
  };
  Rational out;
  if (auto slash = body.find('/'); slash != std::string::npos) {
    std::string n = body.substr(0, slash), d = body.substr(slash + 1);
    if (!digits_only(n) || !digits_only(d)) throw std::invalid_argument("bad numeral: " + s);
    out = Rational(BigInt(n), BigInt(d));
  } else if (auto dot = body.find('.'); dot != std::string::npos) {
    std::string i = body.substr(0, dot), f = body.substr(dot + 1);
    if (i.empty()) i = "0";
    if (!digits_only(i) || (!f.empty() && !digits_only(f)))
      throw std::invalid_argument("bad numeral: " + s);
    BigInt den = 1;
    for (std::size_t k = 0; k < f.size(); ++k) den *= 10;
    out = Rational(BigInt(i + f), den);
  } else {
    if (!digits_only(body)) throw std::invalid_argument("bad numeral: " + s);
    out = Rational(BigInt(body));
  }
  return neg ? -out : out;
}

Rational Rational::floor() const {
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), value_.get_num_mpz_t(), value_.get_den_mpz_t());
  return Rational(q);
}

Rational Rational::abs() const { return sign() < 0 ? -*this : *this; }

Rational Rational::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero");
  return Rational(denominator(), numerator());
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("division by zero");
  value_ /= o.value_;
  return *this;
}

std::string Rational::str() const { return value_.get_str(); }

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

BigInt lcm(const BigInt& a, const BigInt& b) {
  BigInt r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

BigInt gcd(const BigInt& a, const BigInt& b) {
  BigInt r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

BigInt floor_mod(const BigInt& a, const BigInt& m) {
  if (m <= 0) throw std::domain_error("modulus must be positive");
  BigInt r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

std::size_t bit_length(const Rational& r) {
  BigInt n = r.numerator();
  BigInt d = r.denominator();
  std::size_t bits = mpz_sizeinbase(n.get_mpz_t(), 2);
  if (d != 1) bits += mpz_sizeinbase(d.get_mpz_t(), 2);
  return bits;
}

}  // namespace ramsey
