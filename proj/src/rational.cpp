#include "agentnet/rational.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <stdexcept>

namespace agentnet {

Rational::Rational(std::int64_t num, std::int64_t den) : num_(num), den_(den) {
  if (den_ == 0) throw std::invalid_argument("zero denominator");
  normalize();
}

void Rational::normalize() {
  if (den_ < 0) {
    den_ = -den_;
    num_ = -num_;
  }
  std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
  if (g > 1) {
    num_ /= g;
    den_ /= g;
  }
}

Rational Rational::parse_decimal(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty number");
  std::size_t i = 0;
  bool neg = false;
  if (text[0] == '+' || text[0] == '-') {
    neg = text[0] == '-';
    i = 1;
  }
  std::int64_t num = 0;
  std::int64_t den = 1;
  bool seen_digit = false;
  bool seen_point = false;
  for (; i < text.size(); ++i) {
    char c = text[i];
    if (c == '.') {
      if (seen_point) throw std::invalid_argument("bad number");
      seen_point = true;
      continue;
    }
    if (!std::isdigit(static_cast<unsigned char>(c))) throw std::invalid_argument("bad number");
    seen_digit = true;
    if (num > (INT64_MAX - 9) / 10 || (seen_point && den > INT64_MAX / 10))
      throw std::invalid_argument("number too long");
    num = num * 10 + (c - '0');
    if (seen_point) den *= 10;
  }
  if (!seen_digit) throw std::invalid_argument("bad number");
  return Rational(neg ? -num : num, den);
}

std::string Rational::to_decimal() const {
  std::int64_t d = den_;
  int twos = 0, fives = 0;
  while (d % 2 == 0) { d /= 2; ++twos; }
  while (d % 5 == 0) { d /= 5; ++fives; }
  if (d != 1) throw std::logic_error("weight is not a finite decimal");
  int digits = std::max(twos, fives);
  std::int64_t scale = 1;
  for (int k = 0; k < digits; ++k) scale *= 10;
  __int128 scaled = static_cast<__int128>(num_) * (scale / den_);
  bool neg = scaled < 0;
  if (neg) scaled = -scaled;
  std::int64_t whole = static_cast<std::int64_t>(scaled / scale);
  std::int64_t frac = static_cast<std::int64_t>(scaled % scale);
  std::string out = (neg ? "-" : "") + std::to_string(whole);
  if (digits == 0) return out + ".0";
  std::string f = std::to_string(frac);
  out += '.';
  out += std::string(static_cast<std::size_t>(digits) - f.size(), '0') + f;
  return out;
}

Rational Rational::operator+(const Rational& o) const {
  std::int64_t g = std::gcd(den_, o.den_);
  __int128 den = static_cast<__int128>(den_ / g) * o.den_;
  __int128 num = static_cast<__int128>(num_) * (o.den_ / g) + static_cast<__int128>(o.num_) * (den_ / g);
  __int128 h = num < 0 ? -num : num;
  __int128 a = h, b = den;
  while (b != 0) {
    __int128 t = a % b;
    a = b;
    b = t;
  }
  if (a > 1) {
    num /= a;
    den /= a;
  }
  if (den > INT64_MAX || num > INT64_MAX || num < INT64_MIN) throw std::overflow_error("rational overflow");
  return Rational(static_cast<std::int64_t>(num), static_cast<std::int64_t>(den));
}

Rational Rational::operator*(std::int64_t k) const {
  __int128 num = static_cast<__int128>(num_) * k;
  if (num > INT64_MAX || num < INT64_MIN) throw std::overflow_error("rational overflow");
  return Rational(static_cast<std::int64_t>(num), den_);
}

std::strong_ordering Rational::operator<=>(const Rational& o) const {
  __int128 l = static_cast<__int128>(num_) * o.den_;
  __int128 r = static_cast<__int128>(o.num_) * den_;
  if (l < r) return std::strong_ordering::less;
  if (l > r) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

}  // namespace agentnet
