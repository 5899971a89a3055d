#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace agentnet {

// Exact non-negative-denominator rational. Edge weights in files are finite
// decimals, so every value produced by the parser has a power-of-ten denominator.
class Rational {
 public:
  Rational() = default;
  Rational(std::int64_t num, std::int64_t den = 1);

  static Rational parse_decimal(std::string_view text);  // throws std::invalid_argument

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  // Shortest exact decimal rendering; requires den to divide a power of ten.
  std::string to_decimal() const;
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  Rational operator+(const Rational& o) const;
  Rational operator*(std::int64_t k) const;
  bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
  std::strong_ordering operator<=>(const Rational& o) const;

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  void normalize();
};

}  // namespace agentnet
