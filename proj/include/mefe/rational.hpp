#ifndef MEFE_RATIONAL_HPP
#define MEFE_RATIONAL_HPP

#include <compare>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace mefe {

/// Exact rational number kept in lowest terms with a positive denominator.
///
/// Arithmetic is carried out in 128-bit intermediates and throws
/// std::overflow_error if a reduced result does not fit in 64 bits.
class Rational {
public:
  constexpr Rational() = default;
  constexpr Rational(std::int64_t value) : num_(value), den_(1) {}  // NOLINT
  Rational(std::int64_t num, std::int64_t den) { assign(num, den); }

  [[nodiscard]] constexpr std::int64_t num() const { return num_; }
  [[nodiscard]] constexpr std::int64_t den() const { return den_; }

  /// Parses "p/q", "p" or "-p/q". Throws std::invalid_argument on a zero
  /// denominator or malformed text.
  static Rational parse(std::string_view text);

  [[nodiscard]] std::string str() const {
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  /// Integer text when the denominator is one, "p/q" otherwise.
  [[nodiscard]] std::string pretty() const {
    return den_ == 1 ? std::to_string(num_) : str();
  }

  [[nodiscard]] std::int64_t floor() const {
    std::int64_t q = num_ / den_;
    if (num_ % den_ != 0 && num_ < 0) --q;
    return q;
  }

  // ceil(p/q) = floor((p + q - 1) / q) for q > 0.
  [[nodiscard]] std::int64_t ceil() const {
    return Rational(static_cast<std::int64_t>(narrow(static_cast<__int128>(num_) + den_ - 1)),
                    den_)
        .floor();
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return make(static_cast<__int128>(a.num_) * b.den_ + static_cast<__int128>(b.num_) * a.den_,
                static_cast<__int128>(a.den_) * b.den_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return make(static_cast<__int128>(a.num_) * b.den_ - static_cast<__int128>(b.num_) * a.den_,
                static_cast<__int128>(a.den_) * b.den_);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return make(static_cast<__int128>(a.num_) * b.num_, static_cast<__int128>(a.den_) * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw std::domain_error("rational division by zero");
    return make(static_cast<__int128>(a.num_) * b.den_, static_cast<__int128>(a.den_) * b.num_);
  }
  Rational operator-() const { return make(-static_cast<__int128>(num_), den_); }

  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend constexpr bool operator==(const Rational&, const Rational&) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const __int128 lhs = static_cast<__int128>(a.num_) * b.den_;
    const __int128 rhs = static_cast<__int128>(b.num_) * a.den_;
    return lhs <=> rhs;
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.pretty(); }

private:
  static std::int64_t narrow(__int128 v) {
    if (v > INT64_MAX || v < INT64_MIN) throw std::overflow_error("rational overflow");
    return static_cast<std::int64_t>(v);
  }

  static __int128 gcd128(__int128 a, __int128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
      const __int128 t = a % b;
      a = b;
      b = t;
    }
    return a;
  }

  static Rational make(__int128 num, __int128 den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    const __int128 g = gcd128(num, den);
    Rational r;
    r.num_ = narrow(g == 0 ? num : num / g);
    r.den_ = narrow(g == 0 ? den : den / g);
    if (r.num_ == 0) r.den_ = 1;
    return r;
  }

  void assign(std::int64_t num, std::int64_t den) { *this = make(num, den); }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

inline Rational Rational::parse(std::string_view text) {
  auto parse_int = [&](std::string_view part) -> std::int64_t {
    if (part.empty()) throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
    std::size_t pos = 0;
    bool negative = false;
    if (part[0] == '-' || part[0] == '+') {
      negative = part[0] == '-';
      pos = 1;
    }
    if (pos == part.size()) throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
    __int128 value = 0;
    for (; pos < part.size(); ++pos) {
      const char c = part[pos];
      if (c < '0' || c > '9') {
        throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
      }
      value = value * 10 + (c - '0');
      if (value > INT64_MAX) throw std::invalid_argument("rational component out of range");
    }
    return static_cast<std::int64_t>(negative ? -value : value);
  };
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  const std::int64_t num = parse_int(text.substr(0, slash));
  const std::int64_t den = parse_int(text.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("rational '" + std::string(text) + "' has zero denominator");
  return Rational(num, den);
}

}  // namespace mefe

#endif  // MEFE_RATIONAL_HPP
