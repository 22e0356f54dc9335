#pragma once

// Exact angular quantities. One full turn is the rational 1, so every
// angle is a fraction of a turn and no trigonometry is ever needed.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace apf {

using Rational = mpq_class;

struct StructuralError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct PreconditionError : std::logic_error {
  using std::logic_error::logic_error;
};

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) {
  if (den == 0) throw StructuralError("zero denominator");
  Rational r{mpz_class{std::to_string(num)}, mpz_class{std::to_string(den)}};
  r.canonicalize();
  return r;
}

// Reduces an arbitrary rational into [0, 1).
inline Rational wrap_turn(const Rational& value) {
  if (sgn(value) >= 0 && cmp(value.get_num(), value.get_den()) < 0) return value;
  if (sgn(value) < 0) {
    Rational up = value + 1;
    if (sgn(up) >= 0) return up;
  }
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  Rational out = value - Rational(q);
  out.canonicalize();
  return out;
}

// "p/q" with no decimal point; integers print as "p/1".
inline std::string to_fraction_string(const Rational& value) {
  Rational r = value;
  r.canonicalize();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline Rational parse_fraction(std::string_view text) {
  std::string s{text};
  auto slash = s.find('/');
  std::string num = slash == std::string::npos ? s : s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  auto digits_ok = [](const std::string& part, bool allow_sign) {
    if (part.empty()) return false;
    std::size_t start = (allow_sign && (part[0] == '-' || part[0] == '+')) ? 1 : 0;
    if (start == part.size()) return false;
    for (std::size_t i = start; i < part.size(); ++i)
      if (part[i] < '0' || part[i] > '9') return false;
    return true;
  };
  if (!digits_ok(num, true) || !digits_ok(den, false))
    throw ParseError("malformed fraction '" + s + "'");
  mpz_class d{den};
  if (d == 0) throw ParseError("zero denominator in '" + s + "'");
  Rational r{mpz_class{num[0] == '+' ? num.substr(1) : num}, d};
  r.canonicalize();
  return r;
}

// Presentation-relative orientation. Forward is increasing angle in
// whatever frame the caller is working in; robots have no chirality, so
// neither value has a physical meaning shared between robots.
enum class Direction { Forward, Reverse };

constexpr Direction opposite(Direction d) {
  return d == Direction::Forward ? Direction::Reverse : Direction::Forward;
}

constexpr int sign(Direction d) { return d == Direction::Forward ? 1 : -1; }

inline const char* to_string(Direction d) {
  return d == Direction::Forward ? "fwd" : "rev";
}

inline Direction parse_direction(std::string_view s) {
  if (s == "fwd") return Direction::Forward;
  if (s == "rev") return Direction::Reverse;
  throw ParseError("unknown direction '" + std::string{s} + "'");
}

// A point on the circle, stored as a reduced fraction of a turn in [0, 1).
class TurnAngle {
 public:
  TurnAngle() = default;
  explicit TurnAngle(const Rational& value) : value_(wrap_turn(value)) {}
  TurnAngle(std::int64_t num, std::int64_t den)
      : value_(wrap_turn(make_rational(num, den))) {}

  const Rational& value() const { return value_; }

  // Moves the point by a signed amount of turns.
  TurnAngle shifted(const Rational& amount) const { return TurnAngle(value_ + amount); }
  TurnAngle shifted(const Rational& amount, Direction d) const {
    return TurnAngle(value_ + sign(d) * amount);
  }

  friend bool operator==(const TurnAngle& a, const TurnAngle& b) {
    return a.value_ == b.value_;
  }
  friend std::strong_ordering operator<=>(const TurnAngle& a, const TurnAngle& b) {
    int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  std::string str() const { return to_fraction_string(value_); }

  friend std::ostream& operator<<(std::ostream& os, const TurnAngle& a) { return os << a.str(); }

 private:
  Rational value_{0};
};

inline TurnAngle parse_turn(std::string_view text) { return TurnAngle(parse_fraction(text)); }

}  // namespace apf

template <>
struct std::hash<apf::TurnAngle> {
  std::size_t operator()(const apf::TurnAngle& a) const noexcept {
    std::size_t h1 = std::hash<std::string>{}(a.value().get_num().get_str(16));
    std::size_t h2 = std::hash<std::string>{}(a.value().get_den().get_str(16));
    return h1 ^ (h2 * 0x9e3779b97f4a7c15ULL);
  }
};
