#pragma once

// Numeric representation shared by every module: exact rationals for
// verification work and natural-log-domain doubles for long horizons.

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <variant>

namespace mdl {

using Rational = mpq_class;

enum class Mode { exact, log_float };

std::string to_string(Mode mode);
Mode parse_mode(std::string_view text);

// Accepts "p/q", "p", or a finite decimal such as "0.25".
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& r);

// ln r for r > 0, computed without underflow on tiny or huge operands.
// Returns -inf for r == 0.
double log_of(const Rational& r);
double to_double(const Rational& r);

// Smallest integer L with 2^-L <= r, i.e. ceil(-lb r), for 0 < r <= 1.
std::int64_t ceil_neg_log2(const Rational& r);

Rational pow2(std::int64_t exponent);

// Natural-log-domain nonnegative real; zero is represented by -inf.
class LogFloat {
 public:
  LogFloat() = default;
  static LogFloat from_log(double log_value) { return LogFloat(log_value); }
  static LogFloat from_double(double value);
  static LogFloat zero() { return LogFloat(); }
  static LogFloat one() { return LogFloat(0.0); }

  double log() const { return log_; }
  double to_double() const { return std::exp(log_); }
  bool is_zero() const { return log_ == -std::numeric_limits<double>::infinity(); }

  friend LogFloat operator*(LogFloat a, LogFloat b);
  friend LogFloat operator/(LogFloat a, LogFloat b);
  friend LogFloat operator+(LogFloat a, LogFloat b);
  // Requires a >= b; clamps tiny negative rounding to zero.
  friend LogFloat operator-(LogFloat a, LogFloat b);
  friend bool operator==(LogFloat a, LogFloat b) { return a.log_ == b.log_; }
  friend auto operator<=>(LogFloat a, LogFloat b) { return a.log_ <=> b.log_; }

 private:
  explicit LogFloat(double log_value) : log_(log_value) {}
  double log_ = -std::numeric_limits<double>::infinity();
};

// Tagged value in [0, inf): Exact rational or LogFloat. Binary operations
// require both operands in the same mode.
class Value {
 public:
  Value() : repr_(Rational(0)) {}
  Value(Rational r) : repr_(std::move(r)) {}  // NOLINT: implicit on purpose
  Value(LogFloat l) : repr_(l) {}             // NOLINT

  static Value of(const Rational& r, Mode mode);
  static Value zero(Mode mode);
  static Value one(Mode mode);

  Mode mode() const { return repr_.index() == 0 ? Mode::exact : Mode::log_float; }
  bool is_exact() const { return repr_.index() == 0; }
  const Rational& rational() const;
  LogFloat log_float() const;
  double log() const;
  double to_double() const;
  bool is_zero() const;
  Value to_mode(Mode mode) const;

  friend Value operator*(const Value& a, const Value& b);
  friend Value operator/(const Value& a, const Value& b);
  friend Value operator+(const Value& a, const Value& b);
  friend Value operator-(const Value& a, const Value& b);
  friend bool operator==(const Value& a, const Value& b);
  friend bool operator<(const Value& a, const Value& b);
  friend bool operator>(const Value& a, const Value& b) { return b < a; }
  friend bool operator<=(const Value& a, const Value& b) { return !(b < a); }
  friend bool operator>=(const Value& a, const Value& b) { return !(a < b); }

  std::string to_string() const;

 private:
  std::variant<Rational, LogFloat> repr_;
};

// Log-domain tie tolerance (relative) used by MAP selection.
inline constexpr double kLogTieTolerance = 1e-12;

// Exact equality in Exact mode; relative closeness within kLogTieTolerance
// in LogFloat mode.
bool tied(const Value& a, const Value& b);

}  // namespace mdl
