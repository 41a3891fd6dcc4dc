#include "mdl/numeric.hpp"

#include <algorithm>
#include <stdexcept>

#include "mdl/errors.hpp"

namespace mdl {

std::string to_string(Mode mode) { return mode == Mode::exact ? "exact" : "float"; }

Mode parse_mode(std::string_view text) {
  if (text == "exact") return Mode::exact;
  if (text == "float" || text == "log" || text == "log_float") return Mode::log_float;
  throw ConfigError("unknown numeric mode '" + std::string(text) + "'");
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw ConfigError("empty rational");
  auto dot = s.find('.');
  Rational r;
  try {
    if (dot != std::string::npos) {
      std::string digits = s.substr(0, dot) + s.substr(dot + 1);
      if (digits.empty() || digits == "-") throw ConfigError("bad decimal '" + s + "'");
      mpz_class num(digits, 10);
      mpz_class den;
      mpz_ui_pow_ui(den.get_mpz_t(), 10, s.size() - dot - 1);
      r = Rational(num, den);
    } else {
      r = Rational(s, 10);
    }
  } catch (const std::invalid_argument&) {
    throw ConfigError("bad rational '" + s + "'");
  }
  if (r.get_den() == 0) throw ConfigError("zero denominator in '" + s + "'");
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& r) { return r.get_str(); }

namespace {

double log_of_positive_integer(const mpz_class& z) {
  long exponent = 0;
  double mantissa = mpz_get_d_2exp(&exponent, z.get_mpz_t());
  return std::log(mantissa) + static_cast<double>(exponent) * std::log(2.0);
}

}  // namespace

double log_of(const Rational& r) {
  if (sgn(r) < 0) throw std::domain_error("log of negative rational");
  if (sgn(r) == 0) return -std::numeric_limits<double>::infinity();
  return log_of_positive_integer(r.get_num()) - log_of_positive_integer(r.get_den());
}

double to_double(const Rational& r) {
  if (sgn(r) == 0) return 0.0;
  const double l = log_of(sgn(r) > 0 ? r : Rational(-r));
  if (std::abs(l) < 700) return r.get_d();
  return sgn(r) > 0 ? std::exp(l) : -std::exp(l);
}

Rational pow2(std::int64_t exponent) {
  mpz_class p(1);
  mpz_mul_2exp(p.get_mpz_t(), p.get_mpz_t(), static_cast<mp_bitcnt_t>(exponent >= 0 ? exponent : -exponent));
  return exponent >= 0 ? Rational(p) : Rational(mpz_class(1), p);
}

std::int64_t ceil_neg_log2(const Rational& r) {
  if (sgn(r) <= 0) throw ZeroProbability("code length of a zero-probability string");
  // Find the smallest L >= 0 with 2^-L <= r; start from a bit-size estimate.
  std::int64_t guess = static_cast<std::int64_t>(mpz_sizeinbase(r.get_den().get_mpz_t(), 2)) -
                       static_cast<std::int64_t>(mpz_sizeinbase(r.get_num().get_mpz_t(), 2));
  std::int64_t l = std::max<std::int64_t>(0, guess - 1);
  while (l > 0 && pow2(-(l - 1)) <= r) --l;
  while (pow2(-l) > r) ++l;
  return l;
}

LogFloat LogFloat::from_double(double value) {
  if (value < 0) throw std::domain_error("LogFloat of negative value");
  return LogFloat(std::log(value));
}

LogFloat operator*(LogFloat a, LogFloat b) {
  if (a.is_zero() || b.is_zero()) return LogFloat::zero();
  return LogFloat(a.log_ + b.log_);
}

LogFloat operator/(LogFloat a, LogFloat b) {
  if (b.is_zero()) throw std::domain_error("LogFloat division by zero");
  if (a.is_zero()) return LogFloat::zero();
  return LogFloat(a.log_ - b.log_);
}

LogFloat operator+(LogFloat a, LogFloat b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  double hi = std::max(a.log_, b.log_);
  double lo = std::min(a.log_, b.log_);
  return LogFloat(hi + std::log1p(std::exp(lo - hi)));
}

LogFloat operator-(LogFloat a, LogFloat b) {
  if (b.is_zero()) return a;
  if (!(a.log_ > b.log_)) return LogFloat::zero();
  return LogFloat(a.log_ + std::log1p(-std::exp(b.log_ - a.log_)));
}

Value Value::of(const Rational& r, Mode mode) {
  if (mode == Mode::exact) return Value(r);
  return Value(LogFloat::from_log(log_of(r)));
}

Value Value::zero(Mode mode) { return mode == Mode::exact ? Value(Rational(0)) : Value(LogFloat::zero()); }

Value Value::one(Mode mode) { return mode == Mode::exact ? Value(Rational(1)) : Value(LogFloat::one()); }

const Rational& Value::rational() const {
  if (!is_exact()) throw std::logic_error("Value is not exact");
  return std::get<Rational>(repr_);
}

LogFloat Value::log_float() const {
  if (is_exact()) return LogFloat::from_log(log_of(std::get<Rational>(repr_)));
  return std::get<LogFloat>(repr_);
}

double Value::log() const { return log_float().log(); }

double Value::to_double() const {
  if (is_exact()) return mdl::to_double(std::get<Rational>(repr_));
  return std::get<LogFloat>(repr_).to_double();
}

bool Value::is_zero() const {
  if (is_exact()) return sgn(std::get<Rational>(repr_)) == 0;
  return std::get<LogFloat>(repr_).is_zero();
}

Value Value::to_mode(Mode mode) const {
  if (mode == this->mode()) return *this;
  if (mode == Mode::log_float) return Value(log_float());
  throw std::logic_error("cannot convert a LogFloat value to Exact");
}

namespace {

void require_same_mode(const Value& a, const Value& b) {
  if (a.mode() != b.mode()) throw std::logic_error("mixed-mode Value arithmetic");
}

}  // namespace

Value operator*(const Value& a, const Value& b) {
  require_same_mode(a, b);
  if (a.is_exact()) return Value(Rational(a.rational() * b.rational()));
  return Value(a.log_float() * b.log_float());
}

Value operator/(const Value& a, const Value& b) {
  require_same_mode(a, b);
  if (b.is_zero()) throw std::domain_error("Value division by zero");
  if (a.is_exact()) return Value(Rational(a.rational() / b.rational()));
  return Value(a.log_float() / b.log_float());
}

Value operator+(const Value& a, const Value& b) {
  require_same_mode(a, b);
  if (a.is_exact()) return Value(Rational(a.rational() + b.rational()));
  return Value(a.log_float() + b.log_float());
}

Value operator-(const Value& a, const Value& b) {
  require_same_mode(a, b);
  if (a.is_exact()) {
    Rational d = a.rational() - b.rational();
    if (sgn(d) < 0) throw std::domain_error("negative Value difference");
    return Value(d);
  }
  return Value(a.log_float() - b.log_float());
}

bool operator==(const Value& a, const Value& b) {
  require_same_mode(a, b);
  if (a.is_exact()) return a.rational() == b.rational();
  return a.log_float() == b.log_float();
}

bool operator<(const Value& a, const Value& b) {
  require_same_mode(a, b);
  if (a.is_exact()) return a.rational() < b.rational();
  return a.log_float() < b.log_float();
}

std::string Value::to_string() const {
  if (is_exact()) return mdl::to_string(rational());
  char buf[64];
  std::snprintf(buf, sizeof buf, "exp(%.17g)", log());
  return buf;
}

bool tied(const Value& a, const Value& b) {
  require_same_mode(a, b);
  if (a.is_exact()) return a.rational() == b.rational();
  if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
  return std::abs(a.log() - b.log()) <= kLogTieTolerance;
}

}  // namespace mdl
