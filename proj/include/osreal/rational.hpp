#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <stdexcept>
#include <string>

namespace osreal {

using Int = boost::multiprecision::cpp_int;

/// Exact rational carrier for all distances and weights. Always kept in
/// canonical reduced form with a positive denominator (the backend
/// guarantees both).
using Rational = boost::multiprecision::cpp_rational;

Rational parse_rational(const std::string& s);
std::string format_rational(const Rational& r);

/// A nonnegative rational extended with +infinity. Infinity absorbs
/// addition and compares greater than every finite value.
class ExtendedRational {
 public:
  ExtendedRational() : inf_(false), value_(0) {}
  ExtendedRational(Rational v) : inf_(false), value_(std::move(v)) {}
  ExtendedRational(int v) : inf_(false), value_(v) {}

  static ExtendedRational infinity() {
    ExtendedRational e;
    e.inf_ = true;
    return e;
  }

  bool is_infinite() const { return inf_; }
  bool is_finite() const { return !inf_; }

  const Rational& finite() const {
    if (inf_) throw std::domain_error("ExtendedRational: value is infinite");
    return value_;
  }

  friend ExtendedRational operator+(const ExtendedRational& a, const ExtendedRational& b) {
    if (a.inf_ || b.inf_) return infinity();
    return ExtendedRational(a.value_ + b.value_);
  }
  ExtendedRational& operator+=(const ExtendedRational& o) {
    *this = *this + o;
    return *this;
  }

  friend bool operator==(const ExtendedRational& a, const ExtendedRational& b) {
    if (a.inf_ != b.inf_) return false;
    return a.inf_ || a.value_ == b.value_;
  }
  friend std::strong_ordering operator<=>(const ExtendedRational& a, const ExtendedRational& b) {
    if (a.inf_ && b.inf_) return std::strong_ordering::equal;
    if (a.inf_) return std::strong_ordering::greater;
    if (b.inf_) return std::strong_ordering::less;
    if (a.value_ < b.value_) return std::strong_ordering::less;
    if (a.value_ > b.value_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  std::string str() const { return inf_ ? "inf" : format_rational(value_); }

  /// Parses "inf", "p/q" or a plain integer string.
  static ExtendedRational parse(const std::string& s);

 private:
  bool inf_;
  Rational value_;
};

}  // namespace osreal
