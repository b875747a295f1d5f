#pragma once

// Exact rationals, (1/T)Z-valued mode indices and the combinatorial
// helpers shared by every other part of the engine.

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace twzhu {

/// Arbitrary-precision rational number, always stored in lowest terms with a
/// positive denominator.
class Scalar {
 public:
  Scalar() = default;
  Scalar(long v) : q_(v) {}  // NOLINT(google-explicit-constructor)
  Scalar(long num, long den);
  explicit Scalar(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

  /// Parses "p" or "p/q" (optional leading '-'). Throws std::invalid_argument.
  static Scalar parse(std::string_view text);

  const mpq_class& raw() const { return q_; }
  mpz_class numerator() const { return q_.get_num(); }
  mpz_class denominator() const { return q_.get_den(); }

  bool isZero() const { return sgn(q_) == 0; }
  bool isInteger() const { return q_.get_den() == 1; }
  int sign() const { return sgn(q_); }

  /// Greatest integer <= value.
  mpz_class floor() const;
  /// Value as a machine integer; throws if not an integer or out of range.
  long toLong() const;

  /// Canonical text form "p/q", with "/q" omitted when q = 1.
  std::string toString() const { return q_.get_str(); }

  Scalar operator-() const { return Scalar(mpq_class(-q_)); }
  Scalar& operator+=(const Scalar& o) { q_ += o.q_; return *this; }
  Scalar& operator-=(const Scalar& o) { q_ -= o.q_; return *this; }
  Scalar& operator*=(const Scalar& o) { q_ *= o.q_; return *this; }
  Scalar& operator/=(const Scalar& o);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  friend bool operator==(const Scalar& a, const Scalar& b) { return a.q_ == b.q_; }
  friend std::strong_ordering operator<=>(const Scalar& a, const Scalar& b) {
    int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.toString(); }

 private:
  mpq_class q_;
};

/// An element of (1/T)Z, stored as the integer value*T together with T.
class Mode {
 public:
  Mode() = default;
  /// The integer `value` viewed inside (1/order)Z.
  static Mode integer(std::int64_t value, int order = 1);
  static Mode fromScaled(std::int64_t scaled, int order);
  /// Throws std::invalid_argument unless value*order is an integer.
  static Mode fromScalar(const Scalar& value, int order);
  static Mode parse(std::string_view text, int order);

  std::int64_t scaled() const { return scaled_; }
  int order() const { return order_; }
  Scalar value() const { return Scalar(static_cast<long>(scaled_), order_); }

  bool isInteger() const { return scaled_ % order_ == 0; }
  /// Greatest integer <= value.
  std::int64_t floor() const;
  /// (value - floor(value)) * order, in [0, order-1].
  int bar() const { return static_cast<int>(scaled_ - floor() * order_); }
  /// Integer value; throws std::logic_error if not an integer.
  std::int64_t toInteger() const;

  std::string toString() const { return value().toString(); }

  Mode operator-() const { return fromScaled(-scaled_, order_); }
  Mode& operator+=(const Mode& o);
  Mode& operator-=(const Mode& o);
  Mode& operator+=(std::int64_t k) { scaled_ += k * order_; return *this; }
  Mode& operator-=(std::int64_t k) { scaled_ -= k * order_; return *this; }

  friend Mode operator+(Mode a, const Mode& b) { return a += b; }
  friend Mode operator-(Mode a, const Mode& b) { return a -= b; }
  friend Mode operator+(Mode a, std::int64_t k) { return a += k; }
  friend Mode operator-(Mode a, std::int64_t k) { return a -= k; }

  friend bool operator==(const Mode& a, const Mode& b) {
    return a.scaled_ * b.order_ == b.scaled_ * a.order_;
  }
  friend std::strong_ordering operator<=>(const Mode& a, const Mode& b) {
    return a.scaled_ * b.order_ <=> b.scaled_ * a.order_;
  }
  friend bool operator==(const Mode& a, std::int64_t k) { return a.scaled_ == k * a.order_; }
  friend std::strong_ordering operator<=>(const Mode& a, std::int64_t k) {
    return a.scaled_ <=> k * a.order_;
  }

  friend std::ostream& operator<<(std::ostream& os, const Mode& m) { return os << m.toString(); }

 private:
  Mode(std::int64_t scaled, int order) : scaled_(scaled), order_(order) {}
  std::int64_t scaled_ = 0;
  int order_ = 1;
};

/// Generalized binomial q(q-1)...(q-i+1)/i!.
Scalar binomial(const Scalar& q, int i);
Scalar binomial(const Mode& q, int i);

/// Greatest integer <= n.
std::int64_t floorPart(const Mode& n);
/// (n - floor n) * T for n in (1/T)N.
int barPart(const Mode& n);
/// 1 iff r <= i <= T-1; always 0 for r = T. Throws on i outside [0, T-1] or
/// r outside [0, T].
int deltaIndicator(int i, int r, int order);

/// (-1)^k.
inline int signPower(std::int64_t k) { return (k % 2 == 0) ? 1 : -1; }

}  // namespace twzhu

template <>
struct std::hash<twzhu::Mode> {
  std::size_t operator()(const twzhu::Mode& m) const noexcept {
    return std::hash<std::int64_t>{}(m.scaled()) * 31u + static_cast<std::size_t>(m.order());
  }
};
