#include "twzhu/scalar.hpp"

#include <limits>
#include <numeric>
#include <stdexcept>

namespace twzhu {

Scalar::Scalar(long num, long den) {
  if (den == 0) throw std::domain_error("Scalar: zero denominator");
  q_ = mpq_class(num, den);
  q_.canonicalize();
}

Scalar Scalar::parse(std::string_view text) {
  std::string s(text);
  auto bad = [&] { return std::invalid_argument("malformed rational '" + s + "'"); };
  if (s.empty()) throw bad();
  std::size_t slash = s.find('/');
  auto digitsOk = [](std::string_view t, bool allowSign) {
    std::size_t i = 0;
    if (allowSign && !t.empty() && t[0] == '-') i = 1;
    if (i >= t.size()) return false;
    for (; i < t.size(); ++i)
      if (t[i] < '0' || t[i] > '9') return false;
    return true;
  };
  std::string_view sv(s);
  if (slash == std::string::npos) {
    if (!digitsOk(sv, true)) throw bad();
    return Scalar(mpq_class(mpz_class(s)));
  }
  std::string_view num = sv.substr(0, slash), den = sv.substr(slash + 1);
  if (!digitsOk(num, true) || !digitsOk(den, false)) throw bad();
  mpz_class d{std::string(den)};
  if (d == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
  return Scalar(mpq_class(mpz_class(std::string(num)), d));
}

mpz_class Scalar::floor() const {
  mpz_class r;
  mpz_fdiv_q(r.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
  return r;
}

long Scalar::toLong() const {
  if (!isInteger()) throw std::logic_error("Scalar " + toString() + " is not an integer");
  if (!q_.get_num().fits_slong_p()) throw std::overflow_error("Scalar out of machine range");
  return q_.get_num().get_si();
}

Scalar& Scalar::operator/=(const Scalar& o) {
  if (o.isZero()) throw std::domain_error("Scalar: division by zero");
  q_ /= o.q_;
  return *this;
}

Mode Mode::integer(std::int64_t value, int order) {
  if (order <= 0) throw std::invalid_argument("Mode: order must be positive");
  return Mode(value * order, order);
}

Mode Mode::fromScaled(std::int64_t scaled, int order) {
  if (order <= 0) throw std::invalid_argument("Mode: order must be positive");
  return Mode(scaled, order);
}

Mode Mode::fromScalar(const Scalar& value, int order) {
  if (order <= 0) throw std::invalid_argument("Mode: order must be positive");
  Scalar s = value * Scalar(order);
  if (!s.isInteger())
    throw std::invalid_argument("Mode: " + value.toString() + " is not in (1/" +
                                std::to_string(order) + ")Z");
  return Mode(s.toLong(), order);
}

Mode Mode::parse(std::string_view text, int order) {
  return fromScalar(Scalar::parse(text), order);
}

std::int64_t Mode::floor() const {
  std::int64_t q = scaled_ / order_;
  if (scaled_ % order_ != 0 && scaled_ < 0) --q;
  return q;
}

std::int64_t Mode::toInteger() const {
  if (!isInteger()) throw std::logic_error("Mode " + toString() + " is not an integer");
  return scaled_ / order_;
}

Mode& Mode::operator+=(const Mode& o) {
  if (o.order_ == order_) {
    scaled_ += o.scaled_;
    return *this;
  }
  int l = std::lcm(order_, o.order_);
  scaled_ = scaled_ * (l / order_) + o.scaled_ * (l / o.order_);
  order_ = l;
  return *this;
}

Mode& Mode::operator-=(const Mode& o) { return *this += -o; }

Scalar binomial(const Scalar& q, int i) {
  if (i < 0) throw std::invalid_argument("binomial: negative lower index");
  Scalar r(1);
  for (int j = 0; j < i; ++j) {
    r *= q - Scalar(j);
    r /= Scalar(j + 1);
  }
  return r;
}

Scalar binomial(const Mode& q, int i) {
  if (i < 0) throw std::invalid_argument("binomial: negative lower index");
  if (q.isInteger()) {
    // Integer upper argument: stay in machine-size numerators for the
    // common small cases, falling back to the rational path.
    std::int64_t n = q.toInteger();
    if (n >= 0 && n < i) return Scalar(0);
    mpz_class acc = 1;
    for (int j = 0; j < i; ++j) acc *= (n - j);
    mpz_class fact = 1;
    for (int j = 2; j <= i; ++j) fact *= j;
    return Scalar(mpq_class(acc, fact));
  }
  return binomial(q.value(), i);
}

std::int64_t floorPart(const Mode& n) { return n.floor(); }

int barPart(const Mode& n) { return n.bar(); }

int deltaIndicator(int i, int r, int order) {
  if (order <= 0) throw std::invalid_argument("deltaIndicator: order must be positive");
  if (i < 0 || i > order - 1) throw std::out_of_range("deltaIndicator: i outside [0, T-1]");
  if (r < 0 || r > order) throw std::out_of_range("deltaIndicator: r outside [0, T]");
  if (r == order) return 0;
  return (r <= i && i <= order - 1) ? 1 : 0;
}

}  // namespace twzhu
