#include "forcing_lab/rational.hpp"

#include <limits>

#include "forcing_lab/error.hpp"

namespace forcing_lab {

namespace {

std::int64_t to_int64(const mpz_class& z) {
  if (!z.fits_slong_p()) {
    throw Error(ErrorKind::CapacityExceeded, "integer does not fit in 64 bits");
  }
  return z.get_si();
}

}  // namespace

Rational::Rational(std::int64_t value) : value_(static_cast<long>(value)) {}

Rational::Rational(std::int64_t numerator, std::int64_t denominator) {
  if (denominator == 0) {
    throw Error(ErrorKind::ParseError, "zero denominator");
  }
  value_ = mpq_class(mpz_class(static_cast<long>(numerator)),
                     mpz_class(static_cast<long>(denominator)));
  value_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  std::string s(text);
  auto valid_int = [](const std::string& part, bool allow_sign) {
    if (part.empty()) return false;
    std::size_t i = 0;
    if (allow_sign && (part[0] == '-' || part[0] == '+')) i = 1;
    if (i == part.size()) return false;
    for (; i < part.size(); ++i) {
      if (part[i] < '0' || part[i] > '9') return false;
    }
    return true;
  };
  auto slash = s.find('/');
  std::string num = slash == std::string::npos ? s : s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid_int(num, true) || !valid_int(den, false)) {
    throw Error(ErrorKind::ParseError, "malformed rational '" + s + "'");
  }
  if (num[0] == '+') num.erase(0, 1);
  mpz_class n(num, 10);
  mpz_class d(den, 10);
  if (d == 0) {
    throw Error(ErrorKind::ParseError, "zero denominator in '" + s + "'");
  }
  mpq_class q(n, d);
  q.canonicalize();
  return Rational(std::move(q));
}

Rational Rational::pow2(int exponent) {
  mpq_class q(1);
  if (exponent >= 0) {
    mpq_mul_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<unsigned long>(exponent));
  } else {
    mpq_div_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<unsigned long>(-exponent));
  }
  return Rational(std::move(q));
}

std::string Rational::to_string() const {
  return numerator_string() + "/" + denominator_string();
}

std::string Rational::numerator_string() const { return value_.get_num().get_str(); }
std::string Rational::denominator_string() const { return value_.get_den().get_str(); }

bool Rational::is_integer() const { return value_.get_den() == 1; }

std::int64_t Rational::ceil() const {
  mpz_class r;
  mpz_cdiv_q(r.get_mpz_t(), value_.get_num_mpz_t(), value_.get_den_mpz_t());
  return to_int64(r);
}

std::int64_t Rational::floor() const {
  mpz_class r;
  mpz_fdiv_q(r.get_mpz_t(), value_.get_num_mpz_t(), value_.get_den_mpz_t());
  return to_int64(r);
}

Rational Rational::abs() const { return Rational(mpq_class(::abs(value_))); }

Rational Rational::reciprocal() const {
  if (is_zero()) {
    throw Error(ErrorKind::ParseError, "reciprocal of zero");
  }
  mpq_class q;
  mpq_inv(q.get_mpq_t(), value_.get_mpq_t());
  return Rational(std::move(q));
}

Rational Rational::scaled_pow2(int exponent) const {
  mpq_class q;
  if (exponent >= 0) {
    mpq_mul_2exp(q.get_mpq_t(), value_.get_mpq_t(), static_cast<unsigned long>(exponent));
  } else {
    mpq_div_2exp(q.get_mpq_t(), value_.get_mpq_t(), static_cast<unsigned long>(-exponent));
  }
  return Rational(std::move(q));
}

Rational& Rational::operator+=(const Rational& other) {
  value_ += other.value_;
  return *this;
}

Rational& Rational::operator-=(const Rational& other) {
  value_ -= other.value_;
  return *this;
}

Rational& Rational::operator*=(const Rational& other) {
  value_ *= other.value_;
  return *this;
}

Rational& Rational::operator/=(const Rational& other) {
  if (other.is_zero()) {
    throw Error(ErrorKind::ParseError, "division by zero");
  }
  value_ /= other.value_;
  return *this;
}

Rational operator-(const Rational& a) { return Rational(mpq_class(-a.value_)); }

Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }
Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

}  // namespace forcing_lab
