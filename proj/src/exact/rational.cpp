#include "chtrace/rational.hpp"

#include "chtrace/errors.hpp"

namespace chtrace {

Rational::Rational(long num, long den) {
  require(den != 0, ErrorKind::Arithmetic, "rational with zero denominator");
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

Rational::Rational(const mpz_class& num, const mpz_class& den) {
  require(den != 0, ErrorKind::Arithmetic, "rational with zero denominator");
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

Rational Rational::parse(const std::string& text) {
  mpq_class q;
  const auto slash = text.find('/');
  try {
    if (slash == std::string::npos) {
      q = mpq_class(mpz_class(text, 10));
    } else {
      mpz_class den(text.substr(slash + 1), 10);
      require(den != 0, ErrorKind::Arithmetic, "rational with zero denominator: " + text);
      q = mpq_class(mpz_class(text.substr(0, slash), 10), den);
    }
  } catch (const std::invalid_argument&) {
    fail(ErrorKind::InvalidInput, "not a rational number: '" + text + "'");
  }
  q.canonicalize();
  return Rational(std::move(q));
}

std::string Rational::to_string() const { return v_.get_str(10); }

Rational& Rational::operator/=(const Rational& o) {
  require(!o.is_zero(), ErrorKind::Arithmetic, "division by zero");
  v_ /= o.v_;
  return *this;
}

Rational Rational::inverse() const {
  require(!is_zero(), ErrorKind::Arithmetic, "inverse of zero");
  return Rational(mpq_class(1 / v_));
}

}  // namespace chtrace
