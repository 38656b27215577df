#include "conelab/rational.hpp"

#include <ostream>
#include <stdexcept>

namespace conelab {

Rational::Rational(long num, long den) : v_(num, den) {
  if (den == 0) throw std::invalid_argument("Rational: zero denominator");
  v_.canonicalize();
}

Rational::Rational(const mpz_class& num, const mpz_class& den) : v_(num, den) {
  if (sgn(den) == 0) throw std::invalid_argument("Rational: zero denominator");
  v_.canonicalize();
}

Rational::Rational(const mpq_class& q) : v_(q) { v_.canonicalize(); }

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::invalid_argument("Rational: division by zero");
  v_ /= o.v_;
  return *this;
}

Rational Rational::from_string(const std::string& s) {
  std::string t;
  t.reserve(s.size());
  // tolerate U+2212 (minus sign) from hand-written inputs
  for (size_t i = 0; i < s.size(); ++i) {
    if (i + 2 < s.size() + 1 && (unsigned char)s[i] == 0xE2 && i + 2 < s.size() &&
        (unsigned char)s[i + 1] == 0x88 && (unsigned char)s[i + 2] == 0x92) {
      t += '-';
      i += 2;
    } else if (!isspace((unsigned char)s[i])) {
      t += s[i];
    }
  }
  auto slash = t.find('/');
  try {
    if (slash == std::string::npos) {
      return Rational(mpz_class(t), mpz_class(1));
    }
    mpz_class num(t.substr(0, slash));
    mpz_class den(t.substr(slash + 1));
    return Rational(num, den);
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("Rational: cannot parse \"" + s + "\"");
  }
}

std::string Rational::str() const {
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }
Rational min(const Rational& a, const Rational& b) { return a < b ? a : b; }
Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

}  // namespace conelab
