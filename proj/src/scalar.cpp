#include "rigiditykit/scalar.hpp"

#include <ostream>

namespace rk {

ParseError::ParseError(const std::string& msg, int line_, int col_)
    : std::runtime_error("line " + std::to_string(line_) + ", col " + std::to_string(col_) + ": " + msg),
      line(line_),
      col(col_) {}

Scalar& Scalar::operator+=(const Scalar& o) {
  re += o.re;
  if (!o.is_real()) im += o.im;
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  re -= o.re;
  if (!o.is_real()) im -= o.im;
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  if (is_real() && o.is_real()) {
    re *= o.re;
    return *this;
  }
  mpq_class r = re * o.re - im * o.im;
  mpq_class i = re * o.im + im * o.re;
  re = std::move(r);
  im = std::move(i);
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
  if (o.is_zero()) throw std::domain_error("division by zero scalar");
  if (o.is_real()) {
    re /= o.re;
    if (!is_real()) im /= o.re;
    return *this;
  }
  mpq_class d = o.norm2();
  mpq_class r = (re * o.re + im * o.im) / d;
  mpq_class i = (im * o.re - re * o.im) / d;
  re = std::move(r);
  im = std::move(i);
  return *this;
}

void Scalar::addmul(const Scalar& a, const Scalar& b) {
  if (a.is_real() && b.is_real()) {
    if (sgn(a.re) == 0 || sgn(b.re) == 0) return;
    mpq_class t;
    mpq_mul(t.get_mpq_t(), a.re.get_mpq_t(), b.re.get_mpq_t());
    re += t;
    return;
  }
  *this += a * b;
}

static std::string qstr(const mpq_class& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string Scalar::str() const {
  std::string s = qstr(re);
  if (!is_real()) s += "+" + qstr(im) + "i";
  return s;
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

namespace {

// reads [+-]digits[/digits] at pos; returns false if nothing there
mpq_class read_rational(std::string_view s, size_t& pos, int line, int col0) {
  size_t start = pos;
  std::string num;
  if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) num += s[pos++];
  size_t d0 = pos;
  while (pos < s.size() && isdigit(static_cast<unsigned char>(s[pos]))) num += s[pos++];
  if (pos == d0) throw ParseError("expected integer", line, col0 + static_cast<int>(start));
  std::string den = "1";
  if (pos < s.size() && s[pos] == '/') {
    ++pos;
    size_t e0 = pos;
    den.clear();
    while (pos < s.size() && isdigit(static_cast<unsigned char>(s[pos]))) den += s[pos++];
    if (pos == e0) throw ParseError("expected denominator", line, col0 + static_cast<int>(e0));
  }
  if (num[0] == '+') num.erase(0, 1);
  mpz_class zn(num), zd(den);
  if (zd == 0) throw ParseError("zero denominator", line, col0 + static_cast<int>(start));
  mpq_class q(zn, zd);
  q.canonicalize();
  return q;
}

}  // namespace

Scalar Scalar::parse(std::string_view s, int line, int col) {
  size_t pos = 0;
  Scalar out;
  out.re = read_rational(s, pos, line, col);
  if (pos == s.size()) return out;
  // imaginary part: "+a/bi", "+-a/bi" or "-a/bi"
  if (s[pos] != '+' && s[pos] != '-') throw ParseError("unexpected character", line, col + static_cast<int>(pos));
  bool neg = s[pos] == '-';
  ++pos;
  mpq_class im = read_rational(s, pos, line, col);
  if (pos >= s.size() || s[pos] != 'i') throw ParseError("expected 'i'", line, col + static_cast<int>(pos));
  ++pos;
  if (pos != s.size()) throw ParseError("trailing characters", line, col + static_cast<int>(pos));
  out.im = neg ? mpq_class(-im) : im;
  return out;
}

}  // namespace rk
