#include "cooc/rational.hpp"

#include "cooc/error.hpp"

#include <cctype>

namespace cooc {

namespace {

bool is_integer_text(const std::string& s, std::size_t from, std::size_t to, bool allow_sign) {
  if (from < to && allow_sign && (s[from] == '-' || s[from] == '+')) ++from;
  if (from >= to) return false;
  for (std::size_t i = from; i < to; ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

}  // namespace

Rational parse_rational(const std::string& text) {
  auto slash = text.find('/');
  bool ok = slash == std::string::npos
                ? is_integer_text(text, 0, text.size(), true)
                : is_integer_text(text, 0, slash, true) &&
                      is_integer_text(text, slash + 1, text.size(), false);
  if (!ok) throw Error(ErrorCode::BadValue, "not an exact rational: '" + text + "'");
  std::string t = text[0] == '+' ? text.substr(1) : text;
  Rational r;
  try {
    r = Rational(t, 10);
  } catch (const std::invalid_argument&) {
    throw Error(ErrorCode::BadValue, "not an exact rational: '" + text + "'");
  }
  if (r.get_den() == 0) throw Error(ErrorCode::BadValue, "zero denominator: '" + text + "'");
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& r) {
  Rational c(r);
  c.canonicalize();
  return c.get_str();
}

std::string to_decimal(const Rational& r, unsigned digits) {
  mpz_class scale = 1;
  for (unsigned i = 0; i < digits; ++i) scale *= 10;
  Rational a = abs(r) * scale + Rational(1, 2);
  mpz_class n = a.get_num() / a.get_den();
  std::string body = n.get_str();
  if (body.size() <= digits) body.insert(0, digits + 1 - body.size(), '0');
  std::string out = body.substr(0, body.size() - digits);
  if (digits) out += "." + body.substr(body.size() - digits);
  if (sgn(r) < 0 && n != 0) out.insert(0, "-");
  return out;
}

Rational sum(const std::vector<Rational>& xs) {
  Rational s = 0;
  for (const auto& x : xs) s += x;
  return s;
}

}  // namespace cooc
