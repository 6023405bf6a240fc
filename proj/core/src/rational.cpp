#include "qpt/rational.hpp"

#include <cctype>

#include "qpt/common.hpp"

namespace qpt {

Rational parse_rational(const std::string& text) {
  require(!text.empty(), "empty rational");
  auto slash = text.find('/');
  try {
    if (slash != std::string::npos) {
      Rational q(BigInt(text.substr(0, slash)), BigInt(text.substr(slash + 1)));
      require(q.get_den() != 0, "zero denominator in '" + text + "'");
      q.canonicalize();
      return q;
    }
    // Decimal with optional exponent.
    std::string mantissa = text;
    long exponent = 0;
    auto e = text.find_first_of("eE");
    if (e != std::string::npos) {
      mantissa = text.substr(0, e);
      exponent = std::stol(text.substr(e + 1));
    }
    bool negative = false;
    std::size_t pos = 0;
    if (pos < mantissa.size() && (mantissa[pos] == '-' || mantissa[pos] == '+')) {
      negative = mantissa[pos] == '-';
      ++pos;
    }
    std::string digits;
    long frac_digits = 0;
    bool seen_point = false;
    for (; pos < mantissa.size(); ++pos) {
      char ch = mantissa[pos];
      if (ch == '.' && !seen_point) {
        seen_point = true;
      } else if (std::isdigit(static_cast<unsigned char>(ch))) {
        digits.push_back(ch);
        if (seen_point) ++frac_digits;
      } else {
        throw InputError("malformed rational '" + text + "'");
      }
    }
    require(!digits.empty(), "malformed rational '" + text + "'");
    BigInt num(digits);
    if (negative) num = -num;
    long scale = exponent - frac_digits;
    BigInt ten_pow;
    mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(scale < 0 ? -scale : scale));
    Rational q = scale < 0 ? Rational(num, ten_pow) : Rational(num * ten_pow);
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    throw InputError("malformed rational '" + text + "'");
  }
}

nlohmann::json rational_to_json(const Rational& q) {
  return {{"num", q.get_num().get_str()}, {"den", q.get_den().get_str()}};
}

Rational rational_from_json(const nlohmann::json& j) {
  Rational q(BigInt(j.at("num").get<std::string>()),
             BigInt(j.at("den").get<std::string>()));
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

BigInt binomial(unsigned long n, unsigned long k) {
  BigInt r;
  if (k > n) return 0;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

BigInt ceil_root(const BigInt& x, unsigned long k) {
  require(k >= 1 && x >= 0, "ceil_root: bad arguments");
  BigInt r;
  int exact = mpz_root(r.get_mpz_t(), x.get_mpz_t(), k);
  if (!exact) r += 1;
  return r;
}

}  // namespace qpt
