#pragma once

#include <string>

#include <gmpxx.h>
#include <nlohmann/json.hpp>

namespace qpt {

using Rational = mpq_class;
using BigInt = mpz_class;

/// Accepts "p/q", integers and plain decimals such as "0.05" or "-1.25e-2".
/// Decimals are converted exactly (0.05 -> 1/20).
Rational parse_rational(const std::string& text);

/// {"num": "...", "den": "..."} with the canonical reduced form.
nlohmann::json rational_to_json(const Rational& q);
Rational rational_from_json(const nlohmann::json& j);

std::string to_string(const Rational& q);

BigInt binomial(unsigned long n, unsigned long k);

/// Smallest integer r >= 0 with r^k >= x (x >= 0, k >= 1).
BigInt ceil_root(const BigInt& x, unsigned long k);

}  // namespace qpt
