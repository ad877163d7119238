#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace freesplit {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int int_mod(const Int& a, const Int& m) {
  Int r = a % m;
  if (r < 0) r += m;
  return r;
}

inline int sign_of(const Int& a) { return a > 0 ? 1 : (a < 0 ? -1 : 0); }

/// Serializes a rational as "p/q" in lowest terms, sign on the numerator.
std::string rat_to_string(const Rat& r);

/// Parses "p/q" or a plain integer "p". Throws std::invalid_argument on a
/// malformed token or zero denominator.
Rat rat_from_string(const std::string& s);

inline std::string int_to_string(const Int& v) { return v.str(); }

inline std::size_t hash_combine(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

inline std::size_t hash_int(const Int& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() &&
      v <= std::numeric_limits<std::int64_t>::max()) {
    return std::hash<std::int64_t>{}(static_cast<std::int64_t>(v));
  }
  return std::hash<std::string>{}(v.str());
}

}  // namespace freesplit
