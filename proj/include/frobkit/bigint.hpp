#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "frobkit/error.hpp"

namespace frobkit {

using BigInt = boost::multiprecision::cpp_int;

inline std::string to_string(const BigInt& value) { return value.str(); }

/// Parses an optionally signed decimal integer. Anything else is InvalidInput.
inline BigInt parse_bigint(std::string_view text) {
  std::string_view digits = text;
  bool negative = false;
  if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) {
    negative = digits.front() == '-';
    digits.remove_prefix(1);
  }
  if (digits.empty()) {
    throw Error(ErrorKind::InvalidInput, "expected an integer, got '" + std::string(text) + "'");
  }
  BigInt value = 0;
  for (char ch : digits) {
    if (ch < '0' || ch > '9') {
      throw Error(ErrorKind::InvalidInput, "expected an integer, got '" + std::string(text) + "'");
    }
    value *= 10;
    value += ch - '0';
  }
  return negative ? BigInt(-value) : value;
}

inline BigInt ipow(const BigInt& base, std::uint32_t exponent) {
  return boost::multiprecision::pow(base, exponent);
}

/// Narrows a nonnegative value to a table index; values that cannot be
/// addressed in memory are a resource problem, not an input error.
inline std::size_t to_index(const BigInt& value, std::string_view what) {
  if (value < 0) {
    throw Error(ErrorKind::InvalidInput, std::string(what) + " must be nonnegative");
  }
  if (value > BigInt(std::numeric_limits<std::size_t>::max())) {
    throw Error(ErrorKind::ResourceLimit, std::string(what) + " does not fit in memory: " + value.str());
  }
  return value.convert_to<std::size_t>();
}

template <typename Int>
Int checked_narrow(const BigInt& value, std::string_view what) {
  if (value < BigInt(std::numeric_limits<Int>::min()) || value > BigInt(std::numeric_limits<Int>::max())) {
    throw Error(ErrorKind::InvalidInput, std::string(what) + " out of range: " + value.str());
  }
  return value.convert_to<Int>();
}

}  // namespace frobkit
