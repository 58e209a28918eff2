#ifndef FOXFREE_INTS_HPP
#define FOXFREE_INTS_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

namespace foxfree {

// All ring coefficients are exact arbitrary-precision integers; Lie
// coordinates are exact rationals.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Bad input: malformed words, factor mismatches, violated preconditions.
// The CLI maps this to exit code 2.
class DomainError : public std::runtime_error {
 public:
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// A bounded search ran out of budget before covering its declared bounds.
// Distinct from "searched everything, found nothing".  CLI exit code 3.
class BoundExhausted : public std::runtime_error {
 public:
  explicit BoundExhausted(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace foxfree

#endif
