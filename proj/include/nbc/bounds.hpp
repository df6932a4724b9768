#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>
#include <cstdint>
#include <string>

namespace nbc {

using Rational = boost::rational<std::int64_t>;
using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

std::string to_string(const Rational& q);
std::string to_string(const BigRational& q);
BigRational to_big(const Rational& q);

// Smallest k >= 0 with 2^k >= q, for q >= 1.
int ceil_log2(const Rational& q);

// Exact right-hand side of a combinatorial bound. Values whose magnitude
// would exceed 2^kBitCap are kept symbolically; such a bound admits every
// quantity that fits in machine words.
class BigBound {
 public:
  static constexpr unsigned kBitCap = 1u << 16;

  static BigBound exact(BigRational value, std::string symbolic);
  static BigBound huge(std::string symbolic);

  bool materialised() const { return materialised_; }
  const BigRational& value() const { return value_; }
  const std::string& symbolic() const { return symbolic_; }

  // x <= bound
  bool admits(const BigRational& x) const { return !materialised_ || x <= value_; }
  // x < bound
  bool strictly_above(const BigRational& x) const { return !materialised_ || x < value_; }

  BigBound times(const BigRational& factor, const std::string& symbol) const;

  // Decimal for moderate values, symbolic form otherwise.
  std::string to_string() const;

 private:
  bool materialised_ = true;
  BigRational value_;
  std::string symbolic_;
};

// (r + 1) * 2^(chi^(r + 2))
BigBound centred_complexity_bound(int r, int chi);
// (1/2) * (2r + 2)^w * w + 1
BigBound wcol_complexity_bound(int r, int w);
// r * 2^(xi^(r + 1)) * |X|
BigBound hatted_class_bound(int r, int palette, std::size_t x_size);

}  // namespace nbc
