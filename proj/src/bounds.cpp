#include "nbc/bounds.hpp"

#include <cmath>

namespace nbc {

std::string to_string(const Rational& q) {
  if (q.denominator() == 1) return std::to_string(q.numerator());
  return std::to_string(q.numerator()) + "/" + std::to_string(q.denominator());
}

std::string to_string(const BigRational& q) {
  if (denominator(q) == 1) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

BigRational to_big(const Rational& q) { return BigRational(q.numerator(), q.denominator()); }

int ceil_log2(const Rational& q) {
  int k = 0;
  std::int64_t power = 1;
  while (q.denominator() * power < q.numerator()) {
    power *= 2;
    ++k;
  }
  return k;
}

BigBound BigBound::exact(BigRational value, std::string symbolic) {
  BigBound b;
  b.value_ = std::move(value);
  b.symbolic_ = std::move(symbolic);
  return b;
}

BigBound BigBound::huge(std::string symbolic) {
  BigBound b;
  b.materialised_ = false;
  b.symbolic_ = std::move(symbolic);
  return b;
}

BigBound BigBound::times(const BigRational& factor, const std::string& symbol) const {
  std::string sym = "(" + symbolic_ + ")*" + symbol;
  if (!materialised_) return huge(sym);
  return exact(value_ * factor, sym);
}

std::string BigBound::to_string() const {
  if (!materialised_) return symbolic_;
  const BigInt& num = numerator(value_);
  if (msb(num == 0 ? BigInt(1) : BigInt(abs(num))) > 128) return symbolic_;
  return nbc::to_string(value_);
}

namespace {

BigInt pow_int(int base, unsigned exponent) {
  BigInt out = 1;
  for (unsigned i = 0; i < exponent; ++i) out *= base;
  return out;
}

}  // namespace

BigBound centred_complexity_bound(int r, int chi) {
  std::string sym = std::to_string(r + 1) + "*2^(" + std::to_string(chi) + "^" +
                    std::to_string(r + 2) + ")";
  BigInt exponent = pow_int(chi, static_cast<unsigned>(r + 2));
  if (exponent > BigBound::kBitCap) return BigBound::huge(sym);
  BigInt value = BigInt(r + 1) << static_cast<unsigned>(exponent);
  return BigBound::exact(BigRational(value), sym);
}

BigBound wcol_complexity_bound(int r, int w) {
  std::string sym = "(1/2)*" + std::to_string(2 * r + 2) + "^" + std::to_string(w) + "*" +
                    std::to_string(w) + "+1";
  const double bits = w * std::log2(2.0 * r + 2.0);
  if (bits > BigBound::kBitCap) return BigBound::huge(sym);
  BigRational value = BigRational(pow_int(2 * r + 2, static_cast<unsigned>(w)) * w, 2) + 1;
  return BigBound::exact(value, sym);
}

BigBound hatted_class_bound(int r, int palette, std::size_t x_size) {
  std::string sym = std::to_string(r) + "*2^(" + std::to_string(palette) + "^" +
                    std::to_string(r + 1) + ")*" + std::to_string(x_size);
  BigInt exponent = pow_int(palette, static_cast<unsigned>(r + 1));
  if (exponent > BigBound::kBitCap) return BigBound::huge(sym);
  BigInt value = (BigInt(r) << static_cast<unsigned>(exponent)) * x_size;
  return BigBound::exact(BigRational(value), sym);
}

}  // namespace nbc
