#pragma once

#include <compare>
#include <cstddef>
#include <memory>
#include <optional>
#include <string>

#include "arithdyn/bigint.hpp"

namespace arithdyn {

class FactoredNatural;

/// Outcome of a decision that exact arithmetic may not be able to settle.
enum class Truth { no, yes, unknown };

inline Truth truth(bool b) { return b ? Truth::yes : Truth::no; }

/// A natural number that is either an explicit integer or `base + offset`,
/// where `base` is a factored number too large for the bit budget
/// (base >= 2^floor_bits). Exponents and prime-run endpoints are SymNats so
/// that towers such as p^(p^(p^p)) stay exact.
class SymNat {
 public:
  SymNat() = default;
  SymNat(BigInt value) : offset_(std::move(value)) {}
  SymNat(std::uint64_t value) : offset_(value) {}
  SymNat(int value) : offset_(value) {}

  /// The natural denoted by `f`; explicit whenever f fits the bit budget.
  static SymNat of(const FactoredNatural& f);

  bool is_concrete() const { return base_ == nullptr; }
  const BigInt& offset() const { return offset_; }
  const FactoredNatural* base() const { return base_.get(); }
  std::size_t floor_bits() const { return floor_bits_; }

  /// Explicit value; throws BudgetExceeded for symbolic values.
  const BigInt& value() const;

  SymNat operator+(const BigInt& c) const;
  SymNat operator-(const BigInt& c) const;

  /// k * this, k >= 0.
  SymNat times(const BigInt& k) const;

  /// Structural identity (same representation).
  bool identical(const SymNat& other) const;

  std::string to_string() const;

  friend std::optional<SymNat> add(const SymNat& a, const SymNat& b);
  /// a - b when representable.
  friend std::optional<SymNat> subtract(const SymNat& a, const SymNat& b);
  friend Truth equal(const SymNat& a, const SymNat& b);
  friend std::optional<std::strong_ordering> compare(const SymNat& a, const SymNat& b);

 private:
  BigInt offset_;
  std::shared_ptr<const FactoredNatural> base_;
  std::size_t floor_bits_ = 0;
};

std::optional<SymNat> add(const SymNat& a, const SymNat& b);
std::optional<SymNat> subtract(const SymNat& a, const SymNat& b);
Truth equal(const SymNat& a, const SymNat& b);
std::optional<std::strong_ordering> compare(const SymNat& a, const SymNat& b);

/// compare() that throws std::domain_error when the order cannot be decided.
std::strong_ordering compare_or_throw(const SymNat& a, const SymNat& b);

}  // namespace arithdyn
