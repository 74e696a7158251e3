#include "arithdyn/symnat.hpp"

#include <stdexcept>

#include "arithdyn/config.hpp"
#include "arithdyn/factored.hpp"

namespace arithdyn {

namespace {

// a = F + c with F >= 2^floor_bits; true when a > v is certain.
bool symbolic_exceeds(const SymNat& a, const BigInt& v) {
  const BigInt diff = v - a.offset();
  return diff.sign() < 0 || bit_length(diff) <= a.floor_bits();
}

bool same_base(const SymNat& a, const SymNat& b) {
  if (a.base() == b.base()) return true;
  return equal(*a.base(), *b.base()) == Truth::yes;
}

std::string abbreviate(const BigInt& v) {
  std::string digits = v.str();
  if (digits.size() <= 100) return digits;
  return "<" + std::to_string(digits.size()) + " digits: " + digits.substr(0, 12) + "..." +
         digits.substr(digits.size() - 12) + ">";
}

}  // namespace

SymNat SymNat::of(const FactoredNatural& f) {
  if (auto v = f.to_integer()) return SymNat(std::move(*v));
  SymNat s;
  s.base_ = std::make_shared<const FactoredNatural>(f);
  s.floor_bits_ = limits().bit_budget;
  return s;
}

const BigInt& SymNat::value() const {
  if (base_) throw BudgetExceeded("value exceeds the big-integer budget: " + to_string());
  return offset_;
}

SymNat SymNat::operator+(const BigInt& c) const {
  SymNat r = *this;
  r.offset_ += c;
  return r;
}

SymNat SymNat::operator-(const BigInt& c) const {
  SymNat r = *this;
  r.offset_ -= c;
  return r;
}

SymNat SymNat::times(const BigInt& k) const {
  if (k.sign() < 0) throw std::invalid_argument("SymNat::times: negative factor");
  if (is_concrete()) return SymNat(offset_ * k);
  if (k.is_zero()) return SymNat(0);
  SymNat r;
  r.base_ = std::make_shared<const FactoredNatural>(multiply(*base_, factorize(k)));
  r.offset_ = offset_ * k;
  r.floor_bits_ = floor_bits_;
  return r;
}

bool SymNat::identical(const SymNat& other) const {
  if (offset_ != other.offset_) return false;
  if (is_concrete() || other.is_concrete()) return is_concrete() && other.is_concrete();
  return base_ == other.base_ || arithdyn::identical(*base_, *other.base_);
}

std::string SymNat::to_string() const {
  if (is_concrete()) return abbreviate(offset_);
  std::string s = "(" + base_->to_string() + ")";
  if (offset_.sign() > 0) s += " + " + abbreviate(offset_);
  if (offset_.sign() < 0) s += " - " + abbreviate(BigInt(-offset_));
  return s;
}

std::optional<SymNat> add(const SymNat& a, const SymNat& b) {
  if (a.is_concrete()) return b + a.offset();
  if (b.is_concrete()) return a + b.offset();
  if (!same_base(a, b)) return std::nullopt;
  SymNat doubled = SymNat(a).times(2);
  doubled.offset_ = a.offset_ + b.offset_;
  return doubled;
}

std::optional<SymNat> subtract(const SymNat& a, const SymNat& b) {
  if (b.is_concrete()) return a - b.offset();
  if (a.is_concrete()) return std::nullopt;
  if (!same_base(a, b)) return std::nullopt;
  return SymNat(BigInt(a.offset_ - b.offset_));
}

Truth equal(const SymNat& a, const SymNat& b) {
  if (a.is_concrete() && b.is_concrete()) return truth(a.offset_ == b.offset_);
  if (a.is_concrete()) return symbolic_exceeds(b, a.offset_) ? Truth::no : Truth::unknown;
  if (b.is_concrete()) return symbolic_exceeds(a, b.offset_) ? Truth::no : Truth::unknown;
  if (a.base_ == b.base_) return truth(a.offset_ == b.offset_);
  const Truth bases = equal(*a.base_, *b.base_);
  if (bases == Truth::yes) return truth(a.offset_ == b.offset_);
  if (bases == Truth::no && a.offset_ == b.offset_) return Truth::no;
  return Truth::unknown;
}

std::optional<std::strong_ordering> compare(const SymNat& a, const SymNat& b) {
  if (a.is_concrete() && b.is_concrete()) return a.offset_.compare(b.offset_) <=> 0;
  if (b.is_concrete()) {
    if (symbolic_exceeds(a, b.offset_)) return std::strong_ordering::greater;
    return std::nullopt;
  }
  if (a.is_concrete()) {
    if (symbolic_exceeds(b, a.offset_)) return std::strong_ordering::less;
    return std::nullopt;
  }
  if (same_base(a, b)) return a.offset_.compare(b.offset_) <=> 0;
  return std::nullopt;
}

std::strong_ordering compare_or_throw(const SymNat& a, const SymNat& b) {
  auto c = compare(a, b);
  if (!c) throw std::domain_error("cannot order " + a.to_string() + " and " + b.to_string());
  return *c;
}

}  // namespace arithdyn
