#include "arithdyn/config.hpp"

namespace arithdyn {

namespace {
Limits& mutable_limits() {
  static Limits l;
  return l;
}
}  // namespace

const Limits& limits() { return mutable_limits(); }

void set_limits(const Limits& l) { mutable_limits() = l; }

}  // namespace arithdyn
