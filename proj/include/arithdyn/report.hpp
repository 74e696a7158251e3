#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace arithdyn {

enum class Status { PASS, FAIL, INFO };

inline const char* status_name(Status s) {
  switch (s) {
    case Status::PASS: return "PASS";
    case Status::FAIL: return "FAIL";
    case Status::INFO: return "INFO";
  }
  return "?";
}

struct Counterexample {
  std::string family;
  std::uint64_t position = 0;
  std::string expected;
  std::string actual;
};

/// Outcome of checking one claim on a finite window. A FAIL always carries a
/// counterexample; a certified bound is only attached to a PASS.
struct VerificationReport {
  std::string lemma_id;
  std::uint64_t families_checked = 0;
  std::uint64_t depth = 0;
  Status status = Status::PASS;
  std::optional<Counterexample> counterexample;
  std::optional<std::string> certified_bound;
  std::vector<std::string> witnesses;
  std::vector<std::string> notes;

  bool passed() const { return status == Status::PASS; }

  void fail(Counterexample c) {
    status = Status::FAIL;
    counterexample = std::move(c);
    certified_bound.reset();
  }
};

}  // namespace arithdyn
