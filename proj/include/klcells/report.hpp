#pragma once
#include <string>
#include <vector>

#include "json.hpp"

namespace klcells {

inline constexpr std::size_t kMaxCounterexamples = 20;

/// Outcome of an exhaustive check: PASS, FAIL (with up to 20 recorded
/// counterexamples) or PRECONDITION when the inputs did not qualify.
struct PropertyReport {
  enum class Status { Pass, Fail, Precondition };

  std::string property;
  Status status = Status::Pass;
  std::size_t violations = 0;
  std::size_t checked = 0;
  std::vector<std::string> counterexamples;
  std::string note;

  explicit PropertyReport(std::string name = {}) : property(std::move(name)) {}

  void fail(std::string what) {
    status = Status::Fail;
    ++violations;
    if (counterexamples.size() < kMaxCounterexamples) counterexamples.push_back(std::move(what));
  }
  void precondition(std::string why) {
    status = Status::Precondition;
    note = std::move(why);
  }
  void expect(bool ok, const std::string& what) {
    ++checked;
    if (!ok) fail(what);
  }
  bool passed() const { return status == Status::Pass; }

  /// Folds another report's outcome into this one.
  void merge(const PropertyReport& o) {
    checked += o.checked;
    if (o.status == Status::Precondition && status == Status::Pass) {
      status = Status::Precondition;
      note = o.note;
    }
    for (const auto& c : o.counterexamples) fail(o.property + ": " + c);
    violations += o.violations - std::min(o.violations, o.counterexamples.size());
  }

  std::string status_string() const {
    switch (status) {
      case Status::Pass: return "PASS";
      case Status::Fail: return "FAIL";
      case Status::Precondition: return "PRECONDITION";
    }
    return "?";
  }

  nlohmann::json to_json() const {
    nlohmann::json j{{"property", property}, {"status", status_string()}, {"counterexamples", counterexamples}};
    j["checked"] = checked;
    if (violations > counterexamples.size()) j["violations"] = violations;
    if (!note.empty()) j["note"] = note;
    return j;
  }
};

}  // namespace klcells
