#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace srf {

enum class Status { pass, fail, skipped };

std::string_view to_string(Status s);

/// One verified claim. A failing check carries the first counterexample found
/// in canonical scan order.
struct Check {
  std::string id;
  Status status = Status::pass;
  nlohmann::json witness;  // null when passing
  std::string note;
  double elapsed_ms = 0.0;

  bool passed() const noexcept { return status != Status::fail; }
};

Check pass_check(std::string id, std::string note = {});
Check fail_check(std::string id, nlohmann::json witness, std::string note = {});
Check skipped_check(std::string id, std::string note);

/// Builds a check from an optional witness: no witness means pass.
Check check_from(std::string id, std::optional<nlohmann::json> witness, std::string note = {});

struct Report {
  std::vector<Check> checks;

  void add(Check c) { checks.push_back(std::move(c)); }
  void append(const Report& other);

  bool all_passed() const noexcept;
  std::size_t failures() const noexcept;
  const Check* find(std::string_view id) const noexcept;
  /// Ids of failed checks, in report order.
  std::vector<std::string> failed_ids() const;
};

/// Runs `body` (returning a Check) and stamps it with its wall time.
template <class F>
Check timed(F&& body) {
  const auto start = std::chrono::steady_clock::now();
  Check c = body();
  c.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return c;
}

/// Identifier families that may appear in a report. A check id is either a
/// catalog entry or a catalog entry followed by ':' and a qualifier (relation
/// or operator name, argument place).
const std::vector<std::pair<std::string_view, std::string_view>>& check_catalog();
bool in_catalog(std::string_view id);

}  // namespace srf
