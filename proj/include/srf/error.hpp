#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

namespace srf {

enum class Errc {
  not_a_partial_order,
  not_a_lattice,
  no_bounds,
  scale_exceeded,
  index_out_of_range,
  not_galois_input,
  section_not_galois,
  axiom_violation,
  not_closed,
  not_separated,
  sort_mismatch,
  unknown_element,
  precondition_failed,
  invalid_homomorphism,
  syntax_error,
  semantic_error,
};

std::string_view to_string(Errc code);

/// Every failure raised by the toolkit. `detail` carries a structured
/// counterexample or location where one exists.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message, nlohmann::json detail = {})
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code),
        detail_(std::move(detail)) {}

  Errc code() const noexcept { return code_; }
  const nlohmann::json& detail() const noexcept { return detail_; }

 private:
  Errc code_;
  nlohmann::json detail_;
};

}  // namespace srf
