#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rankone {

enum class Errc {
  invalid_argument,
  no_direction,
  undecidable,
  tunnel_covers_all,
  below_undefined,
  not_primitive,
  overlapping_boxes,
  missing_zero,
  outside_shape,
  not_found,
  budget_exhausted,
  precondition,
  invariant_violation,
  parse_error,
  unsupported_format,
};

constexpr std::string_view errc_name(Errc c) noexcept {
  switch (c) {
    case Errc::invalid_argument: return "invalid_argument";
    case Errc::no_direction: return "no_direction";
    case Errc::undecidable: return "undecidable_at_precision";
    case Errc::tunnel_covers_all: return "tunnel_covers_all_directions";
    case Errc::below_undefined: return "below_undefined";
    case Errc::not_primitive: return "not_primitive";
    case Errc::overlapping_boxes: return "overlapping_boxes";
    case Errc::missing_zero: return "missing_zero_placement";
    case Errc::outside_shape: return "outside_shape";
    case Errc::not_found: return "not_found";
    case Errc::budget_exhausted: return "budget_exhausted";
    case Errc::precondition: return "precondition_violation";
    case Errc::invariant_violation: return "invariant_violation";
    case Errc::parse_error: return "parse_error";
    case Errc::unsupported_format: return "unsupported_format";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace rankone
