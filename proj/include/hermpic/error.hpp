#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hermpic {

enum class Errc {
  invalid_input,
  parse_error,
  ill_defined_hom,
  not_composable,
  not_equivariant,
  infinite_group,
  cap_exceeded,
  unsupported,
  infinite_ring,
  non_unit,
  not_fixed,
  class_not_twisted,
  ring_mismatch,
  discriminant_mismatch,
  bound_exceeded,
  underdetermined,
  inconsistent,
  missing_norm,
  not_an_element,
  source_mismatch,
  overflow,
  internal,
};

constexpr std::string_view errc_name(Errc e) noexcept {
  switch (e) {
    case Errc::invalid_input: return "invalid_input";
    case Errc::parse_error: return "parse_error";
    case Errc::ill_defined_hom: return "ill_defined_hom";
    case Errc::not_composable: return "not_composable";
    case Errc::not_equivariant: return "not_equivariant";
    case Errc::infinite_group: return "infinite_group";
    case Errc::cap_exceeded: return "cap_exceeded";
    case Errc::unsupported: return "unsupported";
    case Errc::infinite_ring: return "infinite_ring";
    case Errc::non_unit: return "non_unit";
    case Errc::not_fixed: return "not_fixed";
    case Errc::class_not_twisted: return "class_not_twisted";
    case Errc::ring_mismatch: return "ring_mismatch";
    case Errc::discriminant_mismatch: return "discriminant_mismatch";
    case Errc::bound_exceeded: return "bound_exceeded";
    case Errc::underdetermined: return "underdetermined";
    case Errc::inconsistent: return "inconsistent";
    case Errc::missing_norm: return "missing_norm";
    case Errc::not_an_element: return "not_an_element";
    case Errc::source_mismatch: return "source_mismatch";
    case Errc::overflow: return "overflow";
    case Errc::internal: return "internal";
  }
  return "unknown";
}

/// Errors caused by malformed or contract-violating input. The CLI maps
/// these to exit status 2; everything else is a computation failure.
constexpr bool is_input_error(Errc e) noexcept {
  switch (e) {
    case Errc::invalid_input:
    case Errc::parse_error:
    case Errc::ill_defined_hom:
    case Errc::not_composable:
    case Errc::not_equivariant:
    case Errc::unsupported:
    case Errc::non_unit:
    case Errc::not_fixed:
    case Errc::class_not_twisted:
    case Errc::ring_mismatch:
    case Errc::discriminant_mismatch:
    case Errc::missing_norm:
    case Errc::not_an_element:
    case Errc::source_mismatch:
      return true;
    default:
      return false;
  }
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what),
        code_(code) {}

  [[nodiscard]] Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace hermpic
