#pragma once

#include <stdexcept>
#include <string>

namespace swanlab {

enum class Errc {
  parse_error,
  pole_at_point,
  zero_at_point,
  precision_exhausted,
  non_integral,
  hensel_criterion_failed,
  not_closed,
  unsupported_coefficients,
  pole_order_too_high,
  pole_at_origin,
  out_of_range_level,
  missing_root_of_unity,
  coprimality_violated,
  below_threshold,
  unsupported_shape,
  unclassifiable,
  not_in_disc,
  budget_exceeded,
  hypothesis_violated,
  undecided,
  unknown_suite,
  invalid_argument,
};

const char* errc_name(Errc c);

// All library failures surface as this type; code() is the stable kebab-case name.
class Error : public std::runtime_error {
 public:
  Error(Errc c, const std::string& what)
      : std::runtime_error(std::string(errc_name(c)) + ": " + what), code_(c) {}
  Errc errc() const { return code_; }
  std::string code() const { return errc_name(code_); }

 private:
  Errc code_;
};

}  // namespace swanlab
