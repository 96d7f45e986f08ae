#include "swanlab/errors.hpp"

namespace swanlab {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::parse_error: return "parse-error";
    case Errc::pole_at_point: return "pole-at-point";
    case Errc::zero_at_point: return "zero-at-point";
    case Errc::precision_exhausted: return "precision-exhausted";
    case Errc::non_integral: return "non-integral";
    case Errc::hensel_criterion_failed: return "hensel-criterion-failed";
    case Errc::not_closed: return "not-closed";
    case Errc::unsupported_coefficients: return "unsupported-coefficients";
    case Errc::pole_order_too_high: return "pole-order-too-high";
    case Errc::pole_at_origin: return "pole-at-origin";
    case Errc::out_of_range_level: return "out-of-range-level";
    case Errc::missing_root_of_unity: return "missing-root-of-unity";
    case Errc::coprimality_violated: return "coprimality-violated";
    case Errc::below_threshold: return "below-threshold";
    case Errc::unsupported_shape: return "unsupported-shape";
    case Errc::unclassifiable: return "unclassifiable";
    case Errc::not_in_disc: return "not-in-disc";
    case Errc::budget_exceeded: return "budget-exceeded";
    case Errc::hypothesis_violated: return "hypothesis-violated";
    case Errc::undecided: return "undecided";
    case Errc::unknown_suite: return "unknown-suite";
    case Errc::invalid_argument: return "invalid-argument";
  }
  return "unknown";
}

}  // namespace swanlab
