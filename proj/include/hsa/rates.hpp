#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "hsa/params.hpp"
#include "hsa/protocol.hpp"
#include "hsa/rational.hpp"

namespace hsa {

/// Per-hop message lengths in symbols per input symbol.
struct RateTuple {
  Rational round1_user;   // R_X^(1)
  Rational round1_relay;  // R_Y^(1)
  Rational round2_user;   // R_X^(2)
  Rational round2_relay;  // R_Y^(2)

  bool operator==(const RateTuple&) const = default;
};

/// Optimal-rate bounds for a parameter shape. Two readings of the
/// second-round user rate circulate: the per-user converse bound
/// 1/(U0*V0 - T) that the scheme attains, and a region corner of
/// V0/(U0*V0 - T); both are carried so reports can show them side by side.
struct RateRegion {
  bool feasible = false;
  Rational rx1_min;          // 1
  Rational ry1_min;          // 1
  Rational rx2_min;          // 1/(U0*V0 - T), per-user converse bound
  Rational rx2_corner;       // V0/(U0*V0 - T), aggregate corner reading
  Rational ry2_lower;        // 1/(U0 - floor(T/V0)), converse
  Rational ry2_upper;        // V0/(U0*V0 - T) = 1/(U0 - T/V0), achieved
  bool ry2_tight = false;    // lower == upper, iff T mod V0 == 0
};

RateRegion rate_region(const SystemShape& shape);

/// Worst-case per-message symbol counts observed in a transcript, divided by
/// the input length.
RateTuple measured_rates(const SystemParams& params, const Transcript& t);

/// Scheme-expected rates for a shape: (1, 1, 1/(U0V0-T), V0/(U0V0-T)).
RateTuple scheme_rates(const SystemShape& shape);

struct RateCompareReport {
  RateTuple measured;
  RateRegion region;
  bool achieves_scheme_rates = false;  // measured equals the scheme tuple
  bool ry2_meets_upper = false;
  bool converse_violated = false;  // impossible for a correct engine
  std::vector<std::string> notes;
};

RateCompareReport compare_rates(const RateTuple& measured,
                                const SystemShape& shape);

void write_rate_report(std::ostream& os, const RateCompareReport& r);
void write_rate_region(std::ostream& os, const RateRegion& r);

}  // namespace hsa
