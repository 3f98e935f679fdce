#include "hsa/rates.hpp"

#include <algorithm>
#include <ostream>

namespace hsa {

RateRegion rate_region(const SystemShape& shape) {
  RateRegion r;
  r.feasible = shape.feasible();
  if (!r.feasible) return r;
  const long long width = shape.decode_width();
  const long long t = shape.colluders_max;
  const long long v0 = shape.user_floor;
  const long long u0 = shape.relay_floor;
  r.rx1_min = Rational(1);
  r.ry1_min = Rational(1);
  r.rx2_min = Rational(1, width - t);
  r.rx2_corner = Rational(v0, width - t);
  r.ry2_lower = Rational(1, u0 - t / v0);  // integer division = floor
  r.ry2_upper = Rational(v0, width - t);
  r.ry2_tight = r.ry2_lower == r.ry2_upper;
  return r;
}

RateTuple measured_rates(const SystemParams& params, const Transcript& t) {
  const long long len = params.input_len();
  size_t x1 = 0, y1 = 0, y2 = 0;
  bool any_x2 = false;
  for (const auto& m : t.round1_user) x1 = std::max(x1, m.size());
  for (const auto& m : t.round1_relay) y1 = std::max(y1, m.size());
  for (const auto& m : t.round2_user) any_x2 |= m.has_value();
  for (const auto& m : t.round2_relay) {
    if (m) y2 = std::max(y2, m->size());
  }
  RateTuple out;
  out.round1_user = Rational(static_cast<long long>(x1), len);
  out.round1_relay = Rational(static_cast<long long>(y1), len);
  out.round2_user = Rational(any_x2 ? 1 : 0, len);
  out.round2_relay = Rational(static_cast<long long>(y2), len);
  return out;
}

RateTuple scheme_rates(const SystemShape& shape) {
  const long long len = shape.input_len();
  RateTuple out;
  out.round1_user = Rational(1);
  out.round1_relay = Rational(1);
  out.round2_user = Rational(1, len);
  out.round2_relay = Rational(shape.user_floor, len);
  return out;
}

RateCompareReport compare_rates(const RateTuple& measured,
                                const SystemShape& shape) {
  RateCompareReport rep;
  rep.measured = measured;
  rep.region = rate_region(shape);
  if (!rep.region.feasible) {
    rep.notes.push_back("shape infeasible; no rates to compare");
    return rep;
  }
  const RateTuple want = scheme_rates(shape);
  rep.achieves_scheme_rates = measured == want;
  rep.ry2_meets_upper = measured.round2_relay == rep.region.ry2_upper;
  if (measured.round1_user < rep.region.rx1_min ||
      measured.round1_relay < rep.region.ry1_min ||
      measured.round2_user < rep.region.rx2_min ||
      measured.round2_relay < rep.region.ry2_lower) {
    rep.converse_violated = true;
    rep.notes.push_back(
        "internal error: a measured rate lies below its converse bound");
  }
  if (!(rep.region.rx2_corner == rep.region.rx2_min)) {
    rep.notes.push_back(
        "second-round user rate readings differ: per-user bound " +
        rep.region.rx2_min.str() + " (achieved) vs aggregate corner " +
        rep.region.rx2_corner.str() + "; both reported");
  }
  return rep;
}

void write_rate_region(std::ostream& os, const RateRegion& r) {
  if (!r.feasible) {
    os << "feasible=false (empty rate region: U0*V0 <= T)\n";
    return;
  }
  os << "feasible=true rx1_min=" << r.rx1_min.str()
     << " ry1_min=" << r.ry1_min.str() << " rx2_min=" << r.rx2_min.str()
     << " rx2_corner=" << r.rx2_corner.str()
     << " ry2_lower=" << r.ry2_lower.str()
     << " ry2_upper=" << r.ry2_upper.str()
     << " ry2_tight=" << (r.ry2_tight ? "true" : "false") << "\n";
}

void write_rate_report(std::ostream& os, const RateCompareReport& r) {
  os << "measured rx1=" << r.measured.round1_user.str()
     << " ry1=" << r.measured.round1_relay.str()
     << " rx2=" << r.measured.round2_user.str()
     << " ry2=" << r.measured.round2_relay.str() << "\n";
  write_rate_region(os, r.region);
  os << "achieves_scheme_rates=" << (r.achieves_scheme_rates ? "true" : "false")
     << " ry2_meets_upper=" << (r.ry2_meets_upper ? "true" : "false")
     << " converse_violated=" << (r.converse_violated ? "true" : "false")
     << "\n";
  for (const auto& n : r.notes) os << "note: " << n << "\n";
}

}  // namespace hsa
