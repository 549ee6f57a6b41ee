#include "wlansim/mobility.hpp"

#include <algorithm>
#include <cmath>

namespace wlansim {

void RandomWaypoint::start(EventQueue& engine, RngStream& rng, const Arena& arena,
                           double speed_mps, SimTime pause, const Vec2* fixed) {
  arena_ = arena;
  speed_ = speed_mps;
  pause_ = pause;
  from_ = fixed ? *fixed : draw_point(rng);
  to_ = from_;
  if (speed_ <= 0.0) return;  // static node
  begin_leg(engine, rng);
}

Vec2 RandomWaypoint::draw_point(RngStream& rng) const {
  return {rng.uniform_double() * arena_.width_m, rng.uniform_double() * arena_.height_m};
}

void RandomWaypoint::begin_leg(EventQueue& engine, RngStream& rng) {
  from_ = to_;
  to_ = draw_point(rng);
  leg_start = engine.now();
  const double dist = distance(from_, to_);
  // Ceil keeps the realized speed at or below the configured one.
  const auto travel = static_cast<SimTime>(std::ceil(dist / speed_ * 1e9));
  leg_end = leg_start + travel;
  engine.schedule(leg_end + pause_, [this, &engine, &rng] { begin_leg(engine, rng); });
}

Vec2 RandomWaypoint::position_at(SimTime t) const {
  if (t >= leg_end) return to_;  // arrived, pausing at the waypoint
  if (t <= leg_start) return from_;
  const double f = static_cast<double>(t - leg_start) / static_cast<double>(leg_end - leg_start);
  return {from_.x + (to_.x - from_.x) * f, from_.y + (to_.y - from_.y) * f};
}

}  // namespace wlansim
