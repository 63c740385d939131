#pragma once

#include <cstdint>

#include "radiomatch/graph.hpp"

namespace radiomatch {

enum class LogMode : std::uint8_t { NaturalLog, Log2 };

// Participation schedule.  Over rounds 1..t_max with t_max = ceil(C n logn),
//
//     r(t) = 3 C logn / (4 C logn + t_max - t),   logn = max(1, log n),
//
// which rises monotonically from roughly 3/n and ends at exactly 3/4.  The
// natural log is the default; the max(1, .) guard keeps the single-node
// network well-defined.
class Schedule {
 public:
  Schedule(double c, NodeIndex n, LogMode log_mode = LogMode::NaturalLog);

  // r(t).  Accepts real-valued t for analysis; throws std::out_of_range
  // outside [1, t_max].
  double participation_rate(double t) const;

  std::uint64_t rounds() const { return t_max_; }
  std::uint64_t timesteps() const { return 3 * t_max_; }

  double c() const { return c_; }
  double log_n() const { return log_n_; }
  NodeIndex n() const { return n_; }
  LogMode log_mode() const { return mode_; }

  // Per-node energy ceiling the harness checks every run against.
  double energy_bound() const { return 20.0 * c_ * log_n_ * log_n_; }

 private:
  double c_ = 0;
  NodeIndex n_ = 0;
  LogMode mode_ = LogMode::NaturalLog;
  double log_n_ = 1;
  std::uint64_t t_max_ = 0;
};

}  // namespace radiomatch
