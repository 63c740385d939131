#include "radiomatch/schedule.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace radiomatch {

Schedule::Schedule(double c, NodeIndex n, LogMode log_mode) : c_(c), n_(n), mode_(log_mode) {
  if (!(c > 0)) throw std::invalid_argument("schedule constant C must be positive");
  if (n < 1) throw std::invalid_argument("schedule needs n >= 1");
  const double raw =
      log_mode == LogMode::NaturalLog ? std::log(static_cast<double>(n)) : std::log2(static_cast<double>(n));
  log_n_ = std::max(1.0, raw);
  t_max_ = static_cast<std::uint64_t>(std::ceil(c_ * static_cast<double>(n) * log_n_));
}

double Schedule::participation_rate(double t) const {
  if (!(t >= 1.0) || !(t <= static_cast<double>(t_max_))) {
    std::ostringstream msg;
    msg << "round " << t << " outside the schedule range [1, " << t_max_ << "]";
    throw std::out_of_range(msg.str());
  }
  // Written as 3 / (4 + (t_max - t)/(C logn)) so that r(t_max) is exactly 3/4.
  return 3.0 / (4.0 + (static_cast<double>(t_max_) - t) / (c_ * log_n_));
}

}  // namespace radiomatch
