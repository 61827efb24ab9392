#include "netbound/inequalities.hpp"

#include <cmath>

namespace netbound {

const char* status_name(IneqStatus s) { return s == IneqStatus::Conjectured ? "conjectured" : "established"; }

double finner_threshold(double p) { return 1.0 + p - 2.0 * std::cbrt(p * p); }

}  // namespace netbound
