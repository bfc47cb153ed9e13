#pragma once

#include <cstdint>

#include "wlansim/radio.hpp"

namespace wlansim {

/// Intermediate quantities of the DCF fixed point, exposed for tests.
struct BianchiSolution {
  double tau = 0;  // per-slot transmission probability
  double p = 0;    // conditional collision probability
  double s = 0;    // normalized saturation throughput
};

/// Saturation throughput of n stations under basic-access DCF, from the
/// two-equation fixed point
///   tau = 2(1-2p) / ((1-2p)(W+1) + p W (1-(2p)^m)),
///   p   = 1 - (1-tau)^(n-1),
/// solved by bisection to |delta tau| < 1e-10, with
///   S = Ps Ptr E[P] / ((1-Ptr) sigma + Ptr Ps Ts + Ptr (1-Ps) Tc).
/// W = cw_min+1, 2^m W = cw_max+1; slot/SIFS/DIFS/preamble and the ACK
/// rate come from the profile, matching the simulated MAC's framing
/// (28-byte MAC overhead, ACK at the highest basic rate).
BianchiSolution bianchi_saturation(int n_stations, const PhyProfile& phy,
                                   std::int64_t payload_bytes);

double bianchi_saturation_throughput(int n_stations, const PhyProfile& phy,
                                     std::int64_t payload_bytes);

}  // namespace wlansim
