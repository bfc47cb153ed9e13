#include "wlansim/bianchi.hpp"

#include <cmath>
#include <stdexcept>

#include "wlansim/mac.hpp"

namespace wlansim {

namespace {

double tau_of_p(double p, double w, int m) {
  return 2.0 * (1.0 - 2.0 * p) /
         ((1.0 - 2.0 * p) * (w + 1.0) + p * w * (1.0 - std::pow(2.0 * p, m)));
}

}  // namespace

BianchiSolution bianchi_saturation(int n_stations, const PhyProfile& phy,
                                   std::int64_t payload_bytes) {
  if (n_stations < 1) throw std::logic_error("bianchi_saturation: n < 1");
  if (payload_bytes <= 0) throw std::logic_error("bianchi_saturation: payload <= 0");

  const double w = phy.cw_min + 1;
  const int m = static_cast<int>(std::lround(std::log2((phy.cw_max + 1.0) / w)));

  // f(p) = p - (1 - (1-tau(p))^(n-1)) is increasing in p; bisect its root.
  double lo = 0.0, hi = 1.0 - 1e-12;
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    const double tau = tau_of_p(mid, w, m);
    const double f = mid - (1.0 - std::pow(1.0 - tau, n_stations - 1));
    (f > 0 ? hi : lo) = mid;
    if (hi - lo < 1e-14) break;
  }
  const double p = 0.5 * (lo + hi);
  const double tau = tau_of_p(p, w, m);
  if (!(tau > 0.0 && tau <= 1.0)) throw std::runtime_error("bianchi_saturation: no convergence");

  const std::int64_t data_rate = phy.rates_bps.back();
  const double slot = static_cast<double>(phy.slot_us);
  const double t_data =
      static_cast<double>(transmit_duration_us(payload_bytes + kMacOverheadBytes, data_rate, phy));
  const double t_ack = static_cast<double>(ack_duration_us(phy, data_rate));
  const double ep = static_cast<double>(payload_bytes) * 8.0 * 1e6 / static_cast<double>(data_rate);
  const double ts = t_data + static_cast<double>(phy.sifs_us) + t_ack +
                    static_cast<double>(phy.difs_us());
  const double tc = t_data + static_cast<double>(phy.difs_us());

  const double p_tr = 1.0 - std::pow(1.0 - tau, n_stations);
  const double p_s =
      n_stations * tau * std::pow(1.0 - tau, n_stations - 1) / p_tr;
  const double s = p_s * p_tr * ep /
                   ((1.0 - p_tr) * slot + p_tr * p_s * ts + p_tr * (1.0 - p_s) * tc);

  return BianchiSolution{tau, p, s};
}

double bianchi_saturation_throughput(int n_stations, const PhyProfile& phy,
                                     std::int64_t payload_bytes) {
  return bianchi_saturation(n_stations, phy, payload_bytes).s;
}

}  // namespace wlansim
