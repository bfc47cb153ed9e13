#include "wlansim/radio.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace wlansim {

namespace {
constexpr double kSpeedOfLight = 299792458.0;
}

bool PhyProfile::has_rate(std::int64_t rate_bps) const {
  return std::find(rates_bps.begin(), rates_bps.end(), rate_bps) != rates_bps.end();
}

PhyProfile PhyProfile::ieee80211a() {
  PhyProfile p;
  p.standard = PhyStandard::A;
  p.rates_bps = {6'000'000,  9'000'000,  12'000'000, 18'000'000,
                 24'000'000, 36'000'000, 48'000'000, 54'000'000};
  p.basic_rates_bps = {6'000'000, 12'000'000, 24'000'000};
  p.slot_us = 9;
  p.sifs_us = 16;
  p.preamble_plus_plcp_us = 20;  // OFDM preamble + SIGNAL
  p.cw_min = 15;
  p.cw_max = 1023;
  p.rx_sensitivity_dbm = {
      {6'000'000, -87.0},  {9'000'000, -86.0},  {12'000'000, -85.0},
      {18'000'000, -84.0}, {24'000'000, -80.0}, {36'000'000, -78.0},
      {48'000'000, -73.0}, {54'000'000, -72.0},
  };
  return p;
}

PhyProfile PhyProfile::ieee80211b() {
  PhyProfile p;
  p.standard = PhyStandard::B;
  p.rates_bps = {1'000'000, 2'000'000, 5'500'000, 11'000'000};
  p.basic_rates_bps = {1'000'000, 2'000'000};
  p.slot_us = 20;
  p.sifs_us = 10;
  p.preamble_plus_plcp_us = 192;  // long preamble
  p.cw_min = 31;
  p.cw_max = 1023;
  p.rx_sensitivity_dbm = {
      {1'000'000, -94.0},
      {2'000'000, -91.0},
      {5'500'000, -87.0},
      {11'000'000, -82.0},
  };
  return p;
}

double crossover_distance_m(double f_hz, double ht_m, double hr_m) {
  if (f_hz <= 0 || ht_m <= 0 || hr_m <= 0)
    throw std::logic_error("crossover_distance_m: non-positive input");
  const double lambda = kSpeedOfLight / f_hz;
  return 4.0 * std::numbers::pi * ht_m * hr_m / lambda;
}

double path_loss_db(double d_m, double f_hz, double ht_m, double hr_m) {
  if (d_m <= 0 || f_hz <= 0 || ht_m <= 0 || hr_m <= 0)
    throw std::logic_error("path_loss_db: non-positive input");
  const double lambda = kSpeedOfLight / f_hz;
  const double d_cross = 4.0 * std::numbers::pi * ht_m * hr_m / lambda;
  if (d_m < d_cross) {
    return 20.0 * std::log10(4.0 * std::numbers::pi * d_m / lambda);
  }
  return 40.0 * std::log10(d_m) - 20.0 * std::log10(ht_m * hr_m);
}

bool can_decode(const RadioConfig& tx, double loss_db, std::int64_t rate_bps,
                const PhyProfile& phy) {
  auto it = phy.rx_sensitivity_dbm.find(rate_bps);
  if (it == phy.rx_sensitivity_dbm.end())
    throw std::logic_error("can_decode: rate not in profile");
  const double rx_dbm = tx.tx_power_dbm + 2.0 * tx.antenna_gain_db - loss_db;
  return rx_dbm >= it->second;
}

std::int64_t best_rate_bps(const RadioConfig& tx, double loss_db, const PhyProfile& phy) {
  for (auto it = phy.rates_bps.rbegin(); it != phy.rates_bps.rend(); ++it) {
    if (can_decode(tx, loss_db, *it, phy)) return *it;
  }
  return 0;
}

SimTime transmit_duration_us(std::int64_t frame_bytes, std::int64_t rate_bps,
                             const PhyProfile& phy) {
  if (frame_bytes <= 0) throw std::logic_error("transmit_duration_us: frame_bytes <= 0");
  if (!phy.has_rate(rate_bps)) throw std::logic_error("transmit_duration_us: unknown rate");
  const std::int64_t bits = 8 * frame_bytes;
  const std::int64_t payload_us = (bits * 1'000'000 + rate_bps - 1) / rate_bps;
  return phy.preamble_plus_plcp_us + payload_us;
}

std::int64_t ack_rate_bps(const PhyProfile& phy, std::int64_t data_rate_bps) {
  std::int64_t best = phy.basic_rates_bps.front();
  for (std::int64_t r : phy.basic_rates_bps) {
    if (r <= data_rate_bps) best = r;
  }
  return best;
}

SimTime ack_duration_us(const PhyProfile& phy, std::int64_t data_rate_bps) {
  return transmit_duration_us(kMacAckBytes, ack_rate_bps(phy, data_rate_bps), phy);
}

}  // namespace wlansim
