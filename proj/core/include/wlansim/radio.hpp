#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "wlansim/engine.hpp"

namespace wlansim {

enum class PhyStandard { A, B };

/// Per-standard PHY constants: rate set, interframe timing, contention
/// window bounds and receive sensitivity per rate. The defaults below come
/// from the 802.11a/b standards and representative equipment data sheets;
/// a scenario file may override any of them.
struct PhyProfile {
  PhyStandard standard = PhyStandard::B;
  std::vector<std::int64_t> rates_bps;        // ascending
  std::vector<std::int64_t> basic_rates_bps;  // ascending; control responses
  SimTime slot_us = 0;
  SimTime sifs_us = 0;
  SimTime preamble_plus_plcp_us = 0;
  int cw_min = 0;
  int cw_max = 0;
  std::map<std::int64_t, double> rx_sensitivity_dbm;  // rate -> threshold

  SimTime difs_us() const { return sifs_us + 2 * slot_us; }
  bool has_rate(std::int64_t rate_bps) const;

  static PhyProfile ieee80211a();
  static PhyProfile ieee80211b();
  static PhyProfile make(PhyStandard s) {
    return s == PhyStandard::A ? ieee80211a() : ieee80211b();
  }
};

struct RadioConfig {
  double tx_power_dbm = 39.0;
  double antenna_gain_db = 15.0;  // applied at both ends of a link
  double antenna_height_m = 1.5;
  double noise_floor_dbm = -101.0;

  bool operator==(const RadioConfig&) const = default;
};

/// Crossover distance 4*pi*ht*hr/lambda between the free-space and
/// ground-reflection branches of the two-ray model.
double crossover_distance_m(double f_hz, double ht_m, double hr_m);

/// Two-ray path loss: free space 20*log10(4*pi*d/lambda) below the
/// crossover distance, 40*log10(d) - 20*log10(ht*hr) at or beyond it.
/// The two branches agree at the crossover by construction.
double path_loss_db(double d_m, double f_hz, double ht_m, double hr_m);

/// Threshold reception test: decode iff
/// tx_power + tx_gain + rx_gain - loss >= rx_sensitivity[rate].
bool can_decode(const RadioConfig& tx, double loss_db, std::int64_t rate_bps,
                const PhyProfile& phy);

/// Highest rate whose sensitivity threshold is met at loss_db, or 0 when
/// even the lowest rate fails.
std::int64_t best_rate_bps(const RadioConfig& tx, double loss_db, const PhyProfile& phy);

/// Airtime of a frame: preamble+PLCP plus ceil(payload bits / rate),
/// integer microseconds.
SimTime transmit_duration_us(std::int64_t frame_bytes, std::int64_t rate_bps,
                             const PhyProfile& phy);

/// Rate used for a control response (ACK): highest basic rate not above
/// the data rate, falling back to the lowest basic rate.
std::int64_t ack_rate_bps(const PhyProfile& phy, std::int64_t data_rate_bps);

inline constexpr std::int64_t kMacAckBytes = 14;  // 10 header + 4 FCS

SimTime ack_duration_us(const PhyProfile& phy, std::int64_t data_rate_bps);

}  // namespace wlansim
