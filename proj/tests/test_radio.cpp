#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "wlansim/radio.hpp"

using namespace wlansim;

TEST_CASE("profile constants satisfy the interframe identity") {
  for (auto phy : {PhyProfile::ieee80211a(), PhyProfile::ieee80211b()}) {
    CHECK(phy.difs_us() == phy.sifs_us + 2 * phy.slot_us);
    // sensitivity monotone: higher rate needs a less negative threshold
    double prev = -1e9;
    for (auto r : phy.rates_bps) {
      CHECK(phy.rx_sensitivity_dbm.at(r) > prev);
      prev = phy.rx_sensitivity_dbm.at(r);
    }
  }
  CHECK(PhyProfile::ieee80211a().rates_bps.back() == 54'000'000);
  CHECK(PhyProfile::ieee80211b().rates_bps.back() == 11'000'000);
}

TEST_CASE("two-ray crossover distance at 2.401 GHz, 1.5 m antennas") {
  // 4*pi*ht*hr*f/c evaluated independently: 226.4456 m.
  CHECK(crossover_distance_m(2.401e9, 1.5, 1.5) == doctest::Approx(226.4456).epsilon(1e-4));
}

TEST_CASE("free-space and ground-reflection branches agree at the crossover") {
  const double f = 2.401e9, h = 1.5;
  const double dc = crossover_distance_m(f, h, h);
  const double below = path_loss_db(dc * (1 - 1e-9), f, h, h);
  const double at = path_loss_db(dc, f, h, h);
  CHECK(std::abs(below - at) < 0.01);
}

TEST_CASE("beyond the crossover, doubling distance adds 40*log10(2) dB") {
  const double f = 2.401e9, h = 1.5;
  const double d = 300.0;  // past the ~226 m crossover
  const double delta = path_loss_db(2 * d, f, h, h) - path_loss_db(d, f, h, h);
  CHECK(delta == doctest::Approx(12.0412).epsilon(1e-6));
}

TEST_CASE("path loss increases strictly with distance") {
  const double f = 2.403e9, h = 1.5;
  double prev = 0;
  for (double d = 1; d < 2000; d *= 1.37) {
    const double loss = path_loss_db(d, f, h, h);
    CHECK(loss > prev);
    prev = loss;
  }
}

TEST_CASE("non-positive path loss inputs are hard errors") {
  CHECK_THROWS_AS(path_loss_db(0, 2.4e9, 1.5, 1.5), std::logic_error);
  CHECK_THROWS_AS(path_loss_db(10, -1, 1.5, 1.5), std::logic_error);
  CHECK_THROWS_AS(path_loss_db(10, 2.4e9, 0, 1.5), std::logic_error);
}

TEST_CASE("zero-loss link decodes every configured rate") {
  RadioConfig radio;
  const auto phy = PhyProfile::ieee80211a();
  for (auto r : phy.rates_bps) CHECK(can_decode(radio, 0.0, r, phy));
}

TEST_CASE("received power exactly at the threshold decodes") {
  RadioConfig radio;  // 39 dBm + 2*15 dB gains = 69 dBm budget
  const auto phy = PhyProfile::ieee80211a();
  const double loss_exact = 69.0 - phy.rx_sensitivity_dbm.at(54'000'000);
  CHECK(can_decode(radio, loss_exact, 54'000'000, phy));
  CHECK_FALSE(can_decode(radio, loss_exact + 1.0, 54'000'000, phy));
}

TEST_CASE("1 dB below the top-rate threshold still decodes the bottom rate") {
  RadioConfig radio;
  const auto phy = PhyProfile::ieee80211a();
  const double loss = 69.0 - phy.rx_sensitivity_dbm.at(54'000'000) + 1.0;
  CHECK_FALSE(can_decode(radio, loss, 54'000'000, phy));
  CHECK(can_decode(radio, loss, 6'000'000, phy));
  CHECK(best_rate_bps(radio, loss, phy) < 54'000'000);
  CHECK(best_rate_bps(radio, loss, phy) >= 6'000'000);
}

TEST_CASE("unknown rate is a hard error") {
  RadioConfig radio;
  const auto phy = PhyProfile::ieee80211b();
  CHECK_THROWS_AS(can_decode(radio, 0, 54'000'000, phy), std::logic_error);
  CHECK_THROWS_AS(transmit_duration_us(100, 7'000'000, phy), std::logic_error);
}

TEST_CASE("802.11b long-preamble duration for a 228-byte MAC frame at 11 Mb/s") {
  const auto phy = PhyProfile::ieee80211b();
  CHECK(transmit_duration_us(228, 11'000'000, phy) == 192 + 166);  // = 358 us
}

TEST_CASE("the A profile at max rate always beats the B profile at max rate") {
  const auto a = PhyProfile::ieee80211a();
  const auto b = PhyProfile::ieee80211b();
  for (std::int64_t bytes : {40, 228, 580, 1500}) {
    CHECK(transmit_duration_us(bytes, a.rates_bps.back(), a) <
          transmit_duration_us(bytes, b.rates_bps.back(), b));
  }
}

TEST_CASE("doubling the frame size leaves the preamble term unchanged") {
  const auto phy = PhyProfile::ieee80211b();
  const SimTime d1 = transmit_duration_us(400, 11'000'000, phy);
  const SimTime d2 = transmit_duration_us(800, 11'000'000, phy);
  const SimTime payload1 = d1 - phy.preamble_plus_plcp_us;
  CHECK(d2 - phy.preamble_plus_plcp_us >= 2 * payload1 - 1);
  CHECK(d2 - phy.preamble_plus_plcp_us <= 2 * payload1 + 1);
}

TEST_CASE("control responses use the highest basic rate not above the data rate") {
  const auto a = PhyProfile::ieee80211a();
  CHECK(ack_rate_bps(a, 54'000'000) == 24'000'000);
  CHECK(ack_rate_bps(a, 9'000'000) == 6'000'000);
  const auto b = PhyProfile::ieee80211b();
  CHECK(ack_rate_bps(b, 11'000'000) == 2'000'000);
  CHECK(ack_rate_bps(b, 1'000'000) == 1'000'000);
  CHECK(ack_duration_us(b, 11'000'000) == 192 + 56);
}
