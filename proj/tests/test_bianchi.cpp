#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "wlansim/bianchi.hpp"

using namespace wlansim;

// Expected values were computed with an independent high-precision
// fixed-point script over the same W=32, m=5, slot 20 us, SIFS 10 us,
// DIFS 50 us, 192 us long preamble, 1028-byte data frame at 11 Mb/s and a
// 14-byte ACK at 2 Mb/s, before this module was written.

TEST_CASE("single station never collides and tau = 2/(W+1)") {
  const auto phy = PhyProfile::ieee80211b();
  const auto sol = bianchi_saturation(1, phy, 1000);
  CHECK(sol.p == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(sol.tau == doctest::Approx(2.0 / 33.0).epsilon(1e-9));  // W = cw_min+1 = 32
  CHECK(sol.s == doctest::Approx(0.466798926362).epsilon(1e-9));
}

TEST_CASE("frozen fixed-point solutions for the B profile, 1000-byte payload") {
  const auto phy = PhyProfile::ieee80211b();

  const auto s2 = bianchi_saturation(2, phy, 1000);
  CHECK(s2.tau == doctest::Approx(0.0570443207198).epsilon(1e-9));
  CHECK(s2.p == doctest::Approx(0.0570443207198).epsilon(1e-9));
  CHECK(s2.s == doctest::Approx(0.503914098999).epsilon(1e-9));

  const auto s5 = bianchi_saturation(5, phy, 1000);
  CHECK(s5.tau == doctest::Approx(0.047846439201).epsilon(1e-9));
  CHECK(s5.p == doctest::Approx(0.178082961447).epsilon(1e-9));
  CHECK(s5.s == doctest::Approx(0.507792603045).epsilon(1e-9));

  const auto s10 = bianchi_saturation(10, phy, 1000);
  CHECK(s10.tau == doctest::Approx(0.0373050799546).epsilon(1e-9));
  CHECK(s10.s == doctest::Approx(0.48765958034).epsilon(1e-9));
}

TEST_CASE("throughput is a proper fraction and p grows with n") {
  const auto phy = PhyProfile::ieee80211b();
  double prev_p = -1;
  for (int n : {1, 2, 3, 5, 8, 10, 20, 50}) {
    const auto sol = bianchi_saturation(n, phy, 1000);
    CHECK(sol.s > 0.0);
    CHECK(sol.s < 1.0);
    CHECK(sol.p > prev_p);
    prev_p = sol.p;
  }
}

TEST_CASE("invalid inputs are hard errors") {
  const auto phy = PhyProfile::ieee80211b();
  CHECK_THROWS_AS(bianchi_saturation(0, phy, 1000), std::logic_error);
  CHECK_THROWS_AS(bianchi_saturation(5, phy, 0), std::logic_error);
}
