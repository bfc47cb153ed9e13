#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "wlansim/engine.hpp"

using namespace wlansim;

TEST_CASE("schedule at the current time fires first and in order") {
  Simulator sim;
  std::vector<int> order;
  sim.schedule(0, "b", [&] { order.push_back(2); });
  sim.schedule(0, "a", [&] { order.push_back(3); });
  auto rs = sim.run_until(10);
  CHECK(rs.events_fired == 2);
  CHECK(order == std::vector<int>{2, 3});  // FIFO among equal timestamps
}

TEST_CASE("equal fire_at delivered in insertion order") {
  Simulator sim;
  std::vector<char> order;
  sim.schedule(5000, "A", [&] { order.push_back('A'); });
  sim.schedule(5000, "B", [&] { order.push_back('B'); });
  sim.run_until(kSecond);
  CHECK(order == std::vector<char>{'A', 'B'});
}

TEST_CASE("cancel removes a pending event and shrinks the queue") {
  Simulator sim;
  bool fired = false;
  auto id = sim.schedule(100, "x", [&] { fired = true; });
  sim.schedule(200, "y", [] {});
  CHECK(sim.pending() == 2);
  CHECK(sim.cancel(id));
  CHECK(sim.pending() == 1);
  CHECK_FALSE(sim.cancel(id));  // already gone
  sim.run_until(kSecond);
  CHECK_FALSE(fired);
}

TEST_CASE("run_until on an empty queue advances the clock") {
  Simulator sim;
  auto rs = sim.run_until(134 * kSecond);
  CHECK(rs.events_fired == 0);
  CHECK(rs.final_clock == 134 * kSecond);
  CHECK(sim.now() == 134 * kSecond);
}

TEST_CASE("run_until executes only events at or before the horizon") {
  Simulator sim;
  int fired = 0;
  sim.schedule(1 * kSecond, "1", [&] { ++fired; });
  sim.schedule(2 * kSecond, "2", [&] { ++fired; });
  sim.schedule(3 * kSecond, "3", [&] { ++fired; });
  auto rs = sim.run_until(2 * kSecond);
  CHECK(fired == 2);
  CHECK(sim.pending() == 1);
  CHECK(rs.final_clock == 2 * kSecond);
}

TEST_CASE("scheduling in the past is a hard error") {
  Simulator sim;
  sim.schedule(10, "x", [] {});
  sim.run_until(100);
  CHECK_THROWS_AS(sim.schedule(50, "late", [] {}), std::logic_error);
}

TEST_CASE("a throwing handler aborts the run naming the event") {
  Simulator sim;
  sim.schedule(7, "exploder", [] { throw std::runtime_error("boom"); });
  try {
    sim.run_until(kSecond);
    FAIL("expected an exception");
  } catch (const std::runtime_error& e) {
    std::string what = e.what();
    CHECK(what.find("exploder") != std::string::npos);
    CHECK(what.find("t=7") != std::string::npos);
  }
}

TEST_CASE("clock is monotone across handlers") {
  Simulator sim;
  SimTime last = -1;
  for (int i = 0; i < 200; ++i) {
    sim.schedule((i * 37) % 1000, "e", [&, t = (i * 37) % 1000] {
      CHECK(sim.now() >= last);
      last = sim.now();
      CHECK(sim.now() == t);
    });
  }
  sim.run_until(kSecond);
  CHECK(sim.pending() == 0);
}

TEST_CASE("degenerate uniform range returns the single value") {
  Simulator sim(1);
  CHECK(sim.stream("s").uniform_int(7, 7) == 7);
}

TEST_CASE("uniform_int rejects lo > hi") {
  Simulator sim(1);
  CHECK_THROWS_AS(sim.stream("s").uniform_int(3, 2), std::logic_error);
}

TEST_CASE("uniform draws over [0,31] have the right mean") {
  Simulator sim(42);
  auto& s = sim.stream("mean-check");
  double sum = 0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) sum += static_cast<double>(s.uniform_int(0, 31));
  const double mean = sum / n;
  CHECK(mean > 15.3);
  CHECK(mean < 15.7);
}

TEST_CASE("identical (seed, stream) pairs replay identical draws") {
  Simulator a(1234), b(1234);
  auto& sa = a.stream("mac.backoff.node3");
  auto& sb = b.stream("mac.backoff.node3");
  for (int i = 0; i < 100; ++i) CHECK(sa.uniform_int(0, 1023) == sb.uniform_int(0, 1023));
}

TEST_CASE("different stream names draw independently") {
  Simulator sim(7);
  auto& s1 = sim.stream("one");
  auto& s2 = sim.stream("two");
  bool any_diff = false;
  for (int i = 0; i < 32 && !any_diff; ++i)
    any_diff = s1.uniform_int(0, 1 << 30) != s2.uniform_int(0, 1 << 30);
  CHECK(any_diff);
}

TEST_CASE("uniform_real stays in [0,1)") {
  Simulator sim(9);
  auto& s = sim.stream("real");
  for (int i = 0; i < 1000; ++i) {
    const double v = s.uniform_real();
    CHECK(v >= 0.0);
    CHECK(v < 1.0);
  }
}
