#include "wlansim/metrics.hpp"

#include <algorithm>
#include <charconv>

namespace wlansim {

void MetricsRegistry::add_scalar(std::string name, std::string scope, double value,
                                 std::string unit) {
  scalars_.push_back({std::move(name), std::move(scope), format_number(value), std::move(unit)});
}

void MetricsRegistry::add_scalar_text(std::string name, std::string scope, std::string value,
                                      std::string unit) {
  scalars_.push_back({std::move(name), std::move(scope), std::move(value), std::move(unit)});
}

void MetricsRegistry::add_series(MetricSeries series) {
  series_[series.name] = std::move(series);
}

std::string format_number(double v) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, p);
}

MetricSeries cumulative_series(std::string name, std::string unit,
                               const std::vector<SimTime>& event_times, SimTime horizon) {
  MetricSeries s{std::move(name), std::move(unit), {}};
  std::vector<SimTime> sorted = event_times;
  std::sort(sorted.begin(), sorted.end());
  const std::int64_t seconds = (horizon + kSecond - 1) / kSecond;
  std::size_t i = 0;
  for (std::int64_t sec = 0; sec <= seconds; ++sec) {
    const SimTime edge = sec * kSecond;
    while (i < sorted.size() && sorted[i] <= edge) ++i;
    s.points.push_back({static_cast<double>(sec), static_cast<double>(i)});
  }
  return s;
}

MetricSeries bucket_mean_series(std::string name, std::string unit,
                                const std::vector<std::pair<SimTime, double>>& samples,
                                SimTime horizon) {
  MetricSeries s{std::move(name), std::move(unit), {}};
  std::map<std::int64_t, std::pair<double, std::int64_t>> acc;  // bucket -> (sum, n)
  for (auto [t, v] : samples) {
    auto& [sum, n] = acc[t / kSecond];
    sum += v;
    ++n;
  }
  for (const auto& [b, sn] : acc) {
    s.points.push_back({static_cast<double>(b), sn.first / static_cast<double>(sn.second)});
  }
  return s;
}

}  // namespace wlansim
