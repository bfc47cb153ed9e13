#pragma once

#include <map>
#include <string>
#include <vector>

#include "wlansim/engine.hpp"

namespace wlansim {

struct MetricPoint {
  double t_seconds = 0;
  double value = 0;
};

/// Named time series; one CSV file per series on export.
struct MetricSeries {
  std::string name;
  std::string unit;
  std::vector<MetricPoint> points;
};

struct MetricScalar {
  std::string name;   // e.g. "mac.retx_ack_timeout"
  std::string scope;  // e.g. "node5", "total", "ftp1"
  std::string value;  // preformatted (numbers or verdict labels)
  std::string unit;
};

class MetricsRegistry {
 public:
  void add_scalar(std::string name, std::string scope, double value, std::string unit);
  void add_scalar_text(std::string name, std::string scope, std::string value, std::string unit);
  void add_series(MetricSeries series);

  const std::vector<MetricScalar>& scalars() const { return scalars_; }
  const std::map<std::string, MetricSeries>& series() const { return series_; }
  bool has_series(const std::string& name) const { return series_.contains(name); }

 private:
  std::vector<MetricScalar> scalars_;
  std::map<std::string, MetricSeries> series_;
};

/// Shortest round-trip decimal representation (std::to_chars).
std::string format_number(double v);

/// Cumulative count-over-time series from event timestamps, sampled per
/// second through the horizon.
MetricSeries cumulative_series(std::string name, std::string unit,
                               const std::vector<SimTime>& event_times, SimTime horizon);

/// Per-second mean of (t, value) samples; empty buckets are omitted.
MetricSeries bucket_mean_series(std::string name, std::string unit,
                                const std::vector<std::pair<SimTime, double>>& samples,
                                SimTime horizon);

}  // namespace wlansim
