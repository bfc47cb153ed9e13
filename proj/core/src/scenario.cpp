#include "wlansim/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

namespace wlansim {

const NodeDecl* ScenarioConfig::find_node(NodeId id) const {
  for (const auto& n : nodes) {
    if (n.id == id) return &n;
  }
  return nullptr;
}

PhyProfile ScenarioConfig::phy_profile(PhyStandard s) const {
  PhyProfile p = PhyProfile::make(s);
  const PhyOverrides& o = s == PhyStandard::A ? phy_a : phy_b;
  if (o.slot_us) p.slot_us = *o.slot_us;
  if (o.sifs_us) p.sifs_us = *o.sifs_us;
  if (o.preamble_us) p.preamble_plus_plcp_us = *o.preamble_us;
  if (o.cw_min) p.cw_min = *o.cw_min;
  if (o.cw_max) p.cw_max = *o.cw_max;
  return p;
}

std::vector<std::pair<NodeId, NodeId>> ScenarioConfig::all_links() const {
  std::vector<std::pair<NodeId, NodeId>> links;
  for (const auto& s : subnets) {
    if (s.wired) {
      for (auto l : s.links) links.push_back(l);
    } else {
      for (std::size_t i = 0; i < s.members.size(); ++i)
        for (std::size_t j = i + 1; j < s.members.size(); ++j)
          links.emplace_back(s.members[i], s.members[j]);
    }
  }
  return links;
}

namespace {

// ---- exact decimal <-> microseconds helpers ----------------------------

std::string format_seconds(SimTime us) {
  std::ostringstream oss;
  if (us < 0) {
    oss << '-';
    us = -us;
  }
  oss << us / kSecond;
  SimTime frac = us % kSecond;
  if (frac != 0) {
    char buf[8];
    std::snprintf(buf, sizeof buf, "%06lld", static_cast<long long>(frac));
    std::string digits(buf);
    while (digits.back() == '0') digits.pop_back();
    oss << '.' << digits;
  }
  return oss.str();
}

bool parse_seconds(const std::string& text, SimTime& out) {
  std::string t = text;
  bool neg = false;
  if (!t.empty() && t[0] == '-') {
    neg = true;
    t.erase(0, 1);
  }
  const auto dot = t.find('.');
  std::string whole = dot == std::string::npos ? t : t.substr(0, dot);
  std::string frac = dot == std::string::npos ? "" : t.substr(dot + 1);
  if (whole.empty() && frac.empty()) return false;
  if (whole.empty()) whole = "0";
  if (frac.size() > 6) return false;  // sub-microsecond resolution unsupported
  while (frac.size() < 6) frac.push_back('0');
  SimTime w = 0, f = 0;
  auto [pw, ecw] = std::from_chars(whole.data(), whole.data() + whole.size(), w);
  if (ecw != std::errc() || pw != whole.data() + whole.size()) return false;
  auto [pf, ecf] = std::from_chars(frac.data(), frac.data() + frac.size(), f);
  if (ecf != std::errc() || pf != frac.data() + frac.size()) return false;
  out = w * kSecond + f;
  if (neg) out = -out;
  return true;
}

std::string format_double(double v) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, p);
}

// ---- parser --------------------------------------------------------------

struct RawSection {
  std::string name;
  int line = 0;
  std::vector<std::tuple<int, std::string, std::string>> entries;  // line, key, value
};

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!trim(cur).empty() || !out.empty()) out.push_back(trim(cur));
  while (!out.empty() && out.back().empty()) out.pop_back();
  return out;
}

class SectionReader {
 public:
  SectionReader(const RawSection& sec, std::vector<ValidationError>& errors)
      : sec_(sec), errors_(errors) {}

  std::optional<std::string> raw(const std::string& key) {
    for (const auto& [line, k, v] : sec_.entries) {
      if (k == key) return v;
    }
    return std::nullopt;
  }

  int line_of(const std::string& key) const {
    for (const auto& [line, k, v] : sec_.entries) {
      if (k == key) return line;
    }
    return sec_.line;
  }

  template <typename T>
  bool integer(const std::string& key, T& out, bool required) {
    auto v = raw(key);
    if (!v) {
      if (required) missing(key);
      return false;
    }
    long long parsed = 0;
    auto [p, ec] = std::from_chars(v->data(), v->data() + v->size(), parsed);
    if (ec != std::errc() || p != v->data() + v->size()) {
      fail(key, "not an integer");
      return false;
    }
    out = static_cast<T>(parsed);
    return true;
  }

  bool number(const std::string& key, double& out, bool required) {
    auto v = raw(key);
    if (!v) {
      if (required) missing(key);
      return false;
    }
    char* end = nullptr;
    out = std::strtod(v->c_str(), &end);
    if (end != v->c_str() + v->size()) {
      fail(key, "not a number");
      return false;
    }
    return true;
  }

  bool seconds(const std::string& key, SimTime& out, bool required) {
    auto v = raw(key);
    if (!v) {
      if (required) missing(key);
      return false;
    }
    if (!parse_seconds(*v, out)) {
      fail(key, "not a time in seconds");
      return false;
    }
    return true;
  }

  bool text(const std::string& key, std::string& out, bool required) {
    auto v = raw(key);
    if (!v) {
      if (required) missing(key);
      return false;
    }
    out = *v;
    return true;
  }

  /// "a-b, c-d" interval list in seconds.
  bool spans(const std::string& key, std::vector<std::pair<SimTime, SimTime>>& out,
             bool required) {
    auto v = raw(key);
    if (!v) {
      if (required) missing(key);
      return false;
    }
    for (const auto& item : split(*v, ',')) {
      auto dash = item.find('-', 1);
      SimTime a = 0, b = 0;
      if (dash == std::string::npos || !parse_seconds(trim(item.substr(0, dash)), a) ||
          !parse_seconds(trim(item.substr(dash + 1)), b) || b <= a) {
        fail(key, "bad interval '" + item + "'");
        return false;
      }
      out.emplace_back(a, b);
    }
    return true;
  }

  void missing(const std::string& key) {
    errors_.push_back({sec_.line, "[" + sec_.name + "]: missing key '" + key + "'"});
  }
  void fail(const std::string& key, const std::string& why) {
    errors_.push_back({line_of(key), "[" + sec_.name + "] " + key + ": " + why});
  }

 private:
  const RawSection& sec_;
  std::vector<ValidationError>& errors_;
};

void validate(ScenarioConfig& cfg, std::vector<ValidationError>& errors) {
  if (cfg.nodes.empty()) {
    errors.push_back({0, "no nodes declared"});
    return;
  }
  std::set<NodeId> node_ids;
  for (const auto& n : cfg.nodes) {
    if (!node_ids.insert(n.id).second)
      errors.push_back({0, "duplicate node id " + std::to_string(n.id)});
  }
  std::set<int> channel_ids;
  for (const auto& c : cfg.channels) {
    if (!channel_ids.insert(c.index).second)
      errors.push_back({0, "duplicate channel index " + std::to_string(c.index)});
  }
  auto known_node = [&](NodeId id) { return node_ids.contains(id); };

  for (const auto& s : cfg.subnets) {
    const std::string tag = "subnet " + std::to_string(s.id);
    for (NodeId m : s.members) {
      if (!known_node(m))
        errors.push_back({0, tag + ": unknown member node " + std::to_string(m)});
    }
    if (!channel_ids.contains(s.channel))
      errors.push_back({0, tag + ": undeclared channel " + std::to_string(s.channel)});
    for (const std::string& mask : {s.listening, s.listenable}) {
      if (mask.size() != 4 || mask.find_first_not_of("01") != std::string::npos) {
        errors.push_back({0, tag + ": mask '" + mask + "' must be four binary digits"});
        continue;
      }
      for (int c = 0; c < 4; ++c) {
        if (mask[c] == '1' && !channel_ids.contains(c))
          errors.push_back(
              {0, tag + ": mask '" + mask + "' selects undeclared channel " + std::to_string(c)});
      }
    }
    if (s.listening.size() == 4 && s.channel >= 0 && s.channel < 4 &&
        s.listening[s.channel] != '1')
      errors.push_back({0, tag + ": listening mask does not select its own channel"});
    for (auto [a, b] : s.links) {
      if (!known_node(a) || !known_node(b))
        errors.push_back({0, tag + ": link references unknown node"});
    }
  }

  std::set<std::string> flow_ids;
  auto check_flow = [&](const std::string& id, std::initializer_list<NodeId> ends) {
    if (id.empty()) {
      errors.push_back({0, "flow with empty id"});
    } else if (!flow_ids.insert(id).second) {
      errors.push_back({0, "overlapping flow id '" + id + "'"});
    }
    for (NodeId e : ends) {
      if (!known_node(e))
        errors.push_back({0, "flow '" + id + "': unknown node " + std::to_string(e)});
    }
  };
  for (const auto& f : cfg.voip_flows) {
    check_flow(f.id, {f.caller, f.callee});
    if (f.invite_at >= f.bye_at)
      errors.push_back({0, "flow '" + f.id + "': invite_s must precede bye_s"});
  }
  for (const auto& f : cfg.ftp_flows) check_flow(f.id, {f.client, f.server});
  for (const auto& f : cfg.cbr_flows) {
    check_flow(f.id, {f.src, f.dst});
    if (f.start_at >= f.stop_at)
      errors.push_back({0, "flow '" + f.id + "': start_s must precede stop_s"});
  }

  for (const auto& m : cfg.mobility) {
    if (!known_node(m.node))
      errors.push_back({0, "mobility: unknown node " + std::to_string(m.node)});
    if (m.waypoints.empty())
      errors.push_back({0, "mobility node " + std::to_string(m.node) + ": no waypoints"});
    for (const auto& wp : m.waypoints) {
      if (wp.speed_mps <= 0)
        errors.push_back(
            {0, "mobility node " + std::to_string(m.node) + ": non-positive speed"});
    }
  }
}

}  // namespace

LoadResult load_scenario_text(const std::string& text) {
  std::vector<ValidationError> errors;
  std::vector<RawSection> sections;

  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    if (t.front() == '[') {
      if (t.back() != ']') {
        errors.push_back({line_no, "malformed section header: " + t});
        continue;
      }
      sections.push_back(RawSection{t.substr(1, t.size() - 2), line_no, {}});
      continue;
    }
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      errors.push_back({line_no, "expected key = value: " + t});
      continue;
    }
    if (sections.empty()) {
      errors.push_back({line_no, "key outside any section"});
      continue;
    }
    sections.back().entries.emplace_back(line_no, trim(t.substr(0, eq)), trim(t.substr(eq + 1)));
  }

  ScenarioConfig cfg;

  for (const auto& sec : sections) {
    SectionReader r(sec, errors);
    if (sec.name == "general") {
      r.seconds("duration_s", cfg.duration, false);
      r.integer("seed", cfg.seed, false);
      std::string phy;
      if (r.text("phy", phy, false)) {
        if (phy == "a") {
          cfg.phy_standard = PhyStandard::A;
        } else if (phy == "b") {
          cfg.phy_standard = PhyStandard::B;
        } else {
          r.fail("phy", "must be 'a' or 'b'");
        }
      }
      std::int64_t cap = 0;
      if (r.integer("queue_capacity", cap, false)) cfg.queue_capacity = cap;
      r.integer("mac_retry_limit", cfg.mac_retry_limit, false);
      r.seconds("mobility_reeval_s", cfg.mobility_reeval, false);
    } else if (sec.name == "radio") {
      r.number("tx_power_dbm", cfg.radio.tx_power_dbm, false);
      r.number("antenna_gain_db", cfg.radio.antenna_gain_db, false);
      r.number("antenna_height_m", cfg.radio.antenna_height_m, false);
      r.number("noise_floor_dbm", cfg.radio.noise_floor_dbm, false);
    } else if (sec.name == "wired") {
      r.integer("latency_us", cfg.wired_latency, false);
      std::int64_t mbps = 0;
      if (r.integer("rate_mbps", mbps, false)) cfg.wired_rate_bps = mbps * 1'000'000;
      r.number("loss_probability", cfg.wired_loss_probability, false);
    } else if (sec.name == "sip") {
      r.integer("proxy_node", cfg.proxy_node, false);
      r.integer("request_bytes", cfg.sip_request_bytes, false);
      r.integer("response_bytes", cfg.sip_response_bytes, false);
      std::int64_t ms = 0;
      if (r.integer("retransmit_ms", ms, false)) cfg.sip_rtx_interval = ms * kMillisecond;
      r.integer("max_attempts", cfg.sip_max_attempts, false);
      r.seconds("ring_delay_s", cfg.ring_delay, false);
    } else if (sec.name == "jitter") {
      std::int64_t ms = 0;
      if (r.integer("playout_ms", ms, false)) cfg.playout_delay = ms * kMillisecond;
      if (r.integer("capacity_ms", ms, false)) cfg.jitter_capacity = ms * kMillisecond;
    } else if (sec.name == "phy.a" || sec.name == "phy.b") {
      PhyOverrides& o = sec.name == "phy.a" ? cfg.phy_a : cfg.phy_b;
      SimTime t = 0;
      int i = 0;
      if (r.integer("slot_us", t, false)) o.slot_us = t;
      if (r.integer("sifs_us", t, false)) o.sifs_us = t;
      if (r.integer("preamble_us", t, false)) o.preamble_us = t;
      if (r.integer("cw_min", i, false)) o.cw_min = i;
      if (r.integer("cw_max", i, false)) o.cw_max = i;
    } else if (sec.name == "channel") {
      ChannelDecl c;
      r.integer("index", c.index, true);
      r.number("frequency_ghz", c.frequency_ghz, true);
      cfg.channels.push_back(c);
    } else if (sec.name == "node") {
      NodeDecl n;
      r.integer("id", n.id, true);
      r.number("x", n.x, true);
      r.number("y", n.y, true);
      r.number("antenna_height_m", n.antenna_height_m, false);
      cfg.nodes.push_back(n);
    } else if (sec.name == "subnet") {
      SubnetDecl s;
      r.integer("id", s.id, true);
      std::string kind = "wlan";
      r.text("kind", kind, false);
      s.wired = kind == "wired";
      r.integer("channel", s.channel, true);
      r.text("listening", s.listening, true);
      r.text("listenable", s.listenable, true);
      std::string members;
      if (r.text("members", members, true)) {
        for (const auto& m : split(members, ',')) {
          NodeId id = kNoNode;
          auto [p, ec] = std::from_chars(m.data(), m.data() + m.size(), id);
          if (ec != std::errc() || p != m.data() + m.size()) {
            r.fail("members", "bad node id '" + m + "'");
          } else {
            s.members.push_back(id);
          }
        }
      }
      std::string links;
      if (r.text("links", links, false)) {
        for (const auto& l : split(links, ',')) {
          auto dash = l.find('-');
          NodeId a = kNoNode, b = kNoNode;
          bool ok = dash != std::string::npos;
          if (ok) {
            std::string sa = trim(l.substr(0, dash)), sb = trim(l.substr(dash + 1));
            auto [pa, ea] = std::from_chars(sa.data(), sa.data() + sa.size(), a);
            auto [pb, eb] = std::from_chars(sb.data(), sb.data() + sb.size(), b);
            ok = ea == std::errc() && eb == std::errc() && pa == sa.data() + sa.size() &&
                 pb == sb.data() + sb.size();
          }
          if (!ok) {
            r.fail("links", "bad link '" + l + "'");
          } else {
            s.links.emplace_back(a, b);
          }
        }
      }
      cfg.subnets.push_back(std::move(s));
    } else if (sec.name == "mobility") {
      MobilityDecl m;
      r.integer("node", m.node, true);
      r.seconds("start_s", m.start_time, false);
      std::string wps;
      if (r.text("waypoints", wps, true)) {
        for (const auto& w : split(wps, ',')) {
          auto parts = split(w, ':');
          Waypoint wp;
          bool ok = parts.size() == 3;
          if (ok) {
            char* end = nullptr;
            wp.pos.x = std::strtod(parts[0].c_str(), &end);
            ok = end == parts[0].c_str() + parts[0].size();
            wp.pos.y = std::strtod(parts[1].c_str(), &end);
            ok = ok && end == parts[1].c_str() + parts[1].size();
            wp.speed_mps = std::strtod(parts[2].c_str(), &end);
            ok = ok && end == parts[2].c_str() + parts[2].size();
          }
          if (!ok) {
            r.fail("waypoints", "bad waypoint '" + w + "' (want x:y:speed)");
          } else {
            m.waypoints.push_back(wp);
          }
        }
      }
      cfg.mobility.push_back(std::move(m));
    } else if (sec.name == "flow.voip") {
      VoipFlowDecl f;
      r.text("id", f.id, true);
      r.integer("caller", f.caller, true);
      r.integer("callee", f.callee, true);
      r.seconds("invite_s", f.invite_at, true);
      r.seconds("bye_s", f.bye_at, true);
      r.spans("caller_spurts", f.caller_spurts, true);
      r.spans("callee_spurts", f.callee_spurts, true);
      cfg.voip_flows.push_back(std::move(f));
    } else if (sec.name == "flow.ftp") {
      FtpFlowDecl f;
      r.text("id", f.id, true);
      r.integer("client", f.client, true);
      r.integer("server", f.server, true);
      r.seconds("start_s", f.start_at, true);
      std::int64_t mb = 0;
      if (r.integer("item_mb", mb, false)) f.item_bytes = mb * 1024 * 1024;
      r.integer("item_bytes", f.item_bytes, false);
      r.integer("window", f.window, false);
      r.integer("chunk_bytes", f.chunk_bytes, false);
      std::int64_t ms = 0;
      if (r.integer("timeout_ms", ms, false)) f.retransmit_timeout = ms * kMillisecond;
      cfg.ftp_flows.push_back(std::move(f));
    } else if (sec.name == "flow.cbr") {
      CbrFlowDecl f;
      r.text("id", f.id, true);
      r.integer("src", f.src, true);
      r.integer("dst", f.dst, true);
      r.integer("payload_bytes", f.payload_bytes, false);
      std::int64_t ms = 0;
      if (r.integer("interval_ms", ms, false)) f.interval = ms * kMillisecond;
      r.seconds("start_s", f.start_at, true);
      r.seconds("stop_s", f.stop_at, true);
      cfg.cbr_flows.push_back(std::move(f));
    } else {
      errors.push_back({sec.line, "unknown section [" + sec.name + "]"});
    }
  }

  validate(cfg, errors);

  LoadResult result;
  result.errors = std::move(errors);
  if (result.errors.empty()) result.config = std::move(cfg);
  return result;
}

LoadResult load_scenario_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    return LoadResult{std::nullopt, {{0, "cannot open scenario file: " + path}}};
  }
  std::ostringstream oss;
  oss << in.rdbuf();
  return load_scenario_text(oss.str());
}

std::string emit_scenario(const ScenarioConfig& cfg) {
  std::ostringstream o;
  o << "[general]\n";
  o << "duration_s = " << format_seconds(cfg.duration) << "\n";
  o << "seed = " << cfg.seed << "\n";
  o << "phy = " << (cfg.phy_standard == PhyStandard::A ? "a" : "b") << "\n";
  o << "queue_capacity = " << cfg.queue_capacity << "\n";
  o << "mac_retry_limit = " << cfg.mac_retry_limit << "\n";
  o << "mobility_reeval_s = " << format_seconds(cfg.mobility_reeval) << "\n";
  o << "\n[radio]\n";
  o << "tx_power_dbm = " << format_double(cfg.radio.tx_power_dbm) << "\n";
  o << "antenna_gain_db = " << format_double(cfg.radio.antenna_gain_db) << "\n";
  o << "antenna_height_m = " << format_double(cfg.radio.antenna_height_m) << "\n";
  o << "noise_floor_dbm = " << format_double(cfg.radio.noise_floor_dbm) << "\n";
  o << "\n[wired]\n";
  o << "latency_us = " << cfg.wired_latency << "\n";
  o << "rate_mbps = " << cfg.wired_rate_bps / 1'000'000 << "\n";
  o << "loss_probability = " << format_double(cfg.wired_loss_probability) << "\n";
  o << "\n[sip]\n";
  o << "proxy_node = " << cfg.proxy_node << "\n";
  o << "request_bytes = " << cfg.sip_request_bytes << "\n";
  o << "response_bytes = " << cfg.sip_response_bytes << "\n";
  o << "retransmit_ms = " << cfg.sip_rtx_interval / kMillisecond << "\n";
  o << "max_attempts = " << cfg.sip_max_attempts << "\n";
  o << "ring_delay_s = " << format_seconds(cfg.ring_delay) << "\n";
  o << "\n[jitter]\n";
  o << "playout_ms = " << cfg.playout_delay / kMillisecond << "\n";
  o << "capacity_ms = " << cfg.jitter_capacity / kMillisecond << "\n";
  auto emit_phy = [&o](const char* name, const PhyOverrides& p) {
    if (!p.slot_us && !p.sifs_us && !p.preamble_us && !p.cw_min && !p.cw_max) return;
    o << "\n[" << name << "]\n";
    if (p.slot_us) o << "slot_us = " << *p.slot_us << "\n";
    if (p.sifs_us) o << "sifs_us = " << *p.sifs_us << "\n";
    if (p.preamble_us) o << "preamble_us = " << *p.preamble_us << "\n";
    if (p.cw_min) o << "cw_min = " << *p.cw_min << "\n";
    if (p.cw_max) o << "cw_max = " << *p.cw_max << "\n";
  };
  emit_phy("phy.a", cfg.phy_a);
  emit_phy("phy.b", cfg.phy_b);
  for (const auto& c : cfg.channels) {
    o << "\n[channel]\n";
    o << "index = " << c.index << "\n";
    o << "frequency_ghz = " << format_double(c.frequency_ghz) << "\n";
  }
  for (const auto& n : cfg.nodes) {
    o << "\n[node]\n";
    o << "id = " << n.id << "\n";
    o << "x = " << format_double(n.x) << "\n";
    o << "y = " << format_double(n.y) << "\n";
    if (n.antenna_height_m != 1.5)
      o << "antenna_height_m = " << format_double(n.antenna_height_m) << "\n";
  }
  for (const auto& s : cfg.subnets) {
    o << "\n[subnet]\n";
    o << "id = " << s.id << "\n";
    o << "kind = " << (s.wired ? "wired" : "wlan") << "\n";
    o << "channel = " << s.channel << "\n";
    o << "listening = " << s.listening << "\n";
    o << "listenable = " << s.listenable << "\n";
    o << "members = ";
    for (std::size_t i = 0; i < s.members.size(); ++i)
      o << (i ? "," : "") << s.members[i];
    o << "\n";
    if (!s.links.empty()) {
      o << "links = ";
      for (std::size_t i = 0; i < s.links.size(); ++i)
        o << (i ? "," : "") << s.links[i].first << "-" << s.links[i].second;
      o << "\n";
    }
  }
  for (const auto& m : cfg.mobility) {
    o << "\n[mobility]\n";
    o << "node = " << m.node << "\n";
    o << "start_s = " << format_seconds(m.start_time) << "\n";
    o << "waypoints = ";
    for (std::size_t i = 0; i < m.waypoints.size(); ++i) {
      const auto& wp = m.waypoints[i];
      o << (i ? ", " : "") << format_double(wp.pos.x) << ":" << format_double(wp.pos.y) << ":"
        << format_double(wp.speed_mps);
    }
    o << "\n";
  }
  auto emit_spans = [&o](const char* key, const std::vector<std::pair<SimTime, SimTime>>& v) {
    o << key << " = ";
    for (std::size_t i = 0; i < v.size(); ++i)
      o << (i ? ", " : "") << format_seconds(v[i].first) << "-" << format_seconds(v[i].second);
    o << "\n";
  };
  for (const auto& f : cfg.voip_flows) {
    o << "\n[flow.voip]\n";
    o << "id = " << f.id << "\n";
    o << "caller = " << f.caller << "\n";
    o << "callee = " << f.callee << "\n";
    o << "invite_s = " << format_seconds(f.invite_at) << "\n";
    o << "bye_s = " << format_seconds(f.bye_at) << "\n";
    emit_spans("caller_spurts", f.caller_spurts);
    emit_spans("callee_spurts", f.callee_spurts);
  }
  for (const auto& f : cfg.ftp_flows) {
    o << "\n[flow.ftp]\n";
    o << "id = " << f.id << "\n";
    o << "client = " << f.client << "\n";
    o << "server = " << f.server << "\n";
    o << "start_s = " << format_seconds(f.start_at) << "\n";
    o << "item_bytes = " << f.item_bytes << "\n";
    o << "window = " << f.window << "\n";
    o << "chunk_bytes = " << f.chunk_bytes << "\n";
    o << "timeout_ms = " << f.retransmit_timeout / kMillisecond << "\n";
  }
  for (const auto& f : cfg.cbr_flows) {
    o << "\n[flow.cbr]\n";
    o << "id = " << f.id << "\n";
    o << "src = " << f.src << "\n";
    o << "dst = " << f.dst << "\n";
    o << "payload_bytes = " << f.payload_bytes << "\n";
    o << "interval_ms = " << f.interval / kMillisecond << "\n";
    o << "start_s = " << format_seconds(f.start_at) << "\n";
    o << "stop_s = " << format_seconds(f.stop_at) << "\n";
  }
  return o.str();
}

const std::string& paper_scenario_text() {
  static const std::string text = R"scn(# Comparative VoIP-over-SIP study: two WLAN subnets bridged by a wired
# backbone through node 10 (SIP proxy/registrar). Distances keep every
# intra-subnet link within two-ray range; hosts 1, 7 and 8 move on
# waypoint paths.

[general]
duration_s = 134
seed = 42
phy = b
queue_capacity = 50
mobility_reeval_s = 1

[radio]
tx_power_dbm = 39
antenna_gain_db = 15
antenna_height_m = 1.5
noise_floor_dbm = -101

[wired]
latency_us = 10
rate_mbps = 100
loss_probability = 0

[sip]
proxy_node = 10
request_bytes = 500
response_bytes = 300
retransmit_ms = 500
max_attempts = 7
ring_delay_s = 2

[jitter]
playout_ms = 60
capacity_ms = 120

[channel]
index = 1
frequency_ghz = 2.401

[channel]
index = 2
frequency_ghz = 2.403

[channel]
index = 3
frequency_ghz = 2.402

[node]
id = 1
x = -60
y = 40

[node]
id = 2
x = -100
y = -20

[node]
id = 3
x = -80
y = -60

[node]
id = 4
x = -40
y = -20

[node]
id = 5
x = 0
y = 0

[node]
id = 6
x = 300
y = 0

[node]
id = 7
x = 340
y = 50

[node]
id = 8
x = 360
y = -40

[node]
id = 9
x = 260
y = -50

[node]
id = 10
x = 150
y = 0

[subnet]
id = 1
kind = wlan
channel = 1
listening = 0100
listenable = 0100
members = 1,2,3,4,5

[subnet]
id = 2
kind = wlan
channel = 2
listening = 0010
listenable = 0010
members = 6,7,8,9

[subnet]
id = 3
kind = wired
channel = 3
listening = 0001
listenable = 0001
members = 5,10,6
links = 5-10,10-6

[mobility]
node = 1
start_s = 0
waypoints = -60:10:1, -90:10:1, -90:-26:1, -30:-26:10

[mobility]
node = 7
start_s = 0
waypoints = 340:30:0.5

[mobility]
node = 8
start_s = 0
waypoints = 360:-20:0.5, 340:-20:0.5

[flow.voip]
id = voip1
caller = 4
callee = 5
invite_s = 58
bye_s = 133.5
caller_spurts = 70.003-86.003, 90.003-107.003, 110.003-128.003
callee_spurts = 70.517-100.517, 111.017-128.017

[flow.voip]
id = voip2
caller = 3
callee = 7
invite_s = 65
bye_s = 133.5
caller_spurts = 70.007-92.007, 95.007-118.007
callee_spurts = 72.511-94.511, 100.011-118.011

[flow.voip]
id = voip3
caller = 1
callee = 9
invite_s = 78
bye_s = 133.5
caller_spurts = 80.203-100.003, 105.003-123.203
callee_spurts = 82.013-97.013, 110.513-125.513

[flow.voip]
id = voip4
caller = 2
callee = 8
invite_s = 92
bye_s = 133.5
caller_spurts = 94.209-110.009, 115.009-127.209
callee_spurts = 96.019-106.019, 120.019-130.019

[flow.voip]
id = voip5
caller = 5
callee = 7
invite_s = 105
bye_s = 133.5
caller_spurts = 107.213-126.213
callee_spurts = 110.523-116.523

[flow.ftp]
id = ftp1
client = 4
server = 6
start_s = 52
item_bytes = 26214400
window = 16
chunk_bytes = 1460
timeout_ms = 200

[flow.ftp]
id = ftp2
client = 3
server = 8
start_s = 55
item_bytes = 26214400
window = 16
chunk_bytes = 1460
timeout_ms = 200

[flow.cbr]
id = cbr1
src = 1
dst = 9
payload_bytes = 512
interval_ms = 20
start_s = 50
stop_s = 130
)scn";
  return text;
}

ScenarioConfig paper_scenario() {
  LoadResult r = load_scenario_text(paper_scenario_text());
  if (!r.ok()) throw std::logic_error("built-in paper scenario failed to load");
  return *r.config;
}

}  // namespace wlansim
