#include "wlansim/packet.hpp"

#include <stdexcept>

namespace wlansim {

std::int64_t header_cost_bytes(HeaderKind k) {
  switch (k) {
    case HeaderKind::Rtp: return kRtpHeaderBytes;
    case HeaderKind::Udp: return kUdpHeaderBytes;
    case HeaderKind::Ip: return kIpHeaderBytes;
  }
  return 0;
}

std::int64_t Packet::wire_bytes() const {
  std::int64_t total = payload_bytes;
  for (HeaderKind h : headers) total += header_cost_bytes(h);
  return total;
}

Packet encapsulate(std::int64_t payload_bytes, bool with_rtp) {
  if (payload_bytes <= 0) throw std::logic_error("encapsulate: payload_bytes <= 0");
  Packet p;
  p.payload_bytes = payload_bytes;
  if (with_rtp) p.headers.push_back(HeaderKind::Rtp);
  p.headers.push_back(HeaderKind::Udp);
  p.headers.push_back(HeaderKind::Ip);
  if (p.wire_bytes() > kMtuBytes)
    throw std::logic_error("encapsulate: packet exceeds 1500-byte MTU");
  return p;
}

}  // namespace wlansim
