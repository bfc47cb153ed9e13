#include "wlansim/sip.hpp"

#include <stdexcept>

namespace wlansim {

const char* to_string(DialogState s) {
  switch (s) {
    case DialogState::Idle: return "Idle";
    case DialogState::Registering: return "Registering";
    case DialogState::Inviting: return "Inviting";
    case DialogState::Ringing: return "Ringing";
    case DialogState::Established: return "Established";
    case DialogState::Terminating: return "Terminating";
    case DialogState::Terminated: return "Terminated";
    case DialogState::Cancelled: return "Cancelled";
  }
  return "?";
}

std::optional<DialogState> dialog_transition(DialogState state, DialogEvent ev, bool answered) {
  using S = DialogState;
  switch (ev) {
    case DialogEvent::SendInvite:
      if (state == S::Idle) return S::Inviting;
      return std::nullopt;
    case DialogEvent::RecvInvite:
      if (state == S::Inviting) return S::Ringing;
      if (state == S::Ringing) return S::Ringing;  // retransmitted INVITE
      return std::nullopt;
    case DialogEvent::Answer200:
      if (state == S::Ringing) return S::Ringing;
      return std::nullopt;
    case DialogEvent::RecvAck:
      if (state == S::Ringing && answered) return S::Established;
      if (state == S::Established) return S::Established;  // re-ACK on duplicate 200
      return std::nullopt;
    case DialogEvent::SendBye:
      if (state == S::Established) return S::Terminating;
      return std::nullopt;
    case DialogEvent::Recv200Bye:
      if (state == S::Terminating) return S::Terminated;
      if (state == S::Terminated) return S::Terminated;
      return std::nullopt;
    case DialogEvent::SendCancel:
      if (state == S::Inviting || state == S::Ringing) return state;
      return std::nullopt;
    case DialogEvent::RecvCancel:
      if (state == S::Inviting || state == S::Ringing)
        return answered ? state : S::Cancelled;  // a sent 200 wins the race
      if (state == S::Cancelled) return S::Cancelled;
      return std::nullopt;
    case DialogEvent::Recv487:
      if (state == S::Inviting || state == S::Ringing || state == S::Cancelled)
        return S::Cancelled;
      return std::nullopt;
  }
  return std::nullopt;
}

SipSystem::SipSystem(Simulator& sim, Config cfg, SendFn send)
    : sim_(sim), cfg_(cfg), send_(std::move(send)) {}

SipDialog& SipSystem::dlg(std::int32_t call_id) {
  auto it = dialogs_.find(call_id);
  if (it == dialogs_.end()) throw std::logic_error("unknown call id");
  return it->second;
}

void SipSystem::apply(SipDialog& d, DialogEvent ev, const char* what) {
  auto next = dialog_transition(d.state, ev, d.answered);
  if (!next) {
    throw std::logic_error(std::string("illegal dialog transition: ") + what + " in state " +
                           to_string(d.state));
  }
  d.state = *next;
}

void SipSystem::transmit(NodeId from, NodeId to, const SipMessage& msg) {
  if (msg.is_request()) {
    ++counters_.messages_sent;
  } else {
    ++counters_.responses_sent;
  }
  send_(from, to, msg);
}

void SipSystem::arm_retransmit(const PendingKey& key) {
  auto& p = pending_.at(key);
  p.timer = sim_.schedule_in(cfg_.rtx_interval, "sip.rtx", [this, key] {
    auto it = pending_.find(key);
    if (it == pending_.end()) return;
    if (it->second.attempts >= cfg_.max_attempts) {
      fail_pending(key);
      return;
    }
    ++it->second.attempts;
    transmit(it->second.from, it->second.to, it->second.msg);
    arm_retransmit(key);
  });
}

void SipSystem::send_request(NodeId from, NodeId to, SipMessage msg) {
  msg.body_bytes = msg.is_request() ? cfg_.request_bytes : cfg_.response_bytes;
  const PendingKey key{msg.call_id, msg.kind};
  pending_[key] = Pending{msg, from, to, 1, std::nullopt};
  transmit(from, to, msg);
  arm_retransmit(key);
}

void SipSystem::send_response(NodeId from, NodeId to, SipMessage request, SipCode code) {
  SipMessage resp;
  resp.kind = SipMethod::Response;
  resp.code = code;
  resp.responding_to = request.kind;
  resp.call_id = request.call_id;
  resp.from_ua = request.to_ua;
  resp.to_ua = request.from_ua;
  resp.via_proxy = request.via_proxy;
  resp.body_bytes = cfg_.response_bytes;
  transmit(from, to, resp);
}

void SipSystem::clear_pending(const PendingKey& key) {
  auto it = pending_.find(key);
  if (it == pending_.end()) return;
  if (it->second.timer) sim_.cancel(*it->second.timer);
  pending_.erase(it);
}

void SipSystem::fail_pending(const PendingKey& key) {
  auto it = pending_.find(key);
  if (it == pending_.end()) return;
  const SipMethod method = key.second;
  const std::int32_t id = key.first;
  pending_.erase(it);
  if (method == SipMethod::Register) {
    ++counters_.registration_failures;
    return;
  }
  ++counters_.dialog_failures;
  auto d = dialogs_.find(id);
  if (d != dialogs_.end()) d->second.failed = true;
}

void SipSystem::schedule_register(NodeId ua_node, SimTime at) {
  sim_.schedule(at, "sip.register", [this, ua_node] {
    SipMessage msg;
    msg.kind = SipMethod::Register;
    msg.call_id = next_register_txn_--;
    msg.from_ua = ua_node;
    msg.to_ua = ua_node;
    msg.contact_node = ua_node;
    send_request(ua_node, cfg_.proxy_node, msg);
  });
}

std::int32_t SipSystem::create_dialog(NodeId caller, NodeId callee) {
  const std::int32_t id = next_call_id_++;
  SipDialog d;
  d.call_id = id;
  d.initiator = caller;
  d.receiver = callee;
  dialogs_[id] = d;
  return id;
}

void SipSystem::schedule_invite(std::int32_t call_id, SimTime at) {
  sim_.schedule(at, "sip.invite", [this, call_id] { invite_now(call_id); });
}

void SipSystem::schedule_bye(std::int32_t call_id, SimTime at) {
  sim_.schedule(at, "sip.bye", [this, call_id] {
    // A dialog that never established has nothing to tear down.
    if (dlg(call_id).state == DialogState::Established) bye_now(call_id);
  });
}

void SipSystem::invite_now(std::int32_t call_id) {
  SipDialog& d = dlg(call_id);
  apply(d, DialogEvent::SendInvite, "INVITE");
  d.timeline.invite_sent_at = sim_.now();
  SipMessage msg;
  msg.kind = SipMethod::Invite;
  msg.call_id = call_id;
  msg.from_ua = d.initiator;
  msg.to_ua = d.receiver;
  send_request(d.initiator, cfg_.proxy_node, msg);
}

void SipSystem::bye_now(std::int32_t call_id) {
  SipDialog& d = dlg(call_id);
  apply(d, DialogEvent::SendBye, "BYE");
  d.timeline.bye_at = sim_.now();
  d.media_stop_initiator = sim_.now();
  SipMessage msg;
  msg.kind = SipMethod::Bye;
  msg.call_id = call_id;
  msg.from_ua = d.initiator;
  msg.to_ua = d.receiver;
  msg.via_proxy = !d.direct;
  send_request(d.initiator, d.direct ? d.receiver : cfg_.proxy_node, msg);
}

void SipSystem::cancel_now(std::int32_t call_id) {
  SipDialog& d = dlg(call_id);
  apply(d, DialogEvent::SendCancel, "CANCEL");
  SipMessage msg;
  msg.kind = SipMethod::Cancel;
  msg.call_id = call_id;
  msg.from_ua = d.initiator;
  msg.to_ua = d.receiver;
  msg.via_proxy = !d.direct;
  send_request(d.initiator, d.direct ? d.receiver : cfg_.proxy_node, msg);
}

void SipSystem::answer(std::int32_t call_id) {
  answer_events_[call_id].reset();
  SipDialog& d = dlg(call_id);
  if (d.state != DialogState::Ringing) return;  // cancelled while ringing
  apply(d, DialogEvent::Answer200, "200");
  d.answered = true;
  // The 200 to the INVITE is retransmitted until the ACK lands.
  SipMessage msg;
  msg.kind = SipMethod::Response;
  msg.code = SipCode::Ok;
  msg.responding_to = SipMethod::Invite;
  msg.call_id = call_id;
  msg.from_ua = d.receiver;
  msg.to_ua = d.initiator;
  msg.via_proxy = !d.direct;
  send_request(d.receiver, d.direct ? d.initiator : cfg_.proxy_node, msg);
}

void SipSystem::on_message_delivered(NodeId at_node, const SipMessage& msg) {
  if (at_node == cfg_.proxy_node) {
    proxy_dispatch(msg);
  } else {
    endpoint_dispatch(at_node, msg);
  }
}

void SipSystem::proxy_dispatch(const SipMessage& msg) {
  const NodeId proxy = cfg_.proxy_node;

  if (msg.kind == SipMethod::Register) {
    bindings_[msg.from_ua] = RegistrarBinding{msg.from_ua, msg.contact_node, sim_.now()};
    send_response(proxy, msg.contact_node, msg, SipCode::Ok);
    return;
  }

  // Relay toward the target UA's current binding; payload is forwarded
  // unmodified.
  auto target = bindings_.find(msg.to_ua);
  if (msg.kind == SipMethod::Invite) {
    auto origin = bindings_.find(msg.from_ua);
    const NodeId origin_node =
        origin != bindings_.end() ? origin->second.node : dialogs_.at(msg.call_id).initiator;
    if (target == bindings_.end()) {
      send_response(proxy, origin_node, msg, SipCode::NotFound);
      return;
    }
    if (cfg_.redirect_mode) {
      SipMessage resp;
      resp.kind = SipMethod::Response;
      resp.code = SipCode::Moved;
      resp.responding_to = SipMethod::Invite;
      resp.call_id = msg.call_id;
      resp.from_ua = msg.to_ua;
      resp.to_ua = msg.from_ua;
      resp.contact_node = target->second.node;
      resp.body_bytes = cfg_.response_bytes;
      transmit(proxy, origin_node, resp);
      return;
    }
    SipMessage trying;
    trying.kind = SipMethod::Response;
    trying.code = SipCode::Trying;
    trying.responding_to = SipMethod::Invite;
    trying.call_id = msg.call_id;
    trying.from_ua = msg.to_ua;
    trying.to_ua = msg.from_ua;
    trying.body_bytes = cfg_.response_bytes;
    transmit(proxy, origin_node, trying);
  }
  if (target == bindings_.end()) return;  // nothing to relay to
  transmit(proxy, target->second.node, msg);
}

void SipSystem::endpoint_dispatch(NodeId at_node, const SipMessage& msg) {
  auto dit = dialogs_.find(msg.call_id);
  if (dit == dialogs_.end()) {
    // Registration response.
    if (msg.kind == SipMethod::Response && msg.responding_to == SipMethod::Register) {
      clear_pending({msg.call_id, SipMethod::Register});
    }
    return;
  }
  SipDialog& d = dit->second;

  switch (msg.kind) {
    case SipMethod::Invite: {
      const bool first = d.state == DialogState::Inviting;
      apply(d, DialogEvent::RecvInvite, "recv INVITE");
      SipMessage ringing;
      ringing.kind = SipMethod::Response;
      ringing.code = SipCode::Ringing;
      ringing.responding_to = SipMethod::Invite;
      ringing.call_id = d.call_id;
      ringing.from_ua = d.receiver;
      ringing.to_ua = d.initiator;
      ringing.via_proxy = msg.via_proxy;
      ringing.body_bytes = cfg_.response_bytes;
      transmit(at_node, msg.via_proxy ? cfg_.proxy_node : d.initiator, ringing);
      if (first) {
        d.direct = !msg.via_proxy;
        answer_events_[d.call_id] =
            sim_.schedule_in(cfg_.ring_delay, "sip.answer", [this, id = d.call_id] { answer(id); });
      }
      return;
    }
    case SipMethod::Ack: {
      const bool first = d.state != DialogState::Established;
      apply(d, DialogEvent::RecvAck, "recv ACK");
      if (first) {
        d.timeline.established_at = sim_.now();
        clear_pending({d.call_id, SipMethod::Response});
        if (on_established_) on_established_(d.call_id);
      }
      return;
    }
    case SipMethod::Bye: {
      d.media_stop_receiver = sim_.now();
      send_response(at_node, msg.via_proxy ? cfg_.proxy_node : d.initiator, msg, SipCode::Ok);
      return;
    }
    case SipMethod::Cancel: {
      if (d.answered) {
        send_response(at_node, msg.via_proxy ? cfg_.proxy_node : d.initiator, msg, SipCode::Ok);
        return;
      }
      apply(d, DialogEvent::RecvCancel, "recv CANCEL");
      if (auto& ev = answer_events_[d.call_id]; ev) {
        sim_.cancel(*ev);
        ev.reset();
      }
      send_response(at_node, msg.via_proxy ? cfg_.proxy_node : d.initiator, msg,
                    SipCode::RequestTerminated);
      return;
    }
    case SipMethod::Register:
      return;  // endpoints never receive REGISTER
    case SipMethod::Response:
      break;
  }

  // Response handling at the requesting side.
  switch (msg.code) {
    case SipCode::Trying:
      return;  // informational; end-to-end retransmission continues until 180/200
    case SipCode::Ringing:
      clear_pending({d.call_id, SipMethod::Invite});
      return;
    case SipCode::Moved: {
      clear_pending({d.call_id, SipMethod::Invite});
      d.direct = true;
      SipMessage reinvite;
      reinvite.kind = SipMethod::Invite;
      reinvite.call_id = d.call_id;
      reinvite.from_ua = d.initiator;
      reinvite.to_ua = d.receiver;
      reinvite.via_proxy = false;
      send_request(d.initiator, msg.contact_node, reinvite);
      return;
    }
    case SipCode::NotFound:
      clear_pending({d.call_id, SipMethod::Invite});
      ++counters_.dialog_failures;
      d.failed = true;
      return;
    case SipCode::RequestTerminated:
      clear_pending({d.call_id, SipMethod::Invite});
      clear_pending({d.call_id, SipMethod::Cancel});
      if (d.state != DialogState::Cancelled) apply(d, DialogEvent::Recv487, "recv 487");
      return;
    case SipCode::Ok:
      switch (msg.responding_to) {
        case SipMethod::Invite: {
          clear_pending({d.call_id, SipMethod::Invite});
          SipMessage ack;
          ack.kind = SipMethod::Ack;
          ack.call_id = d.call_id;
          ack.from_ua = d.initiator;
          ack.to_ua = d.receiver;
          ack.via_proxy = !d.direct;
          ack.body_bytes = cfg_.request_bytes;
          transmit(d.initiator, d.direct ? d.receiver : cfg_.proxy_node, ack);
          return;
        }
        case SipMethod::Bye: {
          clear_pending({d.call_id, SipMethod::Bye});
          const bool first = d.state == DialogState::Terminating;
          apply(d, DialogEvent::Recv200Bye, "recv 200 BYE");
          if (first) d.timeline.ended_at = sim_.now();
          return;
        }
        case SipMethod::Cancel:
          clear_pending({d.call_id, SipMethod::Cancel});
          return;
        default:
          return;
      }
    case SipCode::None:
      return;
  }
}

}  // namespace wlansim
