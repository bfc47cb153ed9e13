#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wlansim/engine.hpp"
#include "wlansim/packet.hpp"

namespace wlansim {

enum class SipMethod { Register, Invite, Ack, Bye, Cancel, Response };

enum class SipCode : int {
  None = 0,
  Trying = 100,
  Ringing = 180,
  Ok = 200,
  Moved = 302,       // redirect mode
  NotFound = 404,    // callee unregistered
  RequestTerminated = 487,
};

struct SipMessage {
  SipMethod kind = SipMethod::Invite;
  SipCode code = SipCode::None;            // responses only
  SipMethod responding_to = SipMethod::Invite;  // responses only
  std::int32_t call_id = 0;
  int from_ua = kNoNode;
  int to_ua = kNoNode;
  bool via_proxy = true;
  std::int64_t body_bytes = 0;
  NodeId contact_node = kNoNode;  // 302 redirect target

  bool is_request() const { return kind != SipMethod::Response; }
};

enum class DialogState {
  Idle,
  Registering,
  Inviting,
  Ringing,
  Established,
  Terminating,
  Terminated,
  Cancelled,
};

const char* to_string(DialogState s);

/// Inputs to the per-call dialog state machine (one shared record per call).
enum class DialogEvent {
  SendInvite,   // caller fires the INVITE
  RecvInvite,   // callee processes it (180 goes back)
  Answer200,    // callee answers after the ring delay
  RecvAck,      // ACK reaches the callee; session established
  SendBye,
  Recv200Bye,
  SendCancel,
  RecvCancel,
  Recv487,
};

/// Legal-transition table. Returns the next state, or nullopt when the
/// event is illegal in the given state (callers must reject, not absorb).
/// Duplicates of in-flight messages are legal no-ops.
std::optional<DialogState> dialog_transition(DialogState state, DialogEvent ev, bool answered);

struct DialogTimeline {
  SimTime invite_sent_at = -1;
  SimTime established_at = -1;
  SimTime bye_at = -1;
  SimTime ended_at = -1;
};

struct SipDialog {
  std::int32_t call_id = 0;
  DialogState state = DialogState::Idle;
  DialogTimeline timeline;
  NodeId initiator = kNoNode;
  NodeId receiver = kNoNode;
  bool answered = false;   // 200 sent; a racing CANCEL loses
  bool failed = false;     // signaling gave up (retransmissions exhausted)
  bool direct = false;     // redirect mode: in-dialog requests skip the proxy
  SimTime media_stop_initiator = kNever;
  SimTime media_stop_receiver = kNever;

  bool media_active(SimTime t) const {
    return state == DialogState::Established && timeline.established_at >= 0 &&
           t >= timeline.established_at;
  }
};

struct RegistrarBinding {
  int user = kNoNode;
  NodeId node = kNoNode;
  SimTime registered_at = -1;
};

/// SIP entities for one run: user agents, the proxy/registrar at one node
/// (redirect as a response mode), dialog records and request
/// retransmission timers. Transport is delegated to the run context, which
/// carries messages as 500-byte request / 300-byte response UDP packets
/// through the simulated stack.
class SipSystem {
 public:
  struct Config {
    NodeId proxy_node = 10;
    std::int64_t request_bytes = 500;
    std::int64_t response_bytes = 300;
    SimTime rtx_interval = 500 * kMillisecond;
    int max_attempts = 7;
    SimTime ring_delay = 2 * kSecond;
    bool redirect_mode = false;
  };

  struct Counters {
    std::int64_t registration_failures = 0;
    std::int64_t dialog_failures = 0;
    std::int64_t messages_sent = 0;
    std::int64_t responses_sent = 0;
  };

  using SendFn = std::function<void(NodeId from, NodeId to, const SipMessage&)>;
  using EstablishedFn = std::function<void(std::int32_t call_id)>;

  SipSystem(Simulator& sim, Config cfg, SendFn send);

  void set_established_hook(EstablishedFn fn) { on_established_ = std::move(fn); }

  /// Schedules a REGISTER from the UA to the proxy's registrar.
  void schedule_register(NodeId ua_node, SimTime at);

  std::int32_t create_dialog(NodeId caller, NodeId callee);
  void schedule_invite(std::int32_t call_id, SimTime at);
  void schedule_bye(std::int32_t call_id, SimTime at);

  /// Immediate operations (preconditions enforced with hard errors).
  void invite_now(std::int32_t call_id);
  void bye_now(std::int32_t call_id);
  void cancel_now(std::int32_t call_id);

  /// Stack hands every delivered signaling message back here.
  void on_message_delivered(NodeId at_node, const SipMessage& msg);

  const SipDialog& dialog(std::int32_t call_id) const { return dialogs_.at(call_id); }
  const std::map<std::int32_t, SipDialog>& dialogs() const { return dialogs_; }
  const std::map<int, RegistrarBinding>& bindings() const { return bindings_; }
  bool registered(int user) const { return bindings_.contains(user); }
  const Counters& counters() const { return counters_; }
  const Config& config() const { return cfg_; }

 private:
  struct Pending {
    SipMessage msg;
    NodeId from = kNoNode;
    NodeId to = kNoNode;
    int attempts = 0;
    std::optional<EventId> timer;
  };
  using PendingKey = std::pair<std::int32_t, SipMethod>;  // (call_id, request kind)

  SipDialog& dlg(std::int32_t call_id);
  void apply(SipDialog& d, DialogEvent ev, const char* what);
  void send_request(NodeId from, NodeId to, SipMessage msg);
  void send_response(NodeId from, NodeId to, SipMessage request, SipCode code);
  void transmit(NodeId from, NodeId to, const SipMessage& msg);
  void arm_retransmit(const PendingKey& key);
  void clear_pending(const PendingKey& key);
  void fail_pending(const PendingKey& key);
  void proxy_dispatch(const SipMessage& msg);
  void endpoint_dispatch(NodeId at_node, const SipMessage& msg);
  void answer(std::int32_t call_id);

  Simulator& sim_;
  Config cfg_;
  SendFn send_;
  EstablishedFn on_established_;
  Counters counters_;
  std::map<std::int32_t, SipDialog> dialogs_;
  std::map<int, RegistrarBinding> bindings_;
  std::map<PendingKey, Pending> pending_;
  std::map<std::int32_t, std::optional<EventId>> answer_events_;
  std::int32_t next_call_id_ = 1;
  std::int32_t next_register_txn_ = -1;  // registration transactions count down
};

}  // namespace wlansim
