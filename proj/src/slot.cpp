#include "qmac/slot.hpp"

namespace qmac {

std::string_view to_string(Protocol p) {
  switch (p) {
    case Protocol::QubitDistribution: return "qubit-distribution";
    case Protocol::TransmitFirstElection: return "transmit-first-election";
    case Protocol::TemporalOrdering: return "temporal-ordering";
    case Protocol::Aloha: return "aloha";
  }
  return "unknown";
}

std::string_view to_string(SlotKind k) {
  switch (k) {
    case SlotKind::Idle: return "idle";
    case SlotKind::Success: return "success";
    case SlotKind::Collision: return "collision";
    case SlotKind::ApReclaimed: return "ap_reclaimed";
    case SlotKind::ApScheduled: return "ap_scheduled";
  }
  return "unknown";
}

std::optional<Protocol> parse_protocol(std::string_view name) {
  for (Protocol p : {Protocol::QubitDistribution, Protocol::TransmitFirstElection, Protocol::TemporalOrdering,
                     Protocol::Aloha}) {
    if (name == to_string(p)) return p;
  }
  return std::nullopt;
}

}  // namespace qmac
