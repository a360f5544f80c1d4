#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace qmac {

enum class Protocol { QubitDistribution, TransmitFirstElection, TemporalOrdering, Aloha };

enum class SlotOwner { AccessPoint, ClientStations };

enum class SlotKind { Idle, Success, Collision, ApReclaimed, ApScheduled };

/// Result of one time slot. stations lists the transmitters (one for Success,
/// two or more for Collision when the protocol identifies them); attempts is
/// the number of transmissions that started in the slot.
struct SlotOutcome {
  std::uint64_t slot_index = 0;
  SlotKind kind = SlotKind::Idle;
  std::vector<int> stations;
  std::uint32_t attempts = 0;

  static SlotOutcome idle() { return {}; }
  static SlotOutcome success(int station) { return {0, SlotKind::Success, {station}, 1}; }

  friend bool operator==(const SlotOutcome&, const SlotOutcome&) = default;
};

std::string_view to_string(Protocol p);
std::string_view to_string(SlotKind k);

/// Parses the CLI spelling ("qubit-distribution", "transmit-first-election",
/// "temporal-ordering", "aloha").
std::optional<Protocol> parse_protocol(std::string_view name);

}  // namespace qmac
