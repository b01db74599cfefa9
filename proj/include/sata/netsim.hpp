#pragma once

#include <cstdint>
#include <memory>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "sata/core.hpp"

namespace sata {

struct Message {
  int sender = -1;
  int receiver = -1;
  std::string payload;  // opaque bytes; only the size is logged
};

struct RoundRecord {
  int round;
  int sender;
  int receiver;
  std::size_t bytes;
};

struct RoundLog {
  int rounds = 0;
  std::vector<RoundRecord> messages;
  std::vector<std::vector<int>> components;
  bool hit_round_cap = false;  // max_rounds reached with programs still running

  std::uint64_t total_bytes() const;
  // Columns: round, sender, receiver, bytes (1-based robot ids).
  void write_csv(std::ostream& out) const;
};

// One robot's program. Each synchronous round the simulator calls send() on
// every running node, flushes all outboxes across the barrier, then calls
// receive() with the messages addressed to the node. A payload sent in round k
// can therefore influence sends no earlier than round k+1.
class Node {
 public:
  virtual ~Node() = default;
  virtual std::vector<Message> send(int round) = 0;
  virtual void receive(int round, std::span<const Message> inbox) = 0;
  virtual bool done() const = 0;
};

// Lock-step execution until every node reports done or max_rounds elapse.
// Messages must address comm-graph neighbors of their sender; anything else
// throws. Fully deterministic: nodes run in id order, inboxes are sorted by
// sender.
RoundLog run_rounds(const CommGraph& graph, std::span<const std::unique_ptr<Node>> nodes,
                    int max_rounds);

// Connected components of the comm graph, ordered by smallest member id,
// members ascending.
std::vector<std::vector<int>> components(const CommGraph& graph);

}  // namespace sata
