#include "sata/netsim.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace sata {

std::uint64_t RoundLog::total_bytes() const {
  std::uint64_t total = 0;
  for (const RoundRecord& r : messages) total += r.bytes;
  return total;
}

void RoundLog::write_csv(std::ostream& out) const {
  out << "round,sender,receiver,bytes\n";
  for (const RoundRecord& r : messages)
    out << r.round << ',' << r.sender + 1 << ',' << r.receiver + 1 << ',' << r.bytes << '\n';
}

RoundLog run_rounds(const CommGraph& graph, std::span<const std::unique_ptr<Node>> nodes,
                    int max_rounds) {
  const int n = graph.robot_count();
  if (static_cast<int>(nodes.size()) != n)
    throw std::invalid_argument("run_rounds: one program per robot required");

  RoundLog log;
  log.components = components(graph);

  auto all_done = [&] {
    return std::all_of(nodes.begin(), nodes.end(), [](const auto& p) { return p->done(); });
  };

  std::vector<std::vector<Message>> inboxes(n);
  int round = 0;
  while (round < max_rounds) {
    if (all_done()) break;
    ++round;

    std::vector<Message> in_flight;
    for (int v = 0; v < n; ++v) {
      if (nodes[v]->done()) continue;
      for (Message& msg : nodes[v]->send(round)) {
        if (msg.sender != v)
          throw std::logic_error("run_rounds: node sent with forged sender id");
        if (msg.receiver < 0 || msg.receiver >= n || !graph.has_edge(v, msg.receiver))
          throw std::logic_error("run_rounds: message does not traverse a comm edge");
        in_flight.push_back(std::move(msg));
      }
    }

    std::stable_sort(in_flight.begin(), in_flight.end(), [](const Message& a, const Message& b) {
      return a.sender != b.sender ? a.sender < b.sender : a.receiver < b.receiver;
    });
    for (const Message& msg : in_flight)
      log.messages.push_back({round, msg.sender, msg.receiver, msg.payload.size()});

    for (auto& inbox : inboxes) inbox.clear();
    for (Message& msg : in_flight) inboxes[msg.receiver].push_back(std::move(msg));
    for (int v = 0; v < n; ++v)
      if (!nodes[v]->done()) nodes[v]->receive(round, inboxes[v]);
  }

  log.rounds = round;
  log.hit_round_cap = !all_done();
  return log;
}

std::vector<std::vector<int>> components(const CommGraph& graph) {
  const int n = graph.robot_count();
  std::vector<std::vector<int>> result;
  std::vector<bool> seen(n, false);
  for (int start = 0; start < n; ++start) {
    if (seen[start]) continue;
    std::vector<int> component;
    std::deque<int> queue{start};
    seen[start] = true;
    while (!queue.empty()) {
      int v = queue.front();
      queue.pop_front();
      component.push_back(v);
      for (int u : graph.neighbors(v)) {
        if (!seen[u]) {
          seen[u] = true;
          queue.push_back(u);
        }
      }
    }
    std::sort(component.begin(), component.end());
    result.push_back(std::move(component));
  }
  return result;
}

}  // namespace sata
