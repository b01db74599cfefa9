#include "sata/greedy.hpp"

#include <algorithm>
#include <cstring>
#include <numeric>
#include <stdexcept>

#include <json.hpp>

namespace sata {

namespace {

void check_order(const Instance& inst, const std::vector<int>& order) {
  std::vector<bool> seen(inst.robot_count(), false);
  if (static_cast<int>(order.size()) != inst.robot_count())
    throw std::invalid_argument("order must be a permutation of the robots");
  for (int i : order) {
    if (i < 0 || i >= inst.robot_count() || seen[i])
      throw std::invalid_argument("order must be a permutation of the robots");
    seen[i] = true;
  }
}

// Algorithm step shared by the centralized and distributed runs: pick the
// primitive of `robot` maximizing sum_j max(w_j, c), then raise w over the
// picked primitive's coverage. Ties go to the lowest primitive index.
GreedyStep select_and_update(const Instance& inst, int robot, std::vector<double>& w) {
  GreedyStep step;
  step.robot = robot;
  double base = std::accumulate(w.begin(), w.end(), 0.0);
  step.w_prime.resize(inst.primitive_count(robot));
  for (int m = 0; m < inst.primitive_count(robot); ++m) {
    double score = base;
    for (const TargetWeight& tw : inst.coverage(robot, m))
      score += std::max(0.0, tw.weight - w[tw.target]);
    step.w_prime[m] = score;
  }
  step.chosen_primitive = static_cast<int>(
      std::max_element(step.w_prime.begin(), step.w_prime.end()) - step.w_prime.begin());
  for (const TargetWeight& tw : inst.coverage(robot, step.chosen_primitive))
    w[tw.target] = std::max(w[tw.target], tw.weight);
  step.w_after = w;
  return step;
}

std::string pack_doubles(const std::vector<double>& values) {
  std::string payload(values.size() * sizeof(double), '\0');
  std::memcpy(payload.data(), values.data(), payload.size());
  return payload;
}

std::vector<double> unpack_doubles(const std::string& payload) {
  std::vector<double> values(payload.size() / sizeof(double));
  std::memcpy(values.data(), payload.data(), values.size() * sizeof(double));
  return values;
}

class GreedyNode : public Node {
 public:
  GreedyNode(const Instance& inst, const CommGraph& graph, int robot, int turn)
      : inst_(inst), graph_(graph), robot_(robot), turn_(turn),
        w_(inst.target_count(), 0.0) {}

  std::vector<Message> send(int round) override {
    if (round != turn_) return {};
    step_ = select_and_update(inst_, robot_, w_);
    selected_ = true;
    std::vector<Message> out;
    for (int neighbor : graph_.neighbors(robot_))
      out.push_back({robot_, neighbor, pack_doubles(w_)});
    return out;
  }

  void receive(int, std::span<const Message> inbox) override {
    for (const Message& msg : inbox) {
      std::vector<double> incoming = unpack_doubles(msg.payload);
      for (std::size_t j = 0; j < w_.size(); ++j) w_[j] = std::max(w_[j], incoming[j]);
    }
  }

  bool done() const override { return selected_; }

  const GreedyStep& step() const { return step_; }
  int turn() const { return turn_; }

 private:
  const Instance& inst_;
  const CommGraph& graph_;
  int robot_;
  int turn_;
  std::vector<double> w_;
  bool selected_ = false;
  GreedyStep step_;
};

}  // namespace

std::vector<int> ascending_order(int robot_count) {
  std::vector<int> order(robot_count);
  std::iota(order.begin(), order.end(), 0);
  return order;
}

GreedyResult greedy_wta(const Instance& inst, const std::vector<int>& order) {
  check_order(inst, order);
  GreedyResult result;
  result.trace.order = order;
  result.trace.rounds_used = static_cast<int>(order.size());
  result.assignment.chosen_primitive.assign(inst.robot_count(), 0);

  std::vector<double> w(inst.target_count(), 0.0);
  for (int robot : order) {
    GreedyStep step = select_and_update(inst, robot, w);
    result.assignment.chosen_primitive[robot] = step.chosen_primitive;
    result.trace.steps.push_back(std::move(step));
  }
  result.assignment.target_owner =
      eval_wta_from_x(inst, result.assignment.chosen_primitive).target_owner;
  return result;
}

Assignment greedy_bottleneck(const Instance& inst, const std::vector<int>& order,
                             TieBreak tie_break) {
  check_order(inst, order);
  Assignment assignment;
  assignment.chosen_primitive.assign(inst.robot_count(), 0);

  std::vector<double> coverage(inst.target_count(), 0.0);
  for (int robot : order) {
    int best_m = -1;
    double best_value = -1.0;
    for (int m = 0; m < inst.primitive_count(robot); ++m) {
      double candidate = std::numeric_limits<double>::infinity();
      for (int j = 0; j < inst.target_count(); ++j)
        candidate = std::min(candidate, coverage[j] + inst.weight(robot, m, j));
      if (inst.target_count() == 0) candidate = 0.0;
      bool better = candidate > best_value ||
                    (candidate == best_value && tie_break == TieBreak::Adversarial);
      if (best_m < 0 || better) {
        best_m = m;
        best_value = candidate;
      }
    }
    assignment.chosen_primitive[robot] = best_m;
    for (const TargetWeight& tw : inst.coverage(robot, best_m)) coverage[tw.target] += tw.weight;
  }
  return assignment;
}

DistributedGreedyResult greedy_distributed(const Instance& inst) {
  CommGraph graph = derive_comm_graph(inst);
  std::vector<std::vector<int>> comps = components(graph);

  // Robot ids define the order: the k-th smallest id in each component
  // takes its turn in round k.
  std::vector<int> turn(inst.robot_count(), 0);
  int max_component = 0;
  for (const auto& component : comps) {
    max_component = std::max(max_component, static_cast<int>(component.size()));
    for (std::size_t k = 0; k < component.size(); ++k)
      turn[component[k]] = static_cast<int>(k) + 1;
  }

  std::vector<std::unique_ptr<Node>> nodes;
  nodes.reserve(inst.robot_count());
  for (int i = 0; i < inst.robot_count(); ++i)
    nodes.push_back(std::make_unique<GreedyNode>(inst, graph, i, turn[i]));

  DistributedGreedyResult result;
  result.log = run_rounds(graph, nodes, max_component);
  result.rounds = result.log.rounds;

  result.assignment.chosen_primitive.assign(inst.robot_count(), 0);
  std::vector<const GreedyNode*> by_turn_order;
  for (const auto& node : nodes) by_turn_order.push_back(static_cast<const GreedyNode*>(node.get()));
  std::stable_sort(by_turn_order.begin(), by_turn_order.end(),
                   [](const GreedyNode* a, const GreedyNode* b) { return a->turn() < b->turn(); });
  for (const GreedyNode* node : by_turn_order) {
    result.assignment.chosen_primitive[node->step().robot] = node->step().chosen_primitive;
    result.trace.order.push_back(node->step().robot);
    result.trace.steps.push_back(node->step());
  }
  result.trace.rounds_used = result.rounds;
  result.assignment.target_owner =
      eval_wta_from_x(inst, result.assignment.chosen_primitive).target_owner;
  return result;
}

std::string trace_to_json_string(const GreedyTrace& trace) {
  nlohmann::json steps = nlohmann::json::array();
  for (const GreedyStep& step : trace.steps) {
    steps.push_back({{"robot", step.robot + 1},
                     {"chosen_primitive", step.chosen_primitive + 1},
                     {"w_prime", step.w_prime},
                     {"w_after", step.w_after}});
  }
  std::vector<int> order_1based;
  for (int i : trace.order) order_1based.push_back(i + 1);
  nlohmann::json doc{
      {"order", order_1based}, {"steps", std::move(steps)}, {"rounds_used", trace.rounds_used}};
  return doc.dump(2) + "\n";
}

}  // namespace sata
