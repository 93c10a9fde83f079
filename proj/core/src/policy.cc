#include "escher/policy.h"

#include <cmath>
#include <cstdio>

namespace escher {

std::vector<double> UniformProbs(int num_actions) {
  ESCHER_CHECK_GT(num_actions, 0);
  return std::vector<double>(num_actions, 1.0 / num_actions);
}

std::vector<double> RegretMatching(const std::vector<double>& regrets) {
  ESCHER_CHECK(!regrets.empty());
  double positive_sum = 0.0;
  for (double r : regrets) {
    if (r > 0.0) positive_sum += r;
  }
  if (positive_sum <= 0.0) {
    return UniformProbs(static_cast<int>(regrets.size()));
  }
  std::vector<double> probs(regrets.size());
  for (size_t i = 0; i < regrets.size(); ++i) {
    probs[i] = regrets[i] > 0.0 ? regrets[i] / positive_sum : 0.0;
  }
  return probs;
}

PolicyTable UniformPolicyTable(const GameTree& tree) {
  PolicyTable table(tree.num_infosets());
  for (int s = 0; s < tree.num_infosets(); ++s) {
    table[s] = UniformProbs(tree.infoset(s).num_actions);
  }
  return table;
}

void TabularPolicy::SetProbs(const InfoKey& key, std::vector<double> probs) {
  if (key.player != 0 && key.player != 1) {
    throw UsageError("TabularPolicy::SetProbs: invalid player " +
                     std::to_string(key.player));
  }
  ESCHER_CHECK(!probs.empty());
  double total = 0.0;
  for (double p : probs) {
    if (p < 0.0) {
      throw UsageError("TabularPolicy::SetProbs: negative probability for '" +
                       key.key + "'");
    }
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw UsageError("TabularPolicy::SetProbs: probabilities for '" + key.key +
                     "' sum to " + std::to_string(total));
  }
  probs_[key.player][key.key] = std::move(probs);
}

std::vector<double> TabularPolicy::GetProbs(const InfoKey& key,
                                            int num_actions) const {
  if (key.player != 0 && key.player != 1) {
    throw UsageError("TabularPolicy::GetProbs: invalid player " +
                     std::to_string(key.player));
  }
  const auto& table = probs_[key.player];
  auto it = table.find(key.key);
  if (it == table.end()) return UniformProbs(num_actions);
  if (static_cast<int>(it->second.size()) != num_actions) {
    throw UsageError("TabularPolicy::GetProbs: '" + key.key + "' stores " +
                     std::to_string(it->second.size()) +
                     " probabilities but the caller expects " +
                     std::to_string(num_actions));
  }
  return it->second;
}

bool TabularPolicy::Has(const InfoKey& key) const {
  if (key.player != 0 && key.player != 1) return false;
  return probs_[key.player].count(key.key) > 0;
}

PolicyTable FromTabularPolicy(const GameTree& tree,
                              const TabularPolicy& policy) {
  PolicyTable table(tree.num_infosets());
  for (int s = 0; s < tree.num_infosets(); ++s) {
    const GameTree::Infoset& infoset = tree.infoset(s);
    table[s] = policy.GetProbs({infoset.player, infoset.key},
                               infoset.num_actions);
  }
  return table;
}

TabularPolicy ToTabularPolicy(const GameTree& tree, const PolicyTable& table) {
  ESCHER_CHECK_EQ(static_cast<int>(table.size()), tree.num_infosets());
  TabularPolicy policy;
  for (int s = 0; s < tree.num_infosets(); ++s) {
    const GameTree::Infoset& infoset = tree.infoset(s);
    policy.SetProbs({infoset.player, infoset.key}, table[s]);
  }
  return policy;
}

namespace {

std::string FormatProb(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

}  // namespace

std::string SerializePolicy(const GameTree& tree, const TabularPolicy& policy) {
  std::string out;
  for (int player = 0; player < 2; ++player) {
    for (const auto& [key, probs] : policy.PlayerTable(player)) {
      const int infoset = tree.InfosetId(player, key);
      if (infoset < 0) {
        throw UsageError("SerializePolicy: unknown information set '" + key +
                         "'");
      }
      const GameTree::Infoset& info = tree.infoset(infoset);
      ESCHER_CHECK_EQ(probs.size(), info.action_labels.size());
      for (size_t a = 0; a < probs.size(); ++a) {
        out += std::to_string(player);
        out.push_back('\t');
        out += key;
        out.push_back('\t');
        out += info.action_labels[a];
        out.push_back('\t');
        out += FormatProb(probs[a]);
        out.push_back('\n');
      }
    }
  }
  return out;
}

RegretAccumulator::RegretAccumulator(std::shared_ptr<const GameTree> tree)
    : tree_(std::move(tree)) {
  regrets_.resize(tree_->num_infosets());
  average_weights_.resize(tree_->num_infosets());
  for (int s = 0; s < tree_->num_infosets(); ++s) {
    const int n = tree_->infoset(s).num_actions;
    regrets_[s].assign(n, 0.0);
    average_weights_[s].assign(n, 0.0);
  }
}

void RegretAccumulator::AccumulateRegret(int infoset,
                                         const std::vector<double>& increment) {
  std::vector<double>& regrets = regrets_[infoset];
  ESCHER_CHECK_EQ(increment.size(), regrets.size());
  for (size_t a = 0; a < regrets.size(); ++a) regrets[a] += increment[a];
}

void RegretAccumulator::AccumulateRegret(const InfoKey& key,
                                         const std::vector<double>& increment) {
  const int infoset = tree_->InfosetId(key.player, key.key);
  if (infoset < 0) {
    throw UsageError("AccumulateRegret: unknown information set '" + key.key +
                     "'");
  }
  AccumulateRegret(infoset, increment);
}

void RegretAccumulator::UpdateAverage(int infoset,
                                      const std::vector<double>& probs,
                                      double weight) {
  std::vector<double>& weights = average_weights_[infoset];
  ESCHER_CHECK_EQ(probs.size(), weights.size());
  for (size_t a = 0; a < weights.size(); ++a) weights[a] += weight * probs[a];
}

std::vector<double> RegretAccumulator::CurrentPolicy(int infoset) const {
  return RegretMatching(regrets_[infoset]);
}

PolicyTable RegretAccumulator::CurrentPolicyTable() const {
  PolicyTable table(regrets_.size());
  for (size_t s = 0; s < regrets_.size(); ++s) {
    table[s] = RegretMatching(regrets_[s]);
  }
  return table;
}

PolicyTable RegretAccumulator::ExtractAveragePolicy() const {
  PolicyTable table(average_weights_.size());
  for (size_t s = 0; s < average_weights_.size(); ++s) {
    const std::vector<double>& weights = average_weights_[s];
    double total = 0.0;
    for (double w : weights) total += w;
    if (total <= 0.0) {
      table[s] = UniformProbs(static_cast<int>(weights.size()));
    } else {
      table[s].resize(weights.size());
      for (size_t a = 0; a < weights.size(); ++a) {
        table[s][a] = weights[a] / total;
      }
    }
  }
  return table;
}

}  // namespace escher
