#include "smoothspec/metrics.hpp"

#include "smoothspec/error.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <utility>

namespace smoothspec {

namespace {

struct Contingency {
  std::map<std::pair<int, int>, long long> joint;
  std::map<int, long long> pred;
  std::map<int, long long> truth;
  long long n = 0;
};

Contingency tabulate(const LabelVector& pred, const LabelVector& truth, const char* who) {
  if (pred.size() != truth.size()) {
    throw ConfigError(std::string(who) + ": label vectors differ in length (" + std::to_string(pred.size()) +
                      " vs " + std::to_string(truth.size()) + ")");
  }
  if (pred.empty()) throw ConfigError(std::string(who) + ": empty label vectors");
  Contingency c;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    ++c.joint[{pred[i], truth[i]}];
    ++c.pred[pred[i]];
    ++c.truth[truth[i]];
  }
  c.n = static_cast<long long>(pred.size());
  return c;
}

double entropy(const std::map<int, long long>& counts, double n) {
  double h = 0.0;
  for (const auto& [label, count] : counts) {
    const double q = static_cast<double>(count) / n;
    h -= q * std::log(q);
  }
  return h;
}

double pairs(long long m) { return 0.5 * static_cast<double>(m) * static_cast<double>(m - 1); }

}  // namespace

double nmi(const LabelVector& pred, const LabelVector& truth) {
  const Contingency c = tabulate(pred, truth, "nmi");
  const double n = static_cast<double>(c.n);
  const double h_pred = entropy(c.pred, n);
  const double h_truth = entropy(c.truth, n);
  if (c.pred.size() == 1 && c.truth.size() == 1) return 1.0;

  double mi = 0.0;
  for (const auto& [key, count] : c.joint) {
    const double pij = static_cast<double>(count) / n;
    const double pi = static_cast<double>(c.pred.at(key.first)) / n;
    const double pj = static_cast<double>(c.truth.at(key.second)) / n;
    mi += pij * std::log(pij / (pi * pj));
  }
  const double denom = 0.5 * (h_pred + h_truth);
  if (denom <= 0.0) return 0.0;
  return std::clamp(mi / denom, 0.0, 1.0);
}

double purity(const LabelVector& pred, const LabelVector& truth) {
  const Contingency c = tabulate(pred, truth, "purity");
  std::map<int, long long> majority;
  for (const auto& [key, count] : c.joint) {
    auto& best = majority[key.first];
    best = std::max(best, count);
  }
  long long total = 0;
  for (const auto& [label, count] : majority) total += count;
  return static_cast<double>(total) / static_cast<double>(c.n);
}

double rand_index(const LabelVector& pred, const LabelVector& truth) {
  const Contingency c = tabulate(pred, truth, "rand_index");
  if (c.n < 2) throw ConfigError("rand_index: needs at least 2 objects");
  double same_both = 0.0, same_pred = 0.0, same_truth = 0.0;
  for (const auto& [key, count] : c.joint) same_both += pairs(count);
  for (const auto& [label, count] : c.pred) same_pred += pairs(count);
  for (const auto& [label, count] : c.truth) same_truth += pairs(count);
  const double total = pairs(c.n);
  // agreements = pairs together in both + pairs apart in both
  const double agree = total + 2.0 * same_both - same_pred - same_truth;
  return agree / total;
}

}  // namespace smoothspec
