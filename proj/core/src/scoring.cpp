#include "semweave/scoring.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

#include "semweave/errors.hpp"

namespace semweave {

namespace {

constexpr double kEps = 1e-9;  // tolerance for grid-value comparisons

std::pair<std::string, std::string> ordered(const std::string& a,
                                            const std::string& b) {
  return a <= b ? std::make_pair(a, b) : std::make_pair(b, a);
}

std::vector<double> average_ranks(const std::vector<double>& values) {
  std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(n, 0.0);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
    double rank = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
    i = j + 1;
  }
  return ranks;
}

}  // namespace

std::vector<std::string> validate_weights(const StrengthWeights& w) {
  std::vector<std::string> violations;
  std::ostringstream msg;
  auto report = [&](const std::string& text) { violations.push_back(text); };

  if (w.alpha + kEps < w.beta || w.beta + kEps < w.gamma) {
    report("causal precedence violated: requires alpha >= beta >= gamma");
  }
  for (auto [name, value] : {std::make_pair("alpha", w.alpha),
                             std::make_pair("beta", w.beta),
                             std::make_pair("gamma", w.gamma),
                             std::make_pair("delta", w.delta)}) {
    if (value + kEps < 0.1) {
      msg.str("");
      msg << "minimum contribution violated: " << name << " = " << value
          << " < 0.1";
      report(msg.str());
    }
  }
  if (std::abs(w.alpha - w.beta) + kEps < 0.2) {
    report("separation violated: |alpha-beta| < 0.2");
  }
  if (std::abs(w.beta - w.gamma) + kEps < 0.2) {
    report("separation violated: |beta-gamma| < 0.2");
  }
  return violations;
}

double combine_strength(double s_type, double s_entities, double s_complexity,
                        double s_diversity, const StrengthWeights& w) {
  return (w.alpha * s_type + w.beta * s_entities + w.gamma * s_complexity +
          w.delta * s_diversity) /
         w.sum();
}

double score_type(BridgeKind kind) {
  switch (kind) {
    case BridgeKind::Causal: return 0.9;
    case BridgeKind::PredicateChain: return 0.8;
    case BridgeKind::Entity: return 0.6;
  }
  return 0.0;
}

double score_entities(const SemanticFrame& f1, const SemanticFrame& f2) {
  auto k1 = f1.entity_keys();
  auto k2 = f2.entity_keys();
  if (k1.empty() || k2.empty()) return 0.0;
  std::vector<std::string> shared;
  std::set_intersection(k1.begin(), k1.end(), k2.begin(), k2.end(),
                        std::back_inserter(shared));
  return static_cast<double>(shared.size()) /
         static_cast<double>(std::max(k1.size(), k2.size()));
}

int CooccurrenceStats::count(const std::string& concept_label) const {
  auto it = docs_with.find(concept_label);
  return it == docs_with.end() ? 0 : it->second;
}

int CooccurrenceStats::count_pair(const std::string& a,
                                  const std::string& b) const {
  auto it = docs_with_both.find(ordered(a, b));
  return it == docs_with_both.end() ? 0 : it->second;
}

double score_entities_pmi(const SemanticFrame& f1, const SemanticFrame& f2,
                          const CooccurrenceStats& stats) {
  auto k1 = f1.entity_keys();
  auto k2 = f2.entity_keys();
  std::vector<std::string> shared;
  std::set_intersection(k1.begin(), k1.end(), k2.begin(), k2.end(),
                        std::back_inserter(shared));
  if (shared.empty()) return 0.0;

  double n = std::max(stats.doc_count, 1) + 1.0;  // add-one smoothing
  double p_a = (stats.count(f1.predicate) + 1.0) / n;
  double p_b = (stats.count(f2.predicate) + 1.0) / n;
  double p_ab = (stats.count_pair(f1.predicate, f2.predicate) + 1.0) / n;
  double pmi = std::log2(p_ab / (p_a * p_b));
  pmi = std::clamp(pmi, 0.0, 1.0);

  double diversity = 0.0;
  for (const auto& key : shared) {
    std::optional<std::string> slot_a, slot_b;
    for (const auto& [label, ref] : f1.core_args) {
      if (ref.is_entity() && ref.key() == key) { slot_a = label; break; }
    }
    for (const auto& [label, ref] : f2.core_args) {
      if (ref.is_entity() && ref.key() == key) { slot_b = label; break; }
    }
    if (slot_a && slot_b) {
      diversity = std::max(
          diversity, role_distance(classify_role(*slot_a),
                                   classify_role(*slot_b)));
    }
  }
  return pmi * diversity;
}

int argument_complexity(const SemanticFrame& frame) {
  return static_cast<int>(frame.core_args.size() +
                          frame.non_core_args.size() +
                          frame.modifiers.size()) +
         frame.depth;
}

double score_complexity(const SemanticFrame& f1, const SemanticFrame& f2,
                        const ScoringConfig& config) {
  if (config.complexity_variant == ComplexityVariant::MainText) {
    int limit = config.max_depth;
    if (limit < 1) throw InvalidMaxDepth("max_depth must be >= 1");
    if (f1.depth > limit || f2.depth > limit) {
      throw InvalidMaxDepth("observed frame depth exceeds max_depth " +
                            std::to_string(limit));
    }
    return (f1.depth + f2.depth) / (2.0 * limit);
  }
  int limit = config.k_max;
  if (limit < 1) throw InvalidMaxDepth("k_max must be >= 1");
  int k1 = argument_complexity(f1);
  int k2 = argument_complexity(f2);
  if (k1 > limit || k2 > limit) {
    throw InvalidMaxDepth("observed complexity exceeds k_max " +
                          std::to_string(limit));
  }
  return (k1 + k2) / (2.0 * limit);
}

double jensen_shannon_divergence(const std::map<std::string, double>& p,
                                 const std::map<std::string, double>& q) {
  std::set<std::string> support;
  for (const auto& [k, _] : p) support.insert(k);
  for (const auto& [k, _] : q) support.insert(k);

  double jsd = 0.0;
  for (const auto& key : support) {
    auto ip = p.find(key);
    auto iq = q.find(key);
    double pv = ip == p.end() ? 0.0 : ip->second;
    double qv = iq == q.end() ? 0.0 : iq->second;
    double mv = 0.5 * (pv + qv);
    if (pv > 0.0) jsd += 0.5 * pv * std::log2(pv / mv);
    if (qv > 0.0) jsd += 0.5 * qv * std::log2(qv / mv);
  }
  return std::clamp(jsd, 0.0, 1.0);
}

double score_diversity(const ConceptDistribution& d1,
                       const ConceptDistribution& d2) {
  return jensen_shannon_divergence(d1.probs, d2.probs);
}

StrengthBreakdown bridge_strength(const Bridge& bridge,
                                  const SemanticFrame& f1,
                                  const SemanticFrame& f2,
                                  const ConceptDistribution& dist_a,
                                  const ConceptDistribution& dist_b,
                                  const ScoringConfig& config,
                                  const CooccurrenceStats* stats) {
  StrengthBreakdown breakdown;
  breakdown.s_type = score_type(bridge.kind);
  breakdown.s_entities =
      config.entities_variant == EntitiesVariant::MainText || stats == nullptr
          ? score_entities(f1, f2)
          : score_entities_pmi(f1, f2, *stats);
  breakdown.s_complexity = score_complexity(f1, f2, config);
  breakdown.s_diversity = score_diversity(dist_a, dist_b);
  breakdown.total =
      combine_strength(breakdown.s_type, breakdown.s_entities,
                       breakdown.s_complexity, breakdown.s_diversity,
                       config.weights);
  return breakdown;
}

std::vector<RatedBridge> load_rated_bridges(const std::string& contents) {
  std::vector<RatedBridge> rated;
  std::istringstream in(contents);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream row(line);
    RatedBridge r;
    if (!(row >> r.s_type)) continue;  // blank
    if (!(row >> r.s_entities >> r.s_complexity >> r.s_diversity >>
          r.rating)) {
      throw ParseError("rated bridge line " + std::to_string(line_no) +
                       ": expected 5 numeric fields");
    }
    rated.push_back(r);
  }
  return rated;
}

std::optional<double> spearman_rho(const std::vector<double>& xs,
                                   const std::vector<double>& ys) {
  if (xs.size() != ys.size() || xs.size() < 2) return std::nullopt;
  auto rx = average_ranks(xs);
  auto ry = average_ranks(ys);
  double n = static_cast<double>(xs.size());
  double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
  double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
  double cov = 0.0, vx = 0.0, vy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    cov += (rx[i] - mx) * (ry[i] - my);
    vx += (rx[i] - mx) * (rx[i] - mx);
    vy += (ry[i] - my) * (ry[i] - my);
  }
  if (vx <= 0.0 || vy <= 0.0) return std::nullopt;
  return cov / std::sqrt(vx * vy);
}

std::vector<StrengthWeights> default_grid(double delta) {
  std::vector<StrengthWeights> grid;
  for (int a = 1; a <= 10; ++a) {
    for (int b = 1; b <= 10; ++b) {
      for (int g = 1; g <= 10; ++g) {
        grid.push_back({a / 10.0, b / 10.0, g / 10.0, delta});
      }
    }
  }
  return grid;
}

GridOutcome grid_search(const std::vector<StrengthWeights>& candidates,
                        const std::vector<RatedBridge>& rated,
                        bool require_constraints) {
  if (candidates.empty()) throw InsufficientData("empty candidate grid");
  if (rated.size() < 3) {
    throw InsufficientData("grid search needs at least 3 rated bridges, got " +
                           std::to_string(rated.size()));
  }

  GridOutcome outcome;
  std::vector<double> ratings;
  ratings.reserve(rated.size());
  for (const auto& r : rated) ratings.push_back(r.rating);

  for (const auto& weights : candidates) {
    if (require_constraints) {
      auto violations = validate_weights(weights);
      if (!violations.empty()) {
        outcome.skipped.push_back({weights, violations.front()});
        continue;
      }
    }
    std::vector<double> totals;
    totals.reserve(rated.size());
    for (const auto& r : rated) {
      totals.push_back(combine_strength(r.s_type, r.s_entities,
                                        r.s_complexity, r.s_diversity,
                                        weights));
    }
    auto rho = spearman_rho(totals, ratings);
    if (!rho) {
      outcome.skipped.push_back(
          {weights, "undefined correlation: zero rank variance"});
      continue;
    }
    outcome.ranked.push_back({weights, *rho});
  }

  std::sort(outcome.ranked.begin(), outcome.ranked.end(),
            [](const GridEntry& a, const GridEntry& b) {
              if (a.rho != b.rho) return a.rho > b.rho;
              auto ka = std::tie(a.weights.alpha, a.weights.beta,
                                 a.weights.gamma, a.weights.delta);
              auto kb = std::tie(b.weights.alpha, b.weights.beta,
                                 b.weights.gamma, b.weights.delta);
              return ka < kb;
            });
  return outcome;
}

}  // namespace semweave
