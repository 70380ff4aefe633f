#ifndef SEMWEAVE_SCORING_HPP
#define SEMWEAVE_SCORING_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "semweave/bridging.hpp"
#include "semweave/frames.hpp"
#include "semweave/strength.hpp"

namespace semweave {

// Relative frequency of AMR node concepts within one document.
struct ConceptDistribution {
  std::string doc_id;
  std::map<std::string, double> probs;  // positive, sum to 1 (+-1e-9)

  std::size_t support() const { return probs.size(); }
};

// Document-level concept co-occurrence counts (Appendix-style PMI variant).
struct CooccurrenceStats {
  int doc_count = 0;
  std::map<std::string, int> docs_with;
  std::map<std::pair<std::string, std::string>, int> docs_with_both;

  int count(const std::string& concept_label) const;
  int count_pair(const std::string& a, const std::string& b) const;
};

struct ScoringConfig {
  StrengthWeights weights;
  int max_depth = 0;  // 0: derive from the corpus (max frame depth, min 1)
  int k_max = 0;      // 0: derive (max argument-count complexity, min 1)
  ComplexityVariant complexity_variant = ComplexityVariant::MainText;
  EntitiesVariant entities_variant = EntitiesVariant::MainText;
};

// Causal 0.9, predicate chain 0.8, entity 0.6.
double score_type(BridgeKind kind);

// |shared entity keys| / max(|entities(F1)|, |entities(F2)|); 0 when either
// frame has no core-argument entities.
double score_entities(const SemanticFrame& f1, const SemanticFrame& f2);

// Variant: PMI of the predicates (add-one smoothing, clamped to [0,1])
// times the max role distance among shared entities.
double score_entities_pmi(const SemanticFrame& f1, const SemanticFrame& f2,
                          const CooccurrenceStats& stats);

// MainText: (depth(F1)+depth(F2)) / (2*max_depth). AppendixD:
// (K(F1)+K(F2)) / (2*k_max) with K = |core|+|non_core|+|modifiers|+depth.
// Throws InvalidMaxDepth when the divisor is below an observed value.
double score_complexity(const SemanticFrame& f1, const SemanticFrame& f2,
                        const ScoringConfig& config);

int argument_complexity(const SemanticFrame& frame);  // K(F)

// Jensen-Shannon divergence, base-2 logarithm, bounded by [0,1].
double jensen_shannon_divergence(const std::map<std::string, double>& p,
                                 const std::map<std::string, double>& q);

double score_diversity(const ConceptDistribution& d1,
                       const ConceptDistribution& d2);

StrengthBreakdown bridge_strength(const Bridge& bridge,
                                  const SemanticFrame& f1,
                                  const SemanticFrame& f2,
                                  const ConceptDistribution& dist_a,
                                  const ConceptDistribution& dist_b,
                                  const ScoringConfig& config,
                                  const CooccurrenceStats* stats = nullptr);

// ---- Weight calibration ------------------------------------------------------

struct RatedBridge {
  double s_type = 0.0;
  double s_entities = 0.0;
  double s_complexity = 0.0;
  double s_diversity = 0.0;
  double rating = 0.0;
};

// Whitespace-delimited records: s_type s_entities s_complexity s_diversity
// rating, one per line, '#' comments. Throws ParseError on bad rows.
std::vector<RatedBridge> load_rated_bridges(const std::string& contents);

// Spearman rank correlation with average ranks for ties; nullopt when
// either side has zero rank variance.
std::optional<double> spearman_rho(const std::vector<double>& xs,
                                   const std::vector<double>& ys);

// All (alpha, beta, gamma) in [0.1, 1.0] step 0.1 with fixed delta.
std::vector<StrengthWeights> default_grid(double delta = 0.1);

struct GridEntry {
  StrengthWeights weights;
  double rho = 0.0;
};

struct GridOutcome {
  std::vector<GridEntry> ranked;  // rho descending, weights ascending on ties
  std::vector<std::pair<StrengthWeights, std::string>> skipped;
};

// Evaluates each candidate's Spearman correlation between computed totals
// and ratings. require_constraints drops candidates failing validation.
// Throws InsufficientData when fewer than 3 rated items or an empty grid.
GridOutcome grid_search(const std::vector<StrengthWeights>& candidates,
                        const std::vector<RatedBridge>& rated,
                        bool require_constraints = true);

}  // namespace semweave

#endif  // SEMWEAVE_SCORING_HPP
