#ifndef SEMWEAVE_QUALITY_HPP
#define SEMWEAVE_QUALITY_HPP

#include <set>
#include <string>
#include <vector>

namespace semweave {

struct QualityConfig {
  double bleu_threshold = 0.72;
  int max_ngram = 4;
  double smoothing_epsilon = 1e-9;
  // when true, items whose generator call failed leave the retention
  // denominator; by default they count as rejected
  bool exclude_failed_from_denominator = false;
};

// Lowercased, split on whitespace with punctuation as separate tokens.
std::vector<std::string> tokenize(const std::string& text);

// BLEU with modified n-gram precisions (n = 1..max_ngram), epsilon
// smoothing for zero counts, geometric mean, brevity penalty.
// Throws EmptyReference.
double bleu(const std::vector<std::string>& reference,
            const std::vector<std::string>& candidate,
            const QualityConfig& config = {});

double bleu(const std::string& reference, const std::string& candidate,
            const QualityConfig& config = {});

struct RoundTripItem {
  std::string graph_id;
  std::string text;    // original sentence T
  std::string penman;  // serialized graph
};

// Pluggable graph-to-text generation. Implementations regenerate text
// from the PENMAN payload; item.text is available for test stubs.
// Failures are signalled by throwing.
class TextGenerator {
 public:
  virtual ~TextGenerator() = default;
  virtual std::string generate(const RoundTripItem& item) = 0;
};

// Returns the original text unchanged.
class IdentityGenerator : public TextGenerator {
 public:
  std::string generate(const RoundTripItem& item) override;
};

// Returns empty text for every item.
class EmptyGenerator : public TextGenerator {
 public:
  std::string generate(const RoundTripItem& item) override;
};

// Echoes the original text except for a fixed set of graph ids, which
// receive deterministically degraded text instead.
class DegradingGenerator : public TextGenerator {
 public:
  explicit DegradingGenerator(std::set<std::string> degrade_ids);
  std::string generate(const RoundTripItem& item) override;

 private:
  std::set<std::string> degrade_ids_;
};

struct RoundTripItemResult {
  std::string graph_id;
  std::string original;
  std::string regenerated;
  double bleu_score = 0.0;
  bool accepted = false;
  bool generator_failed = false;
};

struct RoundTripReport {
  std::vector<RoundTripItemResult> items;
  double retention = 0.0;  // accepted / denominator
  int accepted_count = 0;
  int failed_count = 0;
};

// Scores each item with bleu(T, generator(graph)) and accepts when the
// score exceeds config.bleu_threshold. Generator exceptions mark the
// item failed instead of aborting the gate.
RoundTripReport round_trip_gate(const std::vector<RoundTripItem>& items,
                                TextGenerator& generator,
                                const QualityConfig& config = {});

}  // namespace semweave

#endif  // SEMWEAVE_QUALITY_HPP
