#include "semweave/quality.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>

#include "semweave/errors.hpp"

namespace semweave {

namespace {

std::map<std::vector<std::string>, int> ngram_counts(
    const std::vector<std::string>& tokens, int n) {
  std::map<std::vector<std::string>, int> counts;
  if (static_cast<int>(tokens.size()) < n) return counts;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    std::vector<std::string> gram(tokens.begin() + i, tokens.begin() + i + n);
    ++counts[gram];
  }
  return counts;
}

}  // namespace

std::vector<std::string> tokenize(const std::string& text) {
  std::vector<std::string> tokens;
  std::string word;
  auto flush = [&] {
    if (!word.empty()) {
      tokens.push_back(word);
      word.clear();
    }
  };
  for (char c : text) {
    unsigned char u = static_cast<unsigned char>(c);
    if (std::isalnum(u) || c == '\'') {
      word.push_back(static_cast<char>(std::tolower(u)));
    } else if (std::isspace(u)) {
      flush();
    } else {
      flush();
      tokens.push_back(std::string(1, c));
    }
  }
  flush();
  return tokens;
}

double bleu(const std::vector<std::string>& reference,
            const std::vector<std::string>& candidate,
            const QualityConfig& config) {
  if (reference.empty()) throw EmptyReference("reference tokens are empty");
  if (candidate.empty()) return 0.0;

  double log_sum = 0.0;
  for (int n = 1; n <= config.max_ngram; ++n) {
    auto ref_counts = ngram_counts(reference, n);
    auto cand_counts = ngram_counts(candidate, n);
    long total = 0;
    long matched = 0;
    for (const auto& [gram, count] : cand_counts) {
      total += count;
      auto it = ref_counts.find(gram);
      if (it != ref_counts.end()) matched += std::min(count, it->second);
    }
    double precision =
        total > 0 && matched > 0
            ? static_cast<double>(matched) / static_cast<double>(total)
            : config.smoothing_epsilon;
    log_sum += std::log(precision);
  }
  double geo_mean = std::exp(log_sum / config.max_ngram);

  double c = static_cast<double>(candidate.size());
  double r = static_cast<double>(reference.size());
  double brevity = c >= r ? 1.0 : std::exp(1.0 - r / c);
  return brevity * geo_mean;
}

double bleu(const std::string& reference, const std::string& candidate,
            const QualityConfig& config) {
  return bleu(tokenize(reference), tokenize(candidate), config);
}

std::string IdentityGenerator::generate(const RoundTripItem& item) {
  return item.text;
}

std::string EmptyGenerator::generate(const RoundTripItem& item) {
  (void)item;
  return "";
}

DegradingGenerator::DegradingGenerator(std::set<std::string> degrade_ids)
    : degrade_ids_(std::move(degrade_ids)) {}

std::string DegradingGenerator::generate(const RoundTripItem& item) {
  if (degrade_ids_.count(item.graph_id)) {
    return "lorem ipsum dolor sit amet";
  }
  return item.text;
}

RoundTripReport round_trip_gate(const std::vector<RoundTripItem>& items,
                                TextGenerator& generator,
                                const QualityConfig& config) {
  RoundTripReport report;
  for (const auto& item : items) {
    RoundTripItemResult result;
    result.graph_id = item.graph_id;
    result.original = item.text;
    try {
      result.regenerated = generator.generate(item);
    } catch (const std::exception&) {
      result.generator_failed = true;
    }
    if (!result.generator_failed) {
      result.bleu_score = bleu(item.text, result.regenerated, config);
      result.accepted = result.bleu_score > config.bleu_threshold;
    }
    if (result.accepted) ++report.accepted_count;
    if (result.generator_failed) ++report.failed_count;
    report.items.push_back(std::move(result));
  }
  int denominator = static_cast<int>(items.size());
  if (config.exclude_failed_from_denominator) {
    denominator -= report.failed_count;
  }
  report.retention =
      denominator > 0
          ? static_cast<double>(report.accepted_count) / denominator
          : 1.0;
  return report;
}

}  // namespace semweave
