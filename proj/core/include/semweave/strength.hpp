#ifndef SEMWEAVE_STRENGTH_HPP
#define SEMWEAVE_STRENGTH_HPP

#include <string>
#include <vector>

namespace semweave {

struct StrengthWeights {
  double alpha = 0.9;
  double beta = 0.6;
  double gamma = 0.3;
  double delta = 0.1;

  double sum() const { return alpha + beta + gamma + delta; }
};

// Constraint check: alpha >= beta >= gamma, every weight >= 0.1,
// |alpha-beta| >= 0.2, |beta-gamma| >= 0.2. Returns one message per
// violated constraint; empty means valid.
std::vector<std::string> validate_weights(const StrengthWeights& w);

enum class ComplexityVariant { MainText, AppendixD };
enum class EntitiesVariant { MainText, AppendixD };

struct StrengthBreakdown {
  double s_type = 0.0;
  double s_entities = 0.0;
  double s_complexity = 0.0;
  double s_diversity = 0.0;
  double total = 0.0;
};

// total = (a*s_type + b*s_entities + g*s_complexity + d*s_diversity) / (a+b+g+d)
double combine_strength(double s_type, double s_entities, double s_complexity,
                        double s_diversity, const StrengthWeights& w);

}  // namespace semweave

#endif  // SEMWEAVE_STRENGTH_HPP
