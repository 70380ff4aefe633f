#ifndef SEMWEAVE_ERRORS_HPP
#define SEMWEAVE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace semweave {

// Base class for all library errors. Subclasses carry a stable kind()
// string so callers can report failures without RTTI gymnastics.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}

  const std::string& kind() const { return kind_; }

 private:
  std::string kind_;
};

#define SEMWEAVE_DEFINE_ERROR(NAME)                        \
  class NAME : public Error {                              \
   public:                                                 \
    explicit NAME(const std::string& what)                 \
        : Error(#NAME, what) {}                            \
  }

// penman / amr_graph
SEMWEAVE_DEFINE_ERROR(EmptyInput);
SEMWEAVE_DEFINE_ERROR(UnbalancedParens);
SEMWEAVE_DEFINE_ERROR(DuplicateConceptForVariable);
SEMWEAVE_DEFINE_ERROR(DanglingReference);
SEMWEAVE_DEFINE_ERROR(CyclicGraph);
SEMWEAVE_DEFINE_ERROR(PenmanSyntax);
SEMWEAVE_DEFINE_ERROR(MalformedLabel);

// bridging
SEMWEAVE_DEFINE_ERROR(MissingRelationTable);

// scoring
SEMWEAVE_DEFINE_ERROR(InvalidMaxDepth);
SEMWEAVE_DEFINE_ERROR(InsufficientData);

// quality
SEMWEAVE_DEFINE_ERROR(EmptyReference);
SEMWEAVE_DEFINE_ERROR(GeneratorUnavailable);

// generation
SEMWEAVE_DEFINE_ERROR(NoTemplateForKind);
SEMWEAVE_DEFINE_ERROR(UnresolvedPlaceholder);
SEMWEAVE_DEFINE_ERROR(LlmRequestFailed);

// metrics
SEMWEAVE_DEFINE_ERROR(EmptyRelationList);

// pipeline / config / corpus
SEMWEAVE_DEFINE_ERROR(FileNotFound);
SEMWEAVE_DEFINE_ERROR(ParseError);
SEMWEAVE_DEFINE_ERROR(ConstraintViolation);
SEMWEAVE_DEFINE_ERROR(DuplicateRecord);

#undef SEMWEAVE_DEFINE_ERROR

}  // namespace semweave

#endif  // SEMWEAVE_ERRORS_HPP
