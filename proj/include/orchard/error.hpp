#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace orchard {

enum class Errc {
  // network validation
  EmptyNetwork,
  InvalidName,
  DuplicateVertex,
  UnknownVertex,
  CycleDetected,
  ParallelArcs,
  BadDegree,
  MultipleRoots,
  UnlabeledLeaf,
  LabelOnInternalVertex,
  DuplicateLeafLabel,
  BadInternalOrder,
  UnknownLeaf,
  // text formats
  SyntaxError,
  HybridTagMismatch,
  RaggedRow,
  NegativeEntry,
  // profiles and reductions
  LeafSetMismatch,
  NotACherry,
  NotAReticulatedCherry,
  NoCandidateCoordinate,
  NegativeEntryAfterCut,
  // analysis, reconstruction, generation
  BudgetExceeded,
  NotFound,
  NotReconstructible,
  ScriptViolation,
  InvalidParameters,
  GenerationBudgetExceeded,
};

constexpr std::string_view errc_name(Errc code) {
  switch (code) {
    case Errc::EmptyNetwork: return "EmptyNetwork";
    case Errc::InvalidName: return "InvalidName";
    case Errc::DuplicateVertex: return "DuplicateVertex";
    case Errc::UnknownVertex: return "UnknownVertex";
    case Errc::CycleDetected: return "CycleDetected";
    case Errc::ParallelArcs: return "ParallelArcs";
    case Errc::BadDegree: return "BadDegree";
    case Errc::MultipleRoots: return "MultipleRoots";
    case Errc::UnlabeledLeaf: return "UnlabeledLeaf";
    case Errc::LabelOnInternalVertex: return "LabelOnInternalVertex";
    case Errc::DuplicateLeafLabel: return "DuplicateLeafLabel";
    case Errc::BadInternalOrder: return "BadInternalOrder";
    case Errc::UnknownLeaf: return "UnknownLeaf";
    case Errc::SyntaxError: return "SyntaxError";
    case Errc::HybridTagMismatch: return "HybridTagMismatch";
    case Errc::RaggedRow: return "RaggedRow";
    case Errc::NegativeEntry: return "NegativeEntry";
    case Errc::LeafSetMismatch: return "LeafSetMismatch";
    case Errc::NotACherry: return "NotACherry";
    case Errc::NotAReticulatedCherry: return "NotAReticulatedCherry";
    case Errc::NoCandidateCoordinate: return "NoCandidateCoordinate";
    case Errc::NegativeEntryAfterCut: return "NegativeEntryAfterCut";
    case Errc::BudgetExceeded: return "BudgetExceeded";
    case Errc::NotFound: return "NotFound";
    case Errc::NotReconstructible: return "NotReconstructible";
    case Errc::ScriptViolation: return "ScriptViolation";
    case Errc::InvalidParameters: return "InvalidParameters";
    case Errc::GenerationBudgetExceeded: return "GenerationBudgetExceeded";
  }
  return "Unknown";
}

/// Domain error thrown by every operation in the library.
///
/// `line`/`column` are 1-based and only meaningful for text-format errors
/// (zero otherwise). `subject` names the vertex, leaf or coordinate the
/// error is about, when there is one.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message, std::string subject = {})
      : std::runtime_error(message), code_(code), subject_(std::move(subject)) {}

  Error(Errc code, const std::string& message, std::size_t line, std::size_t column)
      : std::runtime_error(message), code_(code), line_(line), column_(column) {}

  Errc code() const noexcept { return code_; }
  const std::string& subject() const noexcept { return subject_; }
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  bool has_location() const noexcept { return line_ != 0; }

 private:
  Errc code_;
  std::string subject_;
  std::size_t line_ = 0;
  std::size_t column_ = 0;
};

}  // namespace orchard
