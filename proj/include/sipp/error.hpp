#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sipp {

enum class Errc {
  DegreeMismatch,
  InvalidPermutation,
  OrderBoundExceeded,
  ElementNotInGroup,
  NotASubgroup,
  NotASubgroupOf,
  NotPrime,
  NotEquivariant,
  InvalidAction,
  TargetMismatch,
  ConjugateNotContained,
  PreconditionViolated,
  MissingEvaluation,
  NotSippCover,
  DegreeOutOfRange,
  PointCapExceeded,
  FieldMismatch,
  DimensionMismatch,
  NotInvertible,
  NotAnIsomorphism,
  NotAMorphism,
  NotAHomomorphism,
  NotAPullback,
  WrongBaseGSet,
  CocycleViolated,
  NotEffective,
  IndexNotInvertible,
  CompatibilityFailed,
  ConditionIFailed,
  ConditionIIFailed,
  SigmaNotIntertwiner,
  NotAnAModule,
  Overflow,
  ParseError,
};

std::string_view errc_name(Errc c);

// Carries the failing group elements (as indices) when a check names witnesses.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& detail, std::vector<std::uint32_t> witnesses = {})
      : std::runtime_error(std::string(errc_name(code)) + (detail.empty() ? "" : ": " + detail)),
        code_(code),
        witnesses_(std::move(witnesses)) {}

  Errc code() const noexcept { return code_; }
  const std::vector<std::uint32_t>& witnesses() const noexcept { return witnesses_; }

 private:
  Errc code_;
  std::vector<std::uint32_t> witnesses_;
};

inline std::string_view errc_name(Errc c) {
  switch (c) {
    case Errc::DegreeMismatch: return "DegreeMismatch";
    case Errc::InvalidPermutation: return "InvalidPermutation";
    case Errc::OrderBoundExceeded: return "OrderBoundExceeded";
    case Errc::ElementNotInGroup: return "ElementNotInGroup";
    case Errc::NotASubgroup: return "NotASubgroup";
    case Errc::NotASubgroupOf: return "NotASubgroupOf";
    case Errc::NotPrime: return "NotPrime";
    case Errc::NotEquivariant: return "NotEquivariant";
    case Errc::InvalidAction: return "InvalidAction";
    case Errc::TargetMismatch: return "TargetMismatch";
    case Errc::ConjugateNotContained: return "ConjugateNotContained";
    case Errc::PreconditionViolated: return "PreconditionViolated";
    case Errc::MissingEvaluation: return "MissingEvaluation";
    case Errc::NotSippCover: return "NotSippCover";
    case Errc::DegreeOutOfRange: return "DegreeOutOfRange";
    case Errc::PointCapExceeded: return "PointCapExceeded";
    case Errc::FieldMismatch: return "FieldMismatch";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::NotInvertible: return "NotInvertible";
    case Errc::NotAnIsomorphism: return "NotAnIsomorphism";
    case Errc::NotAMorphism: return "NotAMorphism";
    case Errc::NotAHomomorphism: return "NotAHomomorphism";
    case Errc::NotAPullback: return "NotAPullback";
    case Errc::WrongBaseGSet: return "WrongBaseGSet";
    case Errc::CocycleViolated: return "CocycleViolated";
    case Errc::NotEffective: return "NotEffective";
    case Errc::IndexNotInvertible: return "IndexNotInvertible";
    case Errc::CompatibilityFailed: return "CompatibilityFailed";
    case Errc::ConditionIFailed: return "ConditionIFailed";
    case Errc::ConditionIIFailed: return "ConditionIIFailed";
    case Errc::SigmaNotIntertwiner: return "SigmaNotIntertwiner";
    case Errc::NotAnAModule: return "NotAnAModule";
    case Errc::Overflow: return "Overflow";
    case Errc::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace sipp
