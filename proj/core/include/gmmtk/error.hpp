#pragma once

#include <stdexcept>
#include <string>

namespace gmm {

enum class ErrorKind {
  NonConvergence,
  RankDeficient,
  StepUnderflow,
  DegenerateForm,
  Overflow,
  LoopHolonomy,
  QuadratureFailure,
  BorderlineRank,
  MaxTimeExceeded,
  StepCollapse,
  Unconverged,
  ClusterAmbiguity,
  SpectralGapTooSmall,
  AmbiguousMinimum,
  NoPlateau,
  NotRegular,
  SeedExhausted,
  SlabTooLarge,
  DegenerateInterpolation,
  LimitUnresolved,
  IncompleteEnumeration,
  ContainmentViolation,
  FitResidualTooLarge,
  DimensionMismatch,
  DuplicateName,
  UnknownScenario,
  ConfigError,
};

inline const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::NonConvergence: return "NonConvergence";
    case ErrorKind::RankDeficient: return "RankDeficient";
    case ErrorKind::StepUnderflow: return "StepUnderflow";
    case ErrorKind::DegenerateForm: return "DegenerateForm";
    case ErrorKind::Overflow: return "Overflow";
    case ErrorKind::LoopHolonomy: return "LoopHolonomy";
    case ErrorKind::QuadratureFailure: return "QuadratureFailure";
    case ErrorKind::BorderlineRank: return "BorderlineRank";
    case ErrorKind::MaxTimeExceeded: return "MaxTimeExceeded";
    case ErrorKind::StepCollapse: return "StepCollapse";
    case ErrorKind::Unconverged: return "Unconverged";
    case ErrorKind::ClusterAmbiguity: return "ClusterAmbiguity";
    case ErrorKind::SpectralGapTooSmall: return "SpectralGapTooSmall";
    case ErrorKind::AmbiguousMinimum: return "AmbiguousMinimum";
    case ErrorKind::NoPlateau: return "NoPlateau";
    case ErrorKind::NotRegular: return "NotRegular";
    case ErrorKind::SeedExhausted: return "SeedExhausted";
    case ErrorKind::SlabTooLarge: return "SlabTooLarge";
    case ErrorKind::DegenerateInterpolation: return "DegenerateInterpolation";
    case ErrorKind::LimitUnresolved: return "LimitUnresolved";
    case ErrorKind::IncompleteEnumeration: return "IncompleteEnumeration";
    case ErrorKind::ContainmentViolation: return "ContainmentViolation";
    case ErrorKind::FitResidualTooLarge: return "FitResidualTooLarge";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::DuplicateName: return "DuplicateName";
    case ErrorKind::UnknownScenario: return "UnknownScenario";
    case ErrorKind::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what),
        kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace gmm
