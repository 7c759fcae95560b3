#pragma once

#include <stdexcept>
#include <string>

namespace bgsp {

// Every failure the library can raise, by name. The CLI maps each code to an
// exit status: 1 = usage error (bad arguments/shapes), 2 = data error
// (malformed or inconsistent inputs), 3 = numerical failure.
enum class Errc {
  // graph construction
  IndexOutOfRange,
  NegativeWeight,
  SelfLoop,
  DuplicateEdge,
  IsolatedNode,
  TooSmall,
  // spectral
  NonSymmetricShift,
  DimensionMismatch,
  ZeroMaxEigenvalue,
  ConvergenceFailure,
  NegativeEigenvalue,
  // filters
  BandOutOfRange,
  WrongVariant,
  // temporal
  TooShort,
  AsymmetricWindow,
  AboveNyquist,
  // slepian
  BandwidthTooLarge,
  WrongCriterion,
  EmptySelector,
  // pipeline
  BandOverlap,
  RankDeficientCovariates,
  TooFewSamples,
  InsufficientSurrogates,
  UnmappedNode,
  BandsNotPartition,
  // synth
  DisconnectedAfterRetries,
  ModeOutOfRange,
  InvalidParameter,
  // io
  ParseError,
  AsymmetricMatrix,
  RaggedRows,
  MissingTRHeader,
};

// Exit-status category for the CLI.
enum class ErrKind { Usage = 1, Data = 2, Numerical = 3 };

const char* errc_name(Errc c);
ErrKind errc_kind(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message);
  Errc code() const { return code_; }
  const char* name() const { return errc_name(code_); }
  int exit_code() const { return static_cast<int>(errc_kind(code_)); }

 private:
  Errc code_;
};

[[noreturn]] void throw_error(Errc code, const std::string& message);

}  // namespace bgsp
