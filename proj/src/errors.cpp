#include "bgsp/errors.hpp"

namespace bgsp {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::IndexOutOfRange: return "IndexOutOfRange";
    case Errc::NegativeWeight: return "NegativeWeight";
    case Errc::SelfLoop: return "SelfLoop";
    case Errc::DuplicateEdge: return "DuplicateEdge";
    case Errc::IsolatedNode: return "IsolatedNode";
    case Errc::TooSmall: return "TooSmall";
    case Errc::NonSymmetricShift: return "NonSymmetricShift";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::ZeroMaxEigenvalue: return "ZeroMaxEigenvalue";
    case Errc::ConvergenceFailure: return "ConvergenceFailure";
    case Errc::NegativeEigenvalue: return "NegativeEigenvalue";
    case Errc::BandOutOfRange: return "BandOutOfRange";
    case Errc::WrongVariant: return "WrongVariant";
    case Errc::TooShort: return "TooShort";
    case Errc::AsymmetricWindow: return "AsymmetricWindow";
    case Errc::AboveNyquist: return "AboveNyquist";
    case Errc::BandwidthTooLarge: return "BandwidthTooLarge";
    case Errc::WrongCriterion: return "WrongCriterion";
    case Errc::EmptySelector: return "EmptySelector";
    case Errc::BandOverlap: return "BandOverlap";
    case Errc::RankDeficientCovariates: return "RankDeficientCovariates";
    case Errc::TooFewSamples: return "TooFewSamples";
    case Errc::InsufficientSurrogates: return "InsufficientSurrogates";
    case Errc::UnmappedNode: return "UnmappedNode";
    case Errc::BandsNotPartition: return "BandsNotPartition";
    case Errc::DisconnectedAfterRetries: return "DisconnectedAfterRetries";
    case Errc::ModeOutOfRange: return "ModeOutOfRange";
    case Errc::InvalidParameter: return "InvalidParameter";
    case Errc::ParseError: return "ParseError";
    case Errc::AsymmetricMatrix: return "AsymmetricMatrix";
    case Errc::RaggedRows: return "RaggedRows";
    case Errc::MissingTRHeader: return "MissingTRHeader";
  }
  return "UnknownError";
}

ErrKind errc_kind(Errc c) {
  switch (c) {
    // Malformed or inconsistent input data.
    case Errc::IndexOutOfRange:
    case Errc::NegativeWeight:
    case Errc::SelfLoop:
    case Errc::DuplicateEdge:
    case Errc::IsolatedNode:
    case Errc::UnmappedNode:
    case Errc::RankDeficientCovariates:
    case Errc::TooFewSamples:
    case Errc::ParseError:
    case Errc::AsymmetricMatrix:
    case Errc::RaggedRows:
    case Errc::MissingTRHeader:
      return ErrKind::Data;
    // Numerical / stochastic failures.
    case Errc::ZeroMaxEigenvalue:
    case Errc::ConvergenceFailure:
    case Errc::NegativeEigenvalue:
    case Errc::DisconnectedAfterRetries:
      return ErrKind::Numerical;
    // Everything else is a misuse of the API / CLI arguments.
    default:
      return ErrKind::Usage;
  }
}

Error::Error(Errc code, const std::string& message)
    : std::runtime_error(std::string(errc_name(code)) + ": " + message),
      code_(code) {}

void throw_error(Errc code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace bgsp
