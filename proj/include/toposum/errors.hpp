#pragma once

#include <stdexcept>
#include <string>

namespace toposum {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Input-class failures (CLI exit code 1).
struct InputError : Error {
    using Error::Error;
};
struct IoError : InputError {
    using InputError::InputError;
};
struct InvalidUtf8 : InputError {
    using InputError::InputError;
};
struct EmptyDocument : InputError {
    using InputError::InputError;
};
struct MalformedRecord : InputError {
    using InputError::InputError;
};
struct TooFewSentences : InputError {
    using InputError::InputError;
};
struct EmptyAfterTokenization : InputError {
    using InputError::InputError;
};
struct TokenLimitExceeded : InputError {
    using InputError::InputError;
};
struct UnmatchedId : InputError {
    using InputError::InputError;
};
struct RefusedEmptySummary : InputError {
    using InputError::InputError;
};

// Configuration-class failures (CLI exit code 2).
struct ConfigError : Error {
    using Error::Error;
};
struct PoolExceedsBudget : ConfigError {
    using ConfigError::ConfigError;
};

// Embedding-provider failures (CLI exit code 3).
struct ProviderError : Error {
    using Error::Error;
};
struct CacheMiss : ProviderError {
    using ProviderError::ProviderError;
};
struct HttpFailure : ProviderError {
    using ProviderError::ProviderError;
};
struct DimensionMismatch : ProviderError {
    using ProviderError::ProviderError;
};

// Internal contract violations; escaping one to the CLI is a bug.
struct NodeAbsent : Error {
    using Error::Error;
};
struct InvalidFiltration : Error {
    using Error::Error;
};
struct EmptyPool : Error {
    using Error::Error;
};

} // namespace toposum
