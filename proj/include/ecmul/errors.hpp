#ifndef ECMUL_ERRORS_HPP
#define ECMUL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ecmul {

/// Precondition or invariant violated by the caller (mismatched moduli,
/// off-curve point, scalar out of range, ...).
class ContractViolation : public std::runtime_error {
public:
    explicit ContractViolation(const std::string& what) : std::runtime_error("contract violation: " + what) {}
};

/// A precomputed table failed its integrity re-verification.
class FaultDetected : public std::runtime_error {
public:
    explicit FaultDetected(const std::string& what) : std::runtime_error("fault detected: " + what) {}
};

/// Lookup of an unknown name (curve, strategy, ...).
class NotFound : public std::runtime_error {
public:
    explicit NotFound(const std::string& what) : std::runtime_error("not found: " + what) {}
};

/// Malformed input data (hex strings, serialized tables, ciphertext files).
class FormatError : public std::runtime_error {
public:
    explicit FormatError(const std::string& what) : std::runtime_error("format error: " + what) {}
};

/// Numeric argument outside the supported domain.
class DomainError : public std::runtime_error {
public:
    explicit DomainError(const std::string& what) : std::runtime_error("domain error: " + what) {}
};

/// Message-to-point encoding could not find a curve point.
class EncodingFailure : public std::runtime_error {
public:
    explicit EncodingFailure(const std::string& what) : std::runtime_error("encoding failure: " + what) {}
};

/// Invalid benchmark or simulation configuration.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error("config error: " + what) {}
};

}  // namespace ecmul

#endif
