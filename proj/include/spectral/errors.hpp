#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace spectral {

class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Graph construction / validation
class AsymmetricError : public Error { using Error::Error; };
class SelfLoopError : public Error { using Error::Error; };
class DisconnectedError : public Error { using Error::Error; };
class IsolatedNodeError : public Error { using Error::Error; };
class InvalidParamsError : public Error { using Error::Error; };
class ConnectivityFailureError : public Error { using Error::Error; };

// Linear algebra
class NotSymmetricError : public Error { using Error::Error; };
class ConvergenceFailureError : public Error { using Error::Error; };
class KOutOfRangeError : public Error { using Error::Error; };
class ShapeMismatchError : public Error { using Error::Error; };

// Clustering / analysis
class EmptyClusterError : public Error { using Error::Error; };
class LabelOutOfRangeError : public Error { using Error::Error; };
class ZeroSignalError : public Error { using Error::Error; };

// IO
class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& reason)
        : Error("parse error at line " + std::to_string(line) + ": " + reason),
          line_(line), reason_(reason) {}
    std::size_t line() const { return line_; }
    const std::string& reason() const { return reason_; }
private:
    std::size_t line_;
    std::string reason_;
};
class UnsupportedPayloadForCsvError : public Error { using Error::Error; };

} // namespace spectral
