#pragma once

#include <stdexcept>
#include <string>

namespace fas {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParamError : Error { using Error::Error; };
struct LengthMismatch : Error { using Error::Error; };
struct DlogOutOfRange : Error { using Error::Error; };
struct DecodeError : Error { using Error::Error; };
struct InvalidStatement : Error { using Error::Error; };
struct PreSigInvalid : Error { using Error::Error; };
struct WitnessMismatch : Error { using Error::Error; };
struct RelationUnsatisfied : Error { using Error::Error; };
struct AuxInvalid : Error { using Error::Error; };
struct ModeError : Error { using Error::Error; };
struct BoundExceeded : Error { using Error::Error; };
struct ExtractFailed : Error { using Error::Error; };
struct EnvelopeError : Error { using Error::Error; };

}  // namespace fas
