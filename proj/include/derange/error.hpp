#pragma once

#include <stdexcept>
#include <string>

namespace derange {

// Base for every error the library raises. Each subclass names one failure
// family so callers (and the CLI exit-code mapping) can dispatch on type.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public Error { using Error::Error; };
class AsymmetryError : public Error { using Error::Error; };
class SizeError : public Error { using Error::Error; };
class RangeError : public Error { using Error::Error; };
class FixedPointError : public Error { using Error::Error; };
class NotEdgeDerangementError : public Error { using Error::Error; };
class ForbiddenArcError : public Error { using Error::Error; };
class DisjointnessError : public Error { using Error::Error; };
class InvalidSetError : public Error { using Error::Error; };
class NonTourError : public Error { using Error::Error; };
class NegativeValueError : public Error { using Error::Error; };
class InconsistentStateError : public Error { using Error::Error; };
class BlankEntryError : public Error { using Error::Error; };
class CapExceededError : public Error { using Error::Error; };

} // namespace derange
