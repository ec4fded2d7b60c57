#pragma once

#include <stdexcept>
#include <string>

namespace gasket {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct LetterOutOfRange : Error {
    using Error::Error;
};
struct NotOnGasket : Error {
    using Error::Error;
};
struct SamePoint : Error {
    using Error::Error;
};
struct NotInCell : Error {
    using Error::Error;
};
struct DimensionMismatch : Error {
    using Error::Error;
};
struct BudgetExceeded : Error {
    using Error::Error;
};
struct NoCommonPath : Error {
    using Error::Error;
};
struct OutsideWindow : Error {
    using Error::Error;
};
struct NotConnected : Error {
    using Error::Error;
};
struct InvalidWeights : Error {
    using Error::Error;
};
struct DomainError : Error {
    using Error::Error;
};
struct ParseError : Error {
    using Error::Error;
};

}  // namespace gasket
