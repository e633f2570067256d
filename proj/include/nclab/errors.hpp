#pragma once

#include <stdexcept>
#include <string>

namespace nclab {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A requested word or truncation depth exceeds the stored moment range.
class OutOfRange : public Error {
public:
    using Error::Error;
};

// A moment inside the declared range is not present in the table.
class MissingMoment : public Error {
public:
    using Error::Error;
};

// Mixed alphabets, letters outside 1..d, malformed constructions.
class ContractViolation : public Error {
public:
    using Error::Error;
};

class RowNormExceeded : public Error {
public:
    using Error::Error;
};

class NotDominated : public Error {
public:
    using Error::Error;
};

class DegenerateMeasure : public Error {
public:
    using Error::Error;
};

class NotPositive : public Error {
public:
    using Error::Error;
};

class NonInvertibleConstantTerm : public Error {
public:
    using Error::Error;
};

class SchurConstantTermTooLarge : public Error {
public:
    using Error::Error;
};

class NotStrict : public Error {
public:
    using Error::Error;
};

class UnknownParts : public Error {
public:
    using Error::Error;
};

class UnknownScenario : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

}  // namespace nclab
