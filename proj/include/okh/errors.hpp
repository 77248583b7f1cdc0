#pragma once

#include <stdexcept>
#include <string>

namespace okh {

// Base class for all errors raised by this library. Everything thrown on a
// bad input or an unsatisfiable request derives from this, so callers (and
// the CLI) can catch one type.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// A braid word contains a zero letter, or the word text cannot be parsed.
struct MalformedWord : Error {
    using Error::Error;
};

// A letter references a strand pair outside 1..b-1, or a conjugation index
// is out of range for the strand count.
struct StrandOutOfRange : Error {
    using Error::Error;
};

// A positional index (letter index, crossing index, ...) is out of range.
struct IndexError : Error {
    using Error::Error;
};

// Neither braid-group rewrite applies at the requested site.
struct RelationNotApplicable : Error {
    using Error::Error;
};

// A grid diagram fails validation (not a permutation pair, X meets O, ...).
struct MalformedGrid : Error {
    using Error::Error;
};

// No surgery arc exists at the requested crossing site (its state is 1).
struct NoArcAtSite : Error {
    using Error::Error;
};

// The vertex passed as a square root does not have state 0 at both of the
// requested crossings.
struct NotASquareRoot : Error {
    using Error::Error;
};

// Matrix/vector dimensions do not match.
struct ShapeError : Error {
    using Error::Error;
};

// The letter at the requested index is not a positive crossing.
struct NotPositiveCrossing : Error {
    using Error::Error;
};

// The requested (source, kind) combination cannot be rendered.
struct UnsupportedRender : Error {
    using Error::Error;
};

} // namespace okh
