#pragma once

#include <stdexcept>
#include <string>

namespace specres {

// Base class for everything thrown by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Argument outside an operation's domain (non-finite input, bad range, ...).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

// Gamma evaluated within tolerance of a nonpositive integer.
class PoleOfGamma : public Error {
public:
    using Error::Error;
};

// Moment matrix condition estimate above the safety threshold.
class IllConditioned : public Error {
public:
    using Error::Error;
};

// Filter scales duplicated, below 1, or of the wrong count.
class InvalidScales : public Error {
public:
    using Error::Error;
};

// Adaptive integration could not meet tolerance within its panel budget.
class QuadratureFailure : public Error {
public:
    using Error::Error;
};

// User-supplied schedule parameter m too small for the target pole.
class ScheduleViolation : public Error {
public:
    using Error::Error;
};

// Truncation level must exceed 1 so that ln(cutoff) > 0.
class InvalidCutoff : public Error {
public:
    using Error::Error;
};

// Malformed spectrum file; carries the 1-based line number (0 = whole file).
class ParseError : public Error {
public:
    ParseError(const std::string& path, long line, const std::string& reason)
        : Error(path + ":" + std::to_string(line) + ": " + reason), line_(line) {}
    long line() const { return line_; }

private:
    long line_;
};

// Spectrum file contained no entries.
class EmptySpectrum : public Error {
public:
    using Error::Error;
};

// Eigenvalue <= 0 in input data; zero modes must be removed beforehand.
class NonpositiveEigenvalue : public Error {
public:
    using Error::Error;
};

// Too few usable points for a fit.
class InsufficientData : public Error {
public:
    using Error::Error;
};

// File could not be opened for reading or writing.
class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace specres
