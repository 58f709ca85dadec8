#pragma once

#include <stdexcept>
#include <string>

namespace qsep {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotHermitian : Error {
    explicit NotHermitian(double defect)
        : Error("matrix is not Hermitian (max |M - M^dag| = " + std::to_string(defect) + ")"),
          defect(defect) {}
    double defect;
};

struct NotPSD : Error {
    explicit NotPSD(double eigenvalue)
        : Error("matrix is not positive semidefinite (eigenvalue " + std::to_string(eigenvalue) + ")"),
          eigenvalue(eigenvalue) {}
    double eigenvalue;
};

struct TraceNotOne : Error {
    explicit TraceNotOne(double trace)
        : Error("trace is " + std::to_string(trace) + ", expected 1"), trace(trace) {}
    double trace;
};

struct BadIndexSet : Error {
    using Error::Error;
};

struct BadExcitationNumber : Error {
    using Error::Error;
};

struct SupportViolation : Error {
    using Error::Error;
};

struct DegenerateSupport : Error {
    using Error::Error;
};

/// Text-input errors; line and column are 1-based.
struct ParseError : Error {
    ParseError(const std::string& what, int line, int column)
        : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
          line(line),
          column(column) {}
    int line;
    int column;
};

}  // namespace qsep
