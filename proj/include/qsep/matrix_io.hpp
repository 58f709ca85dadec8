#pragma once

#include <iosfwd>
#include <string>

#include "qsep/complex_matrix.hpp"
#include "qsep/errors.hpp"

namespace qsep {

/// Matrix text format:
///   line 1:  dim <d>
///   then d lines of d whitespace-separated complex entries "re<sign>imj",
///   e.g. "0.5-0.25j"; plain reals are accepted on input. '#' starts a
///   comment line. Locale-independent (decimal point only).
/// Throws ParseError with 1-based line/column on malformed input.
ComplexMatrix read_matrix_text(std::istream& in);
ComplexMatrix read_matrix_file(const std::string& path);

void write_matrix_text(std::ostream& out, const ComplexMatrix& m);

/// "re<sign>imj" with round-trip precision.
std::string format_complex(Complex z);

}  // namespace qsep
