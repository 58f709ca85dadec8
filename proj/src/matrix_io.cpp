#include "qsep/matrix_io.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

namespace qsep {

namespace {

struct Token {
    std::string text;
    int line;    // 1-based
    int column;  // 1-based
};

// whitespace-separated tokens; '#' comments out the rest of its line
std::vector<Token> tokenize(std::istream& in) {
    std::vector<Token> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t i = 0;
        while (i < line.size()) {
            if (std::isspace(static_cast<unsigned char>(line[i]))) {
                ++i;
                continue;
            }
            if (line[i] == '#') break;
            std::size_t start = i;
            while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
            out.push_back({line.substr(start, i - start), lineno, static_cast<int>(start) + 1});
        }
    }
    return out;
}

double parse_double(std::string_view text, const Token& tok, std::size_t offset) {
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size())
        throw ParseError("bad number '" + std::string(text) + "'", tok.line,
                         tok.column + static_cast<int>(offset));
    return value;
}

// "re", "re+imj", "re-imj"
Complex parse_complex(const Token& tok) {
    const std::string_view text = tok.text;
    // split at the last sign that is not a leading sign or an exponent sign
    std::size_t split = std::string_view::npos;
    for (std::size_t i = 1; i < text.size(); ++i) {
        if ((text[i] == '+' || text[i] == '-') &&
            text[i - 1] != 'e' && text[i - 1] != 'E')
            split = i;
    }
    if (text.empty()) throw ParseError("empty entry", tok.line, tok.column);
    if (text.back() == 'j') {
        if (split == std::string_view::npos)
            throw ParseError("imaginary entry '" + std::string(text) + "' needs a real part",
                             tok.line, tok.column);
        const double re = parse_double(text.substr(0, split), tok, 0);
        const std::string_view im_text = text.substr(split, text.size() - split - 1);
        double im = parse_double(im_text.size() > 1 ? im_text.substr(1) : im_text, tok, split + 1);
        if (im_text[0] == '-') im = -im;
        return {re, im};
    }
    return {parse_double(text, tok, 0), 0.0};
}

}  // namespace

ComplexMatrix read_matrix_text(std::istream& in) {
    const std::vector<Token> tokens = tokenize(in);
    if (tokens.size() < 2 || tokens[0].text != "dim")
        throw ParseError("expected header 'dim <d>'", tokens.empty() ? 1 : tokens[0].line,
                         tokens.empty() ? 1 : tokens[0].column);
    int dim = 0;
    const auto& dim_tok = tokens[1];
    const auto [ptr, ec] =
        std::from_chars(dim_tok.text.data(), dim_tok.text.data() + dim_tok.text.size(), dim);
    if (ec != std::errc{} || ptr != dim_tok.text.data() + dim_tok.text.size() || dim < 1)
        throw ParseError("bad dimension '" + dim_tok.text + "'", dim_tok.line, dim_tok.column);

    const std::size_t want = static_cast<std::size_t>(dim) * dim;
    if (tokens.size() - 2 < want) {
        const Token& last = tokens.back();
        throw ParseError("expected " + std::to_string(want) + " entries, found " +
                             std::to_string(tokens.size() - 2),
                         last.line, last.column);
    }
    if (tokens.size() - 2 > want) {
        const Token& extra = tokens[2 + want];
        throw ParseError("unexpected trailing entry '" + extra.text + "'", extra.line, extra.column);
    }

    ComplexMatrix m(static_cast<std::size_t>(dim));
    for (std::size_t k = 0; k < want; ++k) {
        const std::size_t r = k / dim, c = k % dim;
        m(r, c) = parse_complex(tokens[2 + k]);
    }
    return m;
}

ComplexMatrix read_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'", 0, 0);
    return read_matrix_text(in);
}

std::string format_complex(Complex z) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g%+.17gj", z.real(), z.imag());
    return buf;
}

void write_matrix_text(std::ostream& out, const ComplexMatrix& m) {
    out << "dim " << m.dim() << "\n";
    for (std::size_t r = 0; r < m.dim(); ++r) {
        for (std::size_t c = 0; c < m.dim(); ++c) {
            if (c) out << ' ';
            out << format_complex(m(r, c));
        }
        out << "\n";
    }
}

}  // namespace qsep
