#pragma once

#include <gmpxx.h>

#include <sstream>
#include <string>

#include "gasket/address.hpp"
#include "gasket/barycentric.hpp"
#include "gasket/errors.hpp"

namespace gasket {

/// Address text format: "[w1 w2 ... wk | t]", corner "[| t]".
inline std::string to_text(const PointAddress& p) {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < p.word.size(); ++i) {
        if (i) os << ' ';
        os << int(p.word.letters[i]);
    }
    os << (p.word.empty() ? "| " : " | ") << int(p.tail) << ']';
    return os.str();
}

inline std::string to_text(const Cell& c) {
    std::ostringstream os;
    os << '<';
    for (std::size_t i = 0; i < c.word.size(); ++i) {
        if (i) os << ' ';
        os << int(c.word.letters[i]);
    }
    os << '>';
    return os.str();
}

/// Parses "[2 0 2 | 1]" into a point address for dimension n.
inline PointAddress parse_address(const std::string& text, int n) {
    std::string s = text;
    auto l = s.find('[');
    auto r = s.find(']');
    auto bar = s.find('|');
    if (l == std::string::npos || r == std::string::npos || bar == std::string::npos || !(l < bar && bar < r))
        throw ParseError("expected \"[w1 w2 ... | t]\", got: " + text);
    PointAddress p;
    p.word.n = n;
    std::istringstream ws(s.substr(l + 1, bar - l - 1));
    int v;
    while (ws >> v) {
        if (v < 0 || v > n) throw LetterOutOfRange("letter " + std::to_string(v) + " out of range");
        p.word.letters.push_back(static_cast<Letter>(v));
    }
    std::istringstream ts(s.substr(bar + 1, r - bar - 1));
    if (!(ts >> v)) throw ParseError("missing tail letter in: " + text);
    if (v < 0 || v > n) throw LetterOutOfRange("tail " + std::to_string(v) + " out of range");
    p.tail = static_cast<Letter>(v);
    p.validate();
    return p;
}

/// Parses a space-separated word like "2 0 2" (empty string is the top cell).
inline Cell parse_cell(const std::string& text, int n) {
    Cell c;
    c.word.n = n;
    std::istringstream ws(text);
    int v;
    while (ws >> v) {
        if (v < 0 || v > n) throw LetterOutOfRange("letter " + std::to_string(v) + " out of range");
        c.word.letters.push_back(static_cast<Letter>(v));
    }
    return c;
}

/// Parses an exact rational "p/q" or integer "p".
inline mpq_class parse_rational(const std::string& text) {
    mpq_class q;
    if (q.set_str(text, 10) != 0) throw ParseError("bad rational: " + text);
    q.canonicalize();
    if (q.get_den() == 0) throw ParseError("zero denominator: " + text);
    return q;
}

inline std::string rational_str(const mpq_class& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_str();
}

}  // namespace gasket
