#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gasket/errors.hpp"

namespace gasket {

using Letter = std::uint8_t;

/// Finite word over the alphabet {0,...,n}.
struct Word {
    std::vector<Letter> letters;
    int n = 2;

    std::size_t size() const { return letters.size(); }
    bool empty() const { return letters.empty(); }

    void validate() const {
        if (n < 1) throw DimensionMismatch("gasket dimension must be >= 1");
        for (Letter a : letters)
            if (a > n) throw LetterOutOfRange("letter " + std::to_string(a) + " out of range for n=" + std::to_string(n));
    }

    Word prefix(std::size_t k) const {
        return Word{std::vector<Letter>(letters.begin(), letters.begin() + k), n};
    }
    Word concat(const Word& o) const {
        Word w = *this;
        w.letters.insert(w.letters.end(), o.letters.begin(), o.letters.end());
        return w;
    }

    bool operator==(const Word& o) const = default;
};

/// A cell <w> = F_w(S_n); side length 2^{-|w|}.
struct Cell {
    Word word;

    int n() const { return word.n; }
    int level() const { return static_cast<int>(word.size()); }
    bool operator==(const Cell& o) const = default;
};

/// Eventually-constant address: finite word followed by a repeating tail
/// letter.  Identifies a vertex of S_n (or a corner q_i when the word is
/// empty).  Vertices other than corners have exactly two such addresses.
struct PointAddress {
    Word word;
    Letter tail = 0;

    int n() const { return word.n; }

    void validate() const {
        word.validate();
        if (tail > word.n) throw LetterOutOfRange("tail letter out of range");
    }

    /// Letter at position k (0-based) of the infinite address string.
    Letter letter_at(std::size_t k) const { return k < word.size() ? word.letters[k] : tail; }

    bool operator==(const PointAddress& o) const = default;
};

namespace detail {

/// Strips trailing copies of the tail letter from the word.
inline PointAddress strip_tail(PointAddress p) {
    while (!p.word.letters.empty() && p.word.letters.back() == p.tail) p.word.letters.pop_back();
    return p;
}

/// The other address of the same point, <w i tail(j)> -> <w j tail(i)>,
/// assuming the input is tail-stripped.  Corners (empty word) have no dual.
inline std::optional<PointAddress> raw_dual(const PointAddress& p) {
    if (p.word.empty()) return std::nullopt;
    PointAddress q = p;
    std::swap(q.word.letters.back(), q.tail);
    return q;
}

}  // namespace detail

/// Canonical representative: trailing tail letters stripped; of the two dual
/// forms the one whose last word letter is smaller than its tail is kept.
inline PointAddress canonicalize(PointAddress p) {
    p.validate();
    p = detail::strip_tail(p);
    if (!p.word.empty() && p.word.letters.back() > p.tail) {
        p = *detail::raw_dual(p);
    }
    return p;
}

/// The second address of a vertex; absent for corner points <tail(i)>.
/// Expects a canonical input.
inline std::optional<PointAddress> dual_address(const PointAddress& p) {
    return detail::raw_dual(p);
}

/// Both addresses of the point (one for corners, two otherwise).
inline std::vector<PointAddress> all_addresses(const PointAddress& p) {
    std::vector<PointAddress> out{p};
    if (auto d = detail::raw_dual(p)) out.push_back(*d);
    return out;
}

}  // namespace gasket
