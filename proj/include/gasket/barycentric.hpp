#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "gasket/address.hpp"
#include "gasket/dyadic.hpp"
#include "gasket/errors.hpp"

namespace gasket {

/// Barycentric coordinates of a point of S_n: an (n+1)-tuple of exact dyadic
/// rationals summing to 1.  Membership in the gasket is the digit-interleaving
/// condition checked by bary_to_address.
struct BaryCoord {
    std::vector<Dyadic> coords;

    int n() const { return static_cast<int>(coords.size()) - 1; }
    const Dyadic& operator[](std::size_t i) const { return coords[i]; }

    void validate() const {
        if (coords.size() < 2) throw DimensionMismatch("need at least 2 coordinates");
        Dyadic sum;
        for (const Dyadic& c : coords) {
            if (c < Dyadic(0) || c > Dyadic(1)) throw DomainError("barycentric coordinate outside [0,1]");
            sum = sum + c;
        }
        if (!sum.is_one()) throw DomainError("barycentric coordinates must sum to 1");
    }

    bool operator==(const BaryCoord& o) const = default;
    bool operator<(const BaryCoord& o) const {
        for (std::size_t i = 0; i < std::min(coords.size(), o.coords.size()); ++i) {
            if (coords[i] != o.coords[i]) return coords[i] < o.coords[i];
        }
        return coords.size() < o.coords.size();
    }
};

/// Exact coordinates from an address: c_i collects 2^{-j} over word positions
/// j with w_j = i, and the tail contributes 2^{-|w|} to c_tail.
inline BaryCoord address_to_bary(const PointAddress& p) {
    p.validate();
    BaryCoord b;
    b.coords.assign(p.n() + 1, Dyadic(0));
    for (std::size_t j = 0; j < p.word.size(); ++j) {
        Letter i = p.word.letters[j];
        b.coords[i] = b.coords[i] + Dyadic::one_over_pow2(static_cast<unsigned>(j + 1));
    }
    b.coords[p.tail] = b.coords[p.tail] + Dyadic::one_over_pow2(static_cast<unsigned>(p.word.size()));
    return b;
}

namespace detail {

inline void bary_to_address_rec(const std::vector<Dyadic>& c, std::vector<Letter>& prefix, int n,
                                std::vector<PointAddress>& out) {
    const Dyadic half(mpz_class(1), 1);
    for (int i = 0; i <= n; ++i) {
        if (c[i].is_one()) {
            PointAddress p{Word{prefix, n}, static_cast<Letter>(i)};
            out.push_back(strip_tail(p));
            return;
        }
    }
    for (int i = 0; i <= n; ++i) {
        if (c[i] >= half) {
            std::vector<Dyadic> next(c.size());
            for (int k = 0; k <= n; ++k) next[k] = c[k].shifted_up(1);
            next[i] = next[i] - Dyadic(1);
            prefix.push_back(static_cast<Letter>(i));
            bary_to_address_rec(next, prefix, n, out);
            prefix.pop_back();
        }
    }
}

}  // namespace detail

/// Greedy digit extraction with branching over both binary expansions at
/// vertices.  Returns both addresses of a vertex (one for corners); throws
/// NotOnGasket when no valid expansion exists.
inline std::vector<PointAddress> bary_to_address(const BaryCoord& b) {
    b.validate();
    std::vector<PointAddress> out;
    std::vector<Letter> prefix;
    detail::bary_to_address_rec(b.coords, prefix, b.n(), out);
    if (out.empty()) throw NotOnGasket("coordinates admit no interleaved dyadic expansion");
    std::sort(out.begin(), out.end(), [](const PointAddress& a, const PointAddress& c) {
        return a.word.letters < c.word.letters || (a.word.letters == c.word.letters && a.tail < c.tail);
    });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

/// F_i on coordinates: the i-th coordinate maps to (1+c_i)/2, others halve.
inline BaryCoord apply_map(Letter i, BaryCoord b) {
    for (Dyadic& c : b.coords) c = c.shifted_down(1);
    b.coords[i] = b.coords[i] + Dyadic(mpz_class(1), 1);
    return b;
}

/// F_w = F_{w_1} o ... o F_{w_m} on coordinates.
inline BaryCoord apply_map(const Word& w, BaryCoord b) {
    w.validate();
    for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) b = apply_map(*it, std::move(b));
    return b;
}

/// F_w on addresses: word concatenation.
inline PointAddress apply_map(const Word& w, const PointAddress& p) {
    w.validate();
    p.validate();
    if (w.n != p.n()) throw DimensionMismatch("map and point dimensions differ");
    return canonicalize(PointAddress{w.concat(p.word), p.tail});
}

/// F_w^{-1} on coordinates; throws NotInCell when p is not in <w>.
inline BaryCoord inverse_map(const Word& w, BaryCoord b) {
    const Dyadic half(mpz_class(1), 1);
    for (Letter i : w.letters) {
        if (b.coords[i] < half) throw NotInCell("point is not in the cell");
        for (Dyadic& c : b.coords) c = c.shifted_up(1);
        b.coords[i] = b.coords[i] - Dyadic(1);
    }
    return b;
}

/// F_w^{-1} on addresses (prefix strip over either address form).
inline PointAddress inverse_map(const Word& w, const PointAddress& p) {
    w.validate();
    p.validate();
    for (const PointAddress& a : all_addresses(detail::strip_tail(p))) {
        bool match = true;
        for (std::size_t k = 0; k < w.size() && match; ++k)
            if (a.letter_at(k) != w.letters[k]) match = false;
        if (!match) continue;
        PointAddress rel;
        rel.word.n = w.n;
        rel.tail = a.tail;
        if (a.word.size() > w.size())
            rel.word.letters.assign(a.word.letters.begin() + w.size(), a.word.letters.end());
        return canonicalize(rel);
    }
    throw NotInCell("point is not in the cell");
}

inline bool cell_contains(const Cell& cell, const PointAddress& p) {
    try {
        inverse_map(cell.word, p);
        return true;
    } catch (const NotInCell&) {
        return false;
    }
}

/// Boundary point <w tail(i)> of a cell.
inline PointAddress cell_corner(const Cell& cell, Letter i) {
    if (i > cell.n()) throw LetterOutOfRange("corner index out of range");
    return canonicalize(PointAddress{cell.word, i});
}

/// The unique smallest cell containing both points (maximal common address
/// prefix over the two address forms of each point).
inline Cell common_cell(const PointAddress& x, const PointAddress& y) {
    PointAddress cx = canonicalize(x), cy = canonicalize(y);
    if (cx.n() != cy.n()) throw DimensionMismatch("points from different gaskets");
    if (cx == cy) throw SamePoint("common cell undefined for equal points");
    std::size_t best = 0;
    PointAddress best_addr = cx;
    for (const PointAddress& ax : all_addresses(cx)) {
        for (const PointAddress& ay : all_addresses(cy)) {
            // Past position max(|wx|,|wy|) both strings are constant, so if
            // they still agree there the addresses coincide entirely.
            std::size_t bound = std::max(ax.word.size(), ay.word.size()) + 1;
            std::size_t k = 0;
            while (k < bound && ax.letter_at(k) == ay.letter_at(k)) ++k;
            if (k == bound) throw Error("distinct points share an address");
            if (k >= best) {
                best = k;
                best_addr = ax;
            }
        }
    }
    Cell c;
    c.word.n = cx.n();
    for (std::size_t k = 0; k < best; ++k) c.word.letters.push_back(best_addr.letter_at(k));
    return c;
}

/// Scaled barycentric projection toward the boundary point <w tail(i)>:
/// phi(p) = [F_w^{-1}(p)]_i.
inline Dyadic phi_projection(const Cell& cell, Letter i, const PointAddress& p) {
    if (i > cell.n()) throw LetterOutOfRange("boundary index out of range");
    BaryCoord rel = inverse_map(cell.word, address_to_bary(p));
    return rel[i];
}

}  // namespace gasket
