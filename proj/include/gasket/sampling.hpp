#pragma once

#include <optional>
#include <random>
#include <vector>

#include "gasket/inequality.hpp"
#include "gasket/interpolation.hpp"

namespace gasket {

/// Deterministic generators for property tests and seeded verification runs.
namespace sampling {

using Rng = std::mt19937_64;

inline PointAddress random_point(Rng& rng, int n, int max_word_len) {
    std::uniform_int_distribution<int> len_dist(0, max_word_len);
    std::uniform_int_distribution<int> letter_dist(0, n);
    PointAddress p;
    p.word.n = n;
    int len = len_dist(rng);
    for (int i = 0; i < len; ++i) p.word.letters.push_back(static_cast<Letter>(letter_dist(rng)));
    p.tail = static_cast<Letter>(letter_dist(rng));
    return canonicalize(p);
}

inline Cell random_cell(Rng& rng, int n, int level) {
    std::uniform_int_distribution<int> letter_dist(0, n);
    Cell c;
    c.word.n = n;
    for (int i = 0; i < level; ++i) c.word.letters.push_back(static_cast<Letter>(letter_dist(rng)));
    return c;
}

inline PointAddress random_point_in_cell(Rng& rng, const Cell& c, int extra_depth) {
    return apply_map(c.word, random_point(rng, c.n(), extra_depth));
}

/// Rational t strictly inside [lo, hi] on a 64-step lattice.
inline mpq_class random_t_in_window(Rng& rng, const mpq_class& lo, const mpq_class& hi) {
    std::uniform_int_distribution<int> j(1, 63);
    return lo + (hi - lo) * mpq_class(j(rng), 64);
}

/// A disjoint cell pair admitting a regular common path, by rejection.
inline std::pair<Cell, Cell> random_regular_cell_pair(Rng& rng, int n, int min_level = 2,
                                                      int max_level = 4) {
    std::uniform_int_distribution<int> lvl(min_level, max_level);
    for (int tries = 0; tries < 10000; ++tries) {
        Cell A = random_cell(rng, n, lvl(rng));
        Cell B = random_cell(rng, n, lvl(rng));
        try {
            CommonPath cp = build_common_path(A, B);
            if (cp.regular()) return {A, B};
        } catch (const Error&) {
        }
    }
    throw Error("failed to sample a regular cell pair");
}

/// A connected union of `count` distinct level-`level` cells grown inside
/// `base` by random adjacent extension.
inline CellUnion random_connected_union(Rng& rng, const Cell& base, int level, int count) {
    if (level < base.level()) throw DomainError("union level above base cell");
    CellUnion u;
    Cell first = base;
    std::uniform_int_distribution<int> letter_dist(0, base.n());
    for (int i = base.level(); i < level; ++i)
        first.word.letters.push_back(static_cast<Letter>(letter_dist(rng)));
    u.cells.push_back(first);
    auto corners = [&](const Cell& c) {
        std::vector<PointAddress> out;
        for (int i = 0; i <= c.n(); ++i) out.push_back(cell_corner(c, static_cast<Letter>(i)));
        return out;
    };
    for (int added = 1; added < count; ++added) {
        // Candidates: same-level cells in base adjacent to the union.
        std::vector<Cell> candidates;
        std::vector<Cell> frontier = u.cells;
        for (const Cell& c : u.cells) {
            for (const PointAddress& p : corners(c)) {
                // Cells at this level touching vertex p: prefixes of its
                // address forms.
                for (const PointAddress& form : all_addresses(p)) {
                    if (static_cast<int>(form.word.size()) > level) continue;
                    Cell cand;
                    cand.word.n = c.n();
                    for (int i = 0; i < level; ++i) cand.word.letters.push_back(form.letter_at(i));
                    bool in_base = cand.word.size() >= base.word.size();
                    for (std::size_t i = 0; i < base.word.size() && in_base; ++i)
                        in_base = cand.word.letters[i] == base.word.letters[i];
                    bool fresh = in_base;
                    for (const Cell& e : u.cells) fresh = fresh && !(e == cand);
                    for (const Cell& e : candidates) fresh = fresh && !(e == cand);
                    if (fresh) candidates.push_back(cand);
                }
            }
        }
        if (candidates.empty()) break;
        std::uniform_int_distribution<std::size_t> pick(0, candidates.size() - 1);
        u.cells.push_back(candidates[pick(rng)]);
    }
    return u;
}

/// A random dyadic in [0,1] with the given number of binary digits.
inline Dyadic random_dyadic(Rng& rng, int depth) {
    std::uniform_int_distribution<long> num(0, (1L << depth));
    return Dyadic(mpz_class(num(rng)), static_cast<unsigned>(depth));
}

}  // namespace sampling
}  // namespace gasket
