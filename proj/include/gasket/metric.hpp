#pragma once

#include <algorithm>
#include <cassert>
#include <map>
#include <utility>
#include <vector>

#include "gasket/barycentric.hpp"

namespace gasket {

enum class GeodesicKind { WithinCell, P1, P2 };

/// A geodesic between two points: the merged polyline of straight segments,
/// each lying on a cell edge.  Anchors are the interior turn vertices.
struct Geodesic {
    PointAddress a, b;
    std::vector<PointAddress> anchors;
    std::vector<BaryCoord> polyline;  // includes endpoints
    Dyadic length;
    GeodesicKind kind = GeodesicKind::WithinCell;
};

namespace detail {

inline Dyadic abs(const Dyadic& d) { return d < Dyadic(0) ? -d : d; }

/// Length of a straight segment parallel to a simplex edge: exactly two
/// coordinates change, by +-L each.
inline Dyadic segment_length(const BaryCoord& a, const BaryCoord& b) {
    Dyadic sum;
    for (std::size_t i = 0; i < a.coords.size(); ++i) sum = sum + abs(b[i] - a[i]);
    return sum.shifted_down(1);
}

/// True when b -> c continues in the same direction as a -> b.
inline bool collinear_forward(const BaryCoord& a, const BaryCoord& b, const BaryCoord& c) {
    std::size_t dim = a.coords.size();
    std::vector<Dyadic> d1(dim), d2(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        d1[i] = b[i] - a[i];
        d2[i] = c[i] - b[i];
    }
    const Dyadic zero(0);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = i + 1; j < dim; ++j)
            if (d1[i] * d2[j] != d1[j] * d2[i]) return false;
    for (std::size_t i = 0; i < dim; ++i) {
        if (!d1[i].is_zero()) return (d1[i] < zero) == (d2[i] < zero) || d2[i].is_zero();
    }
    return true;
}

/// Appends a point, dropping repeats and merging collinear runs.
inline void append_point(std::vector<BaryCoord>& poly, const BaryCoord& p) {
    if (!poly.empty() && poly.back() == p) return;
    if (poly.size() >= 2 && collinear_forward(poly[poly.size() - 2], poly.back(), p)) {
        poly.back() = p;
        return;
    }
    poly.push_back(p);
}

inline BaryCoord corner_coord(int n, Letter i) {
    BaryCoord b;
    b.coords.assign(n + 1, Dyadic(0));
    b.coords[i] = Dyadic(1);
    return b;
}

/// All geodesics (as merged polylines) from the corner q_i of S_n to p,
/// via the bridge-point descent along each address of p.  One polyline per
/// address, deduplicated.
inline std::vector<std::vector<BaryCoord>> geodesics_from_corner(Letter i, const BaryCoord& p) {
    const int n = p.n();
    std::vector<std::vector<BaryCoord>> out;
    for (const PointAddress& addr : bary_to_address(p)) {
        std::vector<BaryCoord> poly{corner_coord(n, i)};
        BaryCoord cur = poly.front();
        for (std::size_t k = 0; k < addr.word.size(); ++k) {
            Letter w = addr.word.letters[k];
            // Descend into subcell w; the waypoint is its corner i.
            if (w != i) {
                PointAddress way{addr.word.prefix(k + 1), i};
                append_point(poly, address_to_bary(way));
            }
        }
        if (addr.tail != i) append_point(poly, p);
        out.push_back(std::move(poly));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

/// Indices of the maximal subcells containing p (one, or two on a boundary).
inline std::vector<Letter> maximal_subcells(const BaryCoord& p) {
    const Dyadic half(mpz_class(1), 1);
    std::vector<Letter> out;
    for (int i = 0; i <= p.n(); ++i)
        if (p[i] >= half) out.push_back(static_cast<Letter>(i));
    return out;
}

struct Route {
    GeodesicKind kind;
    Letter i, j, k;  // subcell assignment; k only for P2
};

/// Shortest-path candidates for points in distinct maximal subcells of S_n:
/// P1 through the shared bridge point, P2 through a detour corner k.
inline std::pair<Dyadic, std::vector<Route>> candidate_minimum(const BaryCoord& x, const BaryCoord& y) {
    const int n = x.n();
    Dyadic best(2);
    std::vector<Route> routes;
    auto consider = [&](const Dyadic& v, Route r) {
        if (v < best) {
            best = v;
            routes.clear();
        }
        if (v == best) routes.push_back(r);
    };
    const Dyadic one(1), three_half(mpz_class(3), 1);
    for (Letter i : maximal_subcells(x)) {
        for (Letter j : maximal_subcells(y)) {
            assert(i != j);
            consider(one - x[j] - y[i], Route{GeodesicKind::P1, i, j, 0});
            for (int k = 0; k <= n; ++k) {
                if (k == i || k == j) continue;
                consider(three_half - x[k] - y[k], Route{GeodesicKind::P2, i, j, static_cast<Letter>(k)});
            }
        }
    }
    return {best, routes};
}

inline BaryCoord map_into_subcell_inverse(Letter i, const BaryCoord& p) {
    Word w;
    w.n = p.n();
    w.letters = {i};
    return inverse_map(w, p);
}

inline BaryCoord map_from_subcell(Letter i, const BaryCoord& p) { return apply_map(i, p); }

}  // namespace detail

/// Distance from the boundary point <w tail(i)> to p in <w>, via the
/// barycentric projection: 2^{-|w|} (1 - phi_i(p)).
inline Dyadic boundary_distance(const Cell& cell, Letter i, const PointAddress& p) {
    Dyadic phi = phi_projection(cell, i, p);
    return (Dyadic(1) - phi).shifted_down(static_cast<unsigned>(cell.word.size()));
}

/// Number of geodesics (1 or 2) from p to the boundary point <w tail(k)>.
/// Two precisely when p is a vertex <w u a tail(b)> with a, b, k distinct.
inline int boundary_multiplicity(const Cell& cell, Letter k, const PointAddress& p) {
    if (k > cell.n()) throw LetterOutOfRange("boundary index out of range");
    PointAddress rel = inverse_map(cell.word, p);
    if (rel.word.empty()) return 1;
    Letter a = rel.word.letters.back(), b = rel.tail;
    return (a != k && b != k) ? 2 : 1;
}

/// Exact intrinsic distance: rescale to the common cell, then take the
/// minimum over the P1 and P2 closed-form candidates.
inline Dyadic distance(const PointAddress& x, const PointAddress& y) {
    PointAddress cx = canonicalize(x), cy = canonicalize(y);
    if (cx.n() != cy.n()) throw DimensionMismatch("points from different gaskets");
    if (cx == cy) return Dyadic(0);
    Cell cc = common_cell(cx, cy);
    BaryCoord rx = inverse_map(cc.word, address_to_bary(cx));
    BaryCoord ry = inverse_map(cc.word, address_to_bary(cy));
    auto [best, routes] = detail::candidate_minimum(rx, ry);
    return best.shifted_down(static_cast<unsigned>(cc.word.size()));
}

/// All distinct geodesics between two points (at most 5 for n=2, 8 for n>=3).
inline std::vector<Geodesic> enumerate_geodesics(const PointAddress& x, const PointAddress& y) {
    PointAddress cx = canonicalize(x), cy = canonicalize(y);
    if (cx.n() != cy.n()) throw DimensionMismatch("points from different gaskets");
    if (cx == cy) throw SamePoint("no geodesics between a point and itself");
    Cell cc = common_cell(cx, cy);
    BaryCoord rx = inverse_map(cc.word, address_to_bary(cx));
    BaryCoord ry = inverse_map(cc.word, address_to_bary(cy));
    auto [best, routes] = detail::candidate_minimum(rx, ry);

    std::map<std::vector<BaryCoord>, GeodesicKind> found;
    for (const detail::Route& r : routes) {
        Letter bx = (r.kind == GeodesicKind::P1) ? r.j : r.k;  // target corner inside <i>
        Letter by = (r.kind == GeodesicKind::P1) ? r.i : r.k;  // target corner inside <j>
        auto gx = detail::geodesics_from_corner(bx, detail::map_into_subcell_inverse(r.i, rx));
        auto gy = detail::geodesics_from_corner(by, detail::map_into_subcell_inverse(r.j, ry));
        for (const auto& px : gx) {
            for (const auto& py : gy) {
                std::vector<BaryCoord> poly;
                for (auto it = px.rbegin(); it != px.rend(); ++it)
                    detail::append_point(poly, detail::map_from_subcell(r.i, *it));
                for (const auto& q : py) detail::append_point(poly, detail::map_from_subcell(r.j, q));
                for (auto& q : poly) q = apply_map(cc.word, std::move(q));
                found.emplace(std::move(poly), r.kind);
            }
        }
    }

    Dyadic dist = best.shifted_down(static_cast<unsigned>(cc.word.size()));
    std::vector<Geodesic> out;
    for (const auto& [poly, kind] : found) {
        Geodesic g;
        g.a = cx;
        g.b = cy;
        g.polyline = poly;
        g.kind = poly.size() <= 2 ? GeodesicKind::WithinCell : kind;
        Dyadic len;
        for (std::size_t s = 0; s + 1 < poly.size(); ++s)
            len = len + detail::segment_length(poly[s], poly[s + 1]);
        g.length = len;
        assert(g.length == dist);
        for (std::size_t s = 1; s + 1 < poly.size(); ++s)
            g.anchors.push_back(canonicalize(bary_to_address(poly[s]).front()));
        out.push_back(std::move(g));
    }
    return out;
}

inline std::size_t count_geodesics(const PointAddress& x, const PointAddress& y) {
    return enumerate_geodesics(x, y).size();
}

/// The point at arclength t * |g| from g's first endpoint (t dyadic in [0,1]).
inline PointAddress point_along(const Geodesic& g, const Dyadic& t) {
    if (t < Dyadic(0) || t > Dyadic(1)) throw DomainError("interpolation parameter outside [0,1]");
    Dyadic target = t * g.length;
    Dyadic acc;
    for (std::size_t s = 0; s + 1 < g.polyline.size(); ++s) {
        const BaryCoord& a = g.polyline[s];
        const BaryCoord& b = g.polyline[s + 1];
        Dyadic len = detail::segment_length(a, b);
        if (target <= acc + len) {
            Dyadic delta = target - acc;
            BaryCoord p = a;
            for (std::size_t i = 0; i < p.coords.size(); ++i) {
                if (b[i] > a[i])
                    p.coords[i] = a[i] + delta;
                else if (b[i] < a[i])
                    p.coords[i] = a[i] - delta;
            }
            return canonicalize(bary_to_address(p).front());
        }
        acc = acc + len;
    }
    return g.b;
}

}  // namespace gasket
