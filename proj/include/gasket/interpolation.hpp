#pragma once

#include <gmpxx.h>

#include <optional>
#include <vector>

#include "gasket/metric.hpp"

namespace gasket {

/// A point with exact rational barycentric coordinates.  Needed because the
/// extreme points of Z_t(A,B) are generally non-dyadic when t is.
struct RationalPoint {
    std::vector<mpq_class> coords;

    bool operator==(const RationalPoint& o) const = default;

    /// The point's address when all coordinates happen to be dyadic.
    std::optional<PointAddress> address() const {
        BaryCoord b;
        try {
            for (const mpq_class& c : coords) b.coords.push_back(Dyadic::from_mpq(c));
            return canonicalize(bary_to_address(b).front());
        } catch (const Error&) {
            return std::nullopt;
        }
    }
};

namespace detail {

inline RationalPoint to_rational(const BaryCoord& b) {
    RationalPoint p;
    for (const Dyadic& c : b.coords) p.coords.push_back(c.to_mpq());
    return p;
}

/// True when p lies on some segment of the polyline (exact).
inline bool polyline_contains(const std::vector<BaryCoord>& poly, const BaryCoord& p) {
    for (std::size_t s = 0; s + 1 < poly.size(); ++s) {
        const BaryCoord &a = poly[s], &b = poly[s + 1];
        Dyadic len = segment_length(a, b);
        Dyadic da = segment_length(a, p), db = segment_length(p, b);
        if (da + db != len) continue;
        // On an edge-parallel segment arclength additivity pins the point,
        // but confirm coordinates to exclude off-line points.
        bool match = true;
        for (std::size_t i = 0; i < p.coords.size() && match; ++i) {
            Dyadic expect = a[i];
            if (b[i] > a[i]) expect = a[i] + da;
            if (b[i] < a[i]) expect = a[i] - da;
            if (p[i] != expect) match = false;
        }
        if (match) return true;
    }
    return false;
}

}  // namespace detail

/// The point on g at exact arclength s from its first endpoint.
inline RationalPoint point_at_arclength(const Geodesic& g, const mpq_class& s) {
    if (s < 0 || s > g.length.to_mpq()) throw DomainError("arclength outside geodesic");
    mpq_class acc = 0;
    for (std::size_t seg = 0; seg + 1 < g.polyline.size(); ++seg) {
        const BaryCoord &a = g.polyline[seg], &b = g.polyline[seg + 1];
        mpq_class len = detail::segment_length(a, b).to_mpq();
        if (s <= acc + len) {
            mpq_class delta = s - acc;
            RationalPoint p = detail::to_rational(a);
            for (std::size_t i = 0; i < p.coords.size(); ++i) {
                if (b[i] > a[i]) p.coords[i] += delta;
                if (b[i] < a[i]) p.coords[i] -= delta;
            }
            return p;
        }
        acc += len;
    }
    return detail::to_rational(g.polyline.back());
}

/// Z̃_t(a,b): the point at fraction t along each geodesic from a to b.
inline std::vector<PointAddress> interpolate_points(const PointAddress& a, const PointAddress& b,
                                                    const Dyadic& t) {
    std::vector<PointAddress> out;
    for (const Geodesic& g : enumerate_geodesics(a, b)) {
        PointAddress p = point_along(g, t);
        bool seen = false;
        for (const PointAddress& q : out) seen = seen || q == p;
        if (!seen) out.push_back(p);
    }
    return out;
}

/// Common path between a cell A and a cell or point B: the unique geodesic
/// gamma between the entry point ȧ (boundary of A) and exit point ḃ,
/// traversed by every geodesic from A to B.  Levels k = |A| and m = |B|;
/// the point case behaves as m = ∞ (2^{-m} = 0).
struct CommonPath {
    Cell A;
    Cell B;                    // meaningful when !point_target
    bool point_target = false;
    PointAddress entry, exit_point;
    Letter entry_index = 0, exit_index = 0;  // boundary indices of ȧ in A, ḃ in B
    Geodesic gamma;            // from entry to exit
    Dyadic D;                  // |gamma|
    int k = 0, m = 0;
    mpq_class t1f, t2i;

    Dyadic scale_a() const { return Dyadic::one_over_pow2(static_cast<unsigned>(k)); }
    Dyadic scale_b() const {
        return point_target ? Dyadic(0) : Dyadic::one_over_pow2(static_cast<unsigned>(m));
    }
    bool regular() const { return t1f < t2i; }
    int n() const { return A.n(); }
};

namespace detail {

/// Entry/exit selection plus the corner-sweep validation of the common path
/// property: distances through (entry, exit) are additive and every geodesic
/// between boundary corners traverses gamma.
inline void validate_common_path(const CommonPath& cp, const std::vector<PointAddress>& a_corners,
                                 const std::vector<PointAddress>& b_targets) {
    for (const PointAddress& a : a_corners) {
        Dyadic da = distance(a, cp.entry);
        for (const PointAddress& b : b_targets) {
            Dyadic db = distance(cp.exit_point, b);
            if (distance(a, b) != da + cp.D + db)
                throw NoCommonPath("boundary pair bypasses the candidate common path");
            if (a == b) continue;
            // Some geodesic must traverse gamma (others of equal length may
            // bypass it; the interpolant uses the traversing one).
            bool traversed = false;
            for (const Geodesic& g : enumerate_geodesics(a, b)) {
                bool all = true;
                for (const BaryCoord& pt : cp.gamma.polyline)
                    all = all && polyline_contains(g.polyline, pt);
                traversed = traversed || all;
            }
            if (!traversed) throw NoCommonPath("no geodesic traverses the candidate common path");
        }
    }
}

inline std::vector<PointAddress> cell_corners(const Cell& c) {
    std::vector<PointAddress> out;
    for (int i = 0; i <= c.n(); ++i) out.push_back(cell_corner(c, static_cast<Letter>(i)));
    return out;
}

}  // namespace detail

/// Common path between disjoint cells A and B.  Entry and exit are the
/// unique boundary pair at minimal distance; t1f = 2^{-k}/(2^{-k}+D) and
/// t2i = D/(D+2^{-m}).  The common-path property is validated on the given
/// sample endpoints (cell corners by default; subsets of A and B may pass
/// the corners of their members instead).
inline CommonPath build_common_path(const Cell& A, const Cell& B,
                                    const std::vector<PointAddress>& a_samples,
                                    const std::vector<PointAddress>& b_samples) {
    if (A.n() != B.n()) throw DimensionMismatch("cells from different gaskets");
    std::size_t pre = std::min(A.word.size(), B.word.size());
    bool prefix = true;
    for (std::size_t i = 0; i < pre && prefix; ++i)
        prefix = A.word.letters[i] == B.word.letters[i];
    if (prefix) throw NoCommonPath("cells are nested, not disjoint");

    CommonPath cp;
    cp.A = A;
    cp.B = B;
    cp.k = A.level();
    cp.m = B.level();
    Dyadic best(2);
    int hits = 0;
    for (int i = 0; i <= A.n(); ++i) {
        for (int j = 0; j <= B.n(); ++j) {
            PointAddress ca = cell_corner(A, static_cast<Letter>(i));
            PointAddress cb = cell_corner(B, static_cast<Letter>(j));
            if (ca == cb) throw NoCommonPath("cells share a vertex");
            Dyadic d = distance(ca, cb);
            if (d < best) {
                best = d;
                hits = 0;
            }
            if (d == best) {
                ++hits;
                cp.entry = ca;
                cp.exit_point = cb;
                cp.entry_index = static_cast<Letter>(i);
                cp.exit_index = static_cast<Letter>(j);
            }
        }
    }
    if (hits != 1) throw NoCommonPath("ambiguous nearest boundary pair");
    auto geos = enumerate_geodesics(cp.entry, cp.exit_point);
    if (geos.size() != 1) throw NoCommonPath("geodesic between boundary points is not unique");
    cp.gamma = geos.front();
    cp.D = cp.gamma.length;
    mpq_class Dq = cp.D.to_mpq();
    mpq_class sa = cp.scale_a().to_mpq(), sb = cp.scale_b().to_mpq();
    cp.t1f = sa / (sa + Dq);
    cp.t2i = Dq / (Dq + sb);
    detail::validate_common_path(cp, a_samples, b_samples);
    return cp;
}

inline CommonPath build_common_path(const Cell& A, const Cell& B) {
    return build_common_path(A, B, detail::cell_corners(A), detail::cell_corners(B));
}

/// Common path from cell A to a single point b outside A; t2i = 1.
inline CommonPath build_common_path(const Cell& A, const PointAddress& b) {
    if (A.n() != b.n()) throw DimensionMismatch("cell and point from different gaskets");
    if (cell_contains(A, b)) throw NoCommonPath("target point lies in the cell");
    CommonPath cp;
    cp.A = A;
    cp.point_target = true;
    cp.k = A.level();
    cp.m = 0;
    Dyadic best(2);
    int hits = 0;
    for (int i = 0; i <= A.n(); ++i) {
        PointAddress ca = cell_corner(A, static_cast<Letter>(i));
        Dyadic d = distance(ca, b);
        if (d < best) {
            best = d;
            hits = 0;
        }
        if (d == best) {
            ++hits;
            cp.entry = ca;
            cp.entry_index = static_cast<Letter>(i);
        }
    }
    if (hits != 1) throw NoCommonPath("ambiguous entry point");
    cp.exit_point = canonicalize(b);
    auto geos = enumerate_geodesics(cp.entry, cp.exit_point);
    if (geos.size() != 1) throw NoCommonPath("geodesic from entry point is not unique");
    cp.gamma = geos.front();
    cp.D = cp.gamma.length;
    mpq_class sa = cp.scale_a().to_mpq();
    cp.t1f = sa / (sa + cp.D.to_mpq());
    cp.t2i = 1;
    detail::validate_common_path(cp, detail::cell_corners(A), {cp.exit_point});
    return cp;
}

/// psi_t(s,r) with cell scales 2^{-k}, 2^{-m} (Definition of the projection
/// onto the interpolant interval).
inline mpq_class psi_weights(const mpq_class& alpha, const mpq_class& beta, const mpq_class& s,
                             const mpq_class& r) {
    if (alpha + beta == 0) throw DomainError("psi undefined: both weights vanish");
    return (alpha * s + beta * (1 - r)) / (alpha + beta);
}

inline mpq_class psi(const mpq_class& t, int k, int m, const mpq_class& s, const mpq_class& r) {
    if (t < 0 || t > 1) throw DomainError("t outside [0,1]");
    mpq_class sa = Dyadic::one_over_pow2(static_cast<unsigned>(k)).to_mpq();
    mpq_class sb = Dyadic::one_over_pow2(static_cast<unsigned>(m)).to_mpq();
    return psi_weights(sa * (1 - t), sb * t, s, r);
}

inline mpq_class psi(const CommonPath& cp, const mpq_class& t, const mpq_class& s, const mpq_class& r) {
    return psi_weights(cp.scale_a().to_mpq() * (1 - t), cp.scale_b().to_mpq() * t, s, r);
}

/// Z_t(A,B) = gamma-hat(I_t): arclengths measured along gamma from the entry
/// point; x1 at t(2^{-k}+D) - 2^{-k}, x2 at t(D+2^{-m}).
struct InterpolantInterval {
    mpq_class t;
    mpq_class s1, s2;  // arclength from entry along gamma
    RationalPoint x1, x2;
    mpq_class length;  // = 2^{-k}(1-t) + 2^{-m}t
};

inline InterpolantInterval interpolant_interval(const CommonPath& cp, const mpq_class& t) {
    if (t < cp.t1f || t > cp.t2i) throw OutsideWindow("t outside [t1f, t2i]");
    mpq_class Dq = cp.D.to_mpq();
    mpq_class sa = cp.scale_a().to_mpq(), sb = cp.scale_b().to_mpq();
    InterpolantInterval iv;
    iv.t = t;
    iv.s1 = t * (sa + Dq) - sa;
    iv.s2 = t * (Dq + sb);
    iv.length = iv.s2 - iv.s1;
    iv.x1 = point_at_arclength(cp.gamma, iv.s1);
    iv.x2 = point_at_arclength(cp.gamma, iv.s2);
    return iv;
}

/// H_t: increasing linear parametrization [0,1] -> [x1, x2] along gamma.
inline RationalPoint H_t(const CommonPath& cp, const mpq_class& t, const mpq_class& q) {
    if (q < 0 || q > 1) throw DomainError("H_t argument outside [0,1]");
    InterpolantInterval iv = interpolant_interval(cp, t);
    return point_at_arclength(cp.gamma, iv.s1 + q * iv.length);
}

/// Z_t(a,b) for a in A, b in B (or b the target point): the interpolant on
/// the geodesic through the common path, located by exact arclength.
inline RationalPoint z_point(const CommonPath& cp, const PointAddress& a, const PointAddress& b,
                             const mpq_class& t) {
    if (t < cp.t1f || t > cp.t2i) throw OutsideWindow("t outside [t1f, t2i]");
    mpq_class da = distance(a, cp.entry).to_mpq();
    mpq_class db = distance(cp.exit_point, b).to_mpq();
    mpq_class total = da + cp.D.to_mpq() + db;
    return point_at_arclength(cp.gamma, t * total - da);
}

/// For t below the window: the largest subcell A' of A (descending toward
/// the entry corner) whose window contains t.
inline Cell largest_valid_subcell(const CommonPath& cp, const mpq_class& t) {
    if (t >= cp.t1f) return cp.A;
    if (t <= 0) throw OutsideWindow("no subcell window contains t = 0");
    mpq_class Dq = cp.D.to_mpq();
    Cell sub = cp.A;
    mpq_class sa = cp.scale_a().to_mpq();
    while (sa / (sa + Dq) > t) {
        sub.word.letters.push_back(cp.entry_index);
        sa /= 2;
    }
    return sub;
}

}  // namespace gasket
