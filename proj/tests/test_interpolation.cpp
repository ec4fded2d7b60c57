#include <catch2/catch_amalgamated.hpp>

#include <set>
#include <string>

#include "gasket/format.hpp"
#include "gasket/interpolation.hpp"
#include "gasket/sampling.hpp"

using namespace gasket;

TEST_CASE("common path between <1 1> and <2 2>") {
    CommonPath cp = build_common_path(parse_cell("1 1", 2), parse_cell("2 2", 2));
    CHECK(to_text(cp.entry) == "[1 1 | 2]");
    CHECK(to_text(cp.exit_point) == "[2 1 | 2]");  // canonical form of <2 2 1bar>
    CHECK(cp.entry_index == 2);
    CHECK(cp.exit_index == 1);
    CHECK(cp.D.frac_str() == "1/2");
    CHECK(cp.k == 2);
    CHECK(cp.m == 2);
    CHECK(cp.t1f == mpq_class(1, 3));
    CHECK(cp.t2i == mpq_class(2, 3));
    CHECK(cp.regular());
}

TEST_CASE("interpolant interval of the flagship pair at t = 1/2") {
    CommonPath cp = build_common_path(parse_cell("1 1", 2), parse_cell("2 2", 2));
    InterpolantInterval iv = interpolant_interval(cp, mpq_class(1, 2));
    CHECK(iv.s1 == mpq_class(1, 8));
    CHECK(iv.s2 == mpq_class(3, 8));
    CHECK(iv.length == mpq_class(1, 4));
    // Interval midpoint is the bridge <1 2bar>.
    RationalPoint mid = point_at_arclength(cp.gamma, mpq_class(1, 4));
    REQUIRE(mid.address().has_value());
    CHECK(to_text(*mid.address()) == "[1 | 2]");
    CHECK_THROWS_AS(interpolant_interval(cp, mpq_class(1, 4)), OutsideWindow);
    CHECK_THROWS_AS(interpolant_interval(cp, mpq_class(3, 4)), OutsideWindow);
}

TEST_CASE("interval length interpolates the two cell sides") {
    CommonPath cp = build_common_path(parse_cell("1 1", 2), parse_cell("2 2 2", 2));
    CHECK(cp.t1f == mpq_class(2, 7));
    CHECK(cp.t2i == mpq_class(5, 6));
    for (int j = 0; j <= 4; ++j) {
        mpq_class t = cp.t1f + (cp.t2i - cp.t1f) * mpq_class(j, 4);
        InterpolantInterval iv = interpolant_interval(cp, t);
        CHECK(iv.length == (1 - t) * cp.scale_a().to_mpq() + t * cp.scale_b().to_mpq());
        CHECK(iv.s2 - iv.s1 == iv.length);
    }
}

TEST_CASE("common path from a cell to a corner point") {
    CommonPath cp = build_common_path(parse_cell("1", 2), parse_address("[| 2]", 2));
    CHECK(cp.point_target);
    CHECK(to_text(cp.entry) == "[1 | 2]");
    CHECK(cp.D.frac_str() == "1/2");
    CHECK(cp.t1f == mpq_class(1, 2));
    CHECK(cp.t2i == 1);
    CHECK(cp.scale_b().is_zero());
    InterpolantInterval iv = interpolant_interval(cp, mpq_class(3, 4));
    CHECK(iv.length == mpq_class(1, 8));
}

TEST_CASE("common path construction rejects degenerate inputs") {
    CHECK_THROWS_AS(build_common_path(parse_cell("1", 2), parse_cell("1 0", 2)), NoCommonPath);
    CHECK_THROWS_AS(build_common_path(parse_cell("1", 2), parse_cell("2", 2)), NoCommonPath);
    CHECK_THROWS_AS(build_common_path(parse_cell("1", 2), parse_cell("1", 3)), DimensionMismatch);
    CHECK_THROWS_AS(build_common_path(parse_cell("1", 2), parse_address("[1 0 | 2]", 2)),
                    NoCommonPath);
}

TEST_CASE("psi projects product coordinates onto the interval") {
    CHECK(psi(mpq_class(1, 3), 1, 2, mpq_class(1, 2), mpq_class(1, 4)) == mpq_class(11, 20));
    CHECK(psi(mpq_class(0), 1, 2, mpq_class(1, 2), mpq_class(1, 4)) == mpq_class(1, 2));
    CHECK(psi(mpq_class(1), 1, 2, mpq_class(1, 2), mpq_class(1, 4)) == mpq_class(3, 4));
    CHECK_THROWS_AS(psi(mpq_class(2), 1, 2, mpq_class(0), mpq_class(0)), DomainError);
    CHECK_THROWS_AS(psi_weights(0, 0, 0, 0), DomainError);
}

TEST_CASE("Z_t commutes with the projections") {
    CommonPath cp = build_common_path(parse_cell("1 1", 2), parse_cell("2 2", 2));
    sampling::Rng rng(42);
    for (int rep = 0; rep < 40; ++rep) {
        PointAddress a = sampling::random_point_in_cell(rng, cp.A, 4);
        PointAddress b = sampling::random_point_in_cell(rng, cp.B, 4);
        mpq_class t = sampling::random_t_in_window(rng, cp.t1f, cp.t2i);
        mpq_class s = phi_projection(cp.A, cp.entry_index, a).to_mpq();
        mpq_class r = phi_projection(cp.B, cp.exit_index, b).to_mpq();
        CHECK(z_point(cp, a, b, t) == H_t(cp, t, psi(cp, t, s, r)));
    }
}

TEST_CASE("interpolated points of the five-geodesic pair at t = 1/2") {
    auto pts = interpolate_points(parse_address("[1 1 | 0]", 2), parse_address("[2 2 | 0]", 2),
                                  Dyadic(mpz_class(1), 1));
    // All four P1 geodesics share the middle edge, so the set collapses.
    REQUIRE(pts.size() == 2);
    std::set<std::string> got{to_text(pts[0]), to_text(pts[1])};
    CHECK(got == std::set<std::string>{"[1 | 2]", "[0 1 | 2]"});
}

TEST_CASE("H_t is increasing along gamma") {
    CommonPath cp = build_common_path(parse_cell("1 1", 2), parse_cell("2 2", 2));
    mpq_class t(1, 2);
    mpq_class prev = -1;
    for (int j = 0; j <= 8; ++j) {
        RationalPoint p = H_t(cp, t, mpq_class(j, 8));
        // gamma runs along the q1-q2 edge, so coordinate 2 tracks arclength.
        mpq_class c2 = p.coords[2];
        CHECK(c2 > prev);
        prev = c2;
    }
    CHECK_THROWS_AS(H_t(cp, t, mpq_class(2)), DomainError);
}

TEST_CASE("largest valid subcell for small t") {
    CommonPath cp = build_common_path(parse_cell("1 1", 2), parse_cell("2 2", 2));
    CHECK(largest_valid_subcell(cp, mpq_class(1, 2)) == cp.A);
    Cell sub = largest_valid_subcell(cp, mpq_class(1, 10));
    CHECK(sub.level() == 5);
    CHECK(to_text(sub) == "<1 1 2 2 2>");
    CHECK_THROWS_AS(largest_valid_subcell(cp, mpq_class(0)), OutsideWindow);
}

TEST_CASE("point_at_arclength stays on the polyline") {
    auto gs = enumerate_geodesics(parse_address("[1 1 | 2]", 2), parse_address("[2 1 | 2]", 2));
    REQUIRE(gs.size() == 1);
    RationalPoint p = point_at_arclength(gs.front(), mpq_class(1, 3));
    mpq_class sum = 0;
    for (const mpq_class& c : p.coords) sum += c;
    CHECK(sum == 1);
    CHECK_FALSE(p.address().has_value());  // non-dyadic coordinates
    CHECK_THROWS_AS(point_at_arclength(gs.front(), mpq_class(2)), DomainError);
}
