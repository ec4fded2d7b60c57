#include <catch2/catch_amalgamated.hpp>

#include <set>
#include <string>

#include "gasket/format.hpp"
#include "gasket/metric.hpp"
#include "gasket/sampling.hpp"

using namespace gasket;

namespace {

std::string anchor_text(const Geodesic& g) {
    std::string s;
    for (const auto& a : g.anchors) {
        if (!s.empty()) s += ' ';
        s += to_text(a);
    }
    return s;
}

}  // namespace

TEST_CASE("distances between corners and bridge points") {
    CHECK(distance(parse_address("[| 0]", 2), parse_address("[| 1]", 2)) == Dyadic(1));
    // <1 0bar> and <2 0bar> meet inside <0>.
    CHECK(distance(parse_address("[1 | 0]", 2), parse_address("[2 | 0]", 2)).frac_str() == "1/2");
    CHECK(distance(parse_address("[| 0]", 2), parse_address("[0 | 1]", 2)).frac_str() == "1/2");
    PointAddress p = parse_address("[1 0 | 2]", 2);
    CHECK(distance(p, p).is_zero());
    CHECK(distance(p, parse_address("[1 2 | 0]", 2)).is_zero());  // dual forms
}

TEST_CASE("distance of the eight-geodesic pair in the 3-gasket") {
    auto x = parse_address("[2 0 2 | 1]", 3);
    auto y = parse_address("[3 0 3 | 1]", 3);
    CHECK(distance(x, y) == Dyadic(1));
    CHECK(count_geodesics(x, y) == 8);
}

TEST_CASE("eight geodesics split into four P1 and four P2 with fixed anchors") {
    auto gs = enumerate_geodesics(parse_address("[2 0 2 | 1]", 3), parse_address("[3 0 3 | 1]", 3));
    REQUIRE(gs.size() == 8);
    std::multiset<std::string> p1, p2;
    for (const auto& g : gs) {
        CHECK(g.length == Dyadic(1));
        if (g.kind == GeodesicKind::P1) p1.insert(anchor_text(g));
        if (g.kind == GeodesicKind::P2) p2.insert(anchor_text(g));
    }
    std::multiset<std::string> want_p1{
        "[2 0 2 | 3] [2 0 | 3] [2 | 3] [3 0 | 2] [3 0 2 | 3]",
        "[2 0 2 | 3] [2 0 | 3] [2 | 3] [3 0 | 2] [3 0 1 | 2]",
        "[2 0 1 | 3] [2 0 | 3] [2 | 3] [3 0 | 2] [3 0 2 | 3]",
        "[2 0 1 | 3] [2 0 | 3] [2 | 3] [3 0 | 2] [3 0 1 | 2]",
    };
    std::multiset<std::string> want_p2{
        "[2 0 0 | 2] [0 | 2] [0 | 3] [3 0 0 | 3]",
        "[2 0 0 | 2] [0 | 2] [0 | 3] [3 0 0 | 1]",
        "[2 0 0 | 1] [0 | 2] [0 | 3] [3 0 0 | 3]",
        "[2 0 0 | 1] [0 | 2] [0 | 3] [3 0 0 | 1]",
    };
    CHECK(p1 == want_p1);
    CHECK(p2 == want_p2);
}

TEST_CASE("the five-geodesic pair in the 2-gasket") {
    auto x = parse_address("[1 1 | 0]", 2);
    auto y = parse_address("[2 2 | 0]", 2);
    CHECK(distance(x, y) == Dyadic(1));
    auto gs = enumerate_geodesics(x, y);
    REQUIRE(gs.size() == 5);
    int p1 = 0, p2 = 0;
    for (const auto& g : gs) {
        CHECK(g.length == Dyadic(1));
        p1 += g.kind == GeodesicKind::P1;
        p2 += g.kind == GeodesicKind::P2;
    }
    CHECK(p1 == 4);
    CHECK(p2 == 1);
}

TEST_CASE("geodesics within one cell are straight edges") {
    auto gs = enumerate_geodesics(parse_address("[| 0]", 2), parse_address("[0 | 1]", 2));
    REQUIRE(gs.size() == 1);
    CHECK(gs.front().kind == GeodesicKind::WithinCell);
    CHECK(gs.front().anchors.empty());
    CHECK(gs.front().polyline.size() == 2);
}

TEST_CASE("enumerate_geodesics rejects equal points") {
    auto p = parse_address("[1 | 0]", 2);
    CHECK_THROWS_AS(enumerate_geodesics(p, p), SamePoint);
    CHECK_THROWS_AS(enumerate_geodesics(p, parse_address("[0 | 1]", 2)), SamePoint);
}

TEST_CASE("boundary distance and multiplicity") {
    Cell c = parse_cell("1", 2);
    // <1 2 0bar> sits half way between the boundary point <1 2bar> and the far side.
    CHECK(boundary_distance(c, 2, parse_address("[1 2 | 0]", 2)).frac_str() == "1/4");
    CHECK(boundary_distance(c, 2, cell_corner(c, 2)).is_zero());
    // Two geodesics exactly when the last letter and tail both avoid k.
    CHECK(boundary_multiplicity(c, 2, parse_address("[1 0 | 1]", 2)) == 2);
    CHECK(boundary_multiplicity(c, 2, parse_address("[1 1 2 | 0]", 2)) == 1);
    CHECK(boundary_multiplicity(c, 1, parse_address("[1 0 | 1]", 2)) == 1);
    CHECK(boundary_multiplicity(c, 2, parse_address("[1 | 0]", 2)) == 1);
    CHECK_THROWS_AS(boundary_multiplicity(c, 3, cell_corner(c, 0)), LetterOutOfRange);
}

TEST_CASE("point_along walks the polyline by exact arclength") {
    auto gs = enumerate_geodesics(parse_address("[| 1]", 2), parse_address("[| 2]", 2));
    REQUIRE(gs.size() == 1);
    const Geodesic& g = gs.front();
    CHECK(point_along(g, Dyadic(0)) == g.a);
    CHECK(point_along(g, Dyadic(1)) == g.b);
    CHECK(to_text(point_along(g, Dyadic(mpz_class(1), 1))) == "[1 | 2]");
    CHECK_THROWS_AS(point_along(g, Dyadic(2)), DomainError);
}

TEST_CASE("metric axioms on seeded triples") {
    sampling::Rng rng(7);
    for (int rep = 0; rep < 500; ++rep) {
        int n = 2 + static_cast<int>(rep % 3);
        PointAddress x = sampling::random_point(rng, n, 6);
        PointAddress y = sampling::random_point(rng, n, 6);
        PointAddress z = sampling::random_point(rng, n, 6);
        Dyadic dxy = distance(x, y);
        CHECK(dxy == distance(y, x));
        CHECK((dxy.is_zero()) == (x == y));
        CHECK(distance(x, z) <= dxy + distance(y, z));
    }
}

TEST_CASE("distance inside a cell is bounded by its side length") {
    sampling::Rng rng(11);
    for (int rep = 0; rep < 300; ++rep) {
        Cell w = sampling::random_cell(rng, 2, 1 + rep % 4);
        PointAddress x = sampling::random_point_in_cell(rng, w, 5);
        PointAddress y = sampling::random_point_in_cell(rng, w, 5);
        CHECK(distance(x, y) <= Dyadic::one_over_pow2(static_cast<unsigned>(w.level())));
    }
}

TEST_CASE("points from different gaskets do not mix") {
    CHECK_THROWS_AS(distance(parse_address("[| 0]", 2), parse_address("[| 0]", 3)),
                    DimensionMismatch);
}
