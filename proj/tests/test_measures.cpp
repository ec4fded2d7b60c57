#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "gasket/measures.hpp"
#include "gasket/sampling.hpp"

using namespace gasket;

TEST_CASE("nu CDF values for the 2-gasket") {
    auto nu2 = SelfSimilarMeasure1D::standard(2);
    CHECK(nu2.w0 == mpq_class(2, 3));
    CHECK(nu2.w1 == mpq_class(1, 3));
    CHECK(nu_cdf(nu2, Dyadic(0)) == 0);
    CHECK(nu_cdf(nu2, Dyadic(1)) == 1);
    CHECK(nu_cdf(nu2, Dyadic(mpz_class(1), 1)) == mpq_class(2, 3));
    CHECK(nu_cdf(nu2, Dyadic(mpz_class(1), 2)) == mpq_class(4, 9));
    CHECK(nu_cdf(nu2, Dyadic(mpz_class(3), 2)) == mpq_class(8, 9));
    CHECK_THROWS_AS(nu_cdf(nu2, Dyadic(2)), DomainError);
}

TEST_CASE("nu satisfies its self-similar identity at seeded dyadics") {
    sampling::Rng rng(20260823);
    for (int n = 2; n <= 10; ++n) {
        auto nu = SelfSimilarMeasure1D::standard(n);
        for (int rep = 0; rep < 200; ++rep) {
            Dyadic x = sampling::random_dyadic(rng, 10);
            Dyadic half(mpz_class(1), 1);
            if (x <= half) {
                CHECK(nu_cdf(nu, x) == nu.w0 * nu_cdf(nu, x.shifted_up(1)));
            } else {
                CHECK(nu_cdf(nu, x) == nu.w0 + nu.w1 * nu_cdf(nu, x.shifted_up(1) - Dyadic(1)));
            }
        }
    }
}

TEST_CASE("nu histogram matches the CDF exactly") {
    auto nu2 = SelfSimilarMeasure1D::standard(2);
    Histogram h = nu_histogram(nu2, 2);
    REQUIRE(h.bins() == 4);
    CHECK(h.masses[0] == mpq_class(4, 9));
    CHECK(h.masses[1] == mpq_class(2, 9));
    CHECK(h.masses[2] == mpq_class(2, 9));
    CHECK(h.masses[3] == mpq_class(1, 9));
    CHECK(h.total() == 1);

    for (int depth : {6, kMaxRationalDepth}) {
        Histogram hd = nu_histogram(nu2, depth);
        mpq_class acc = 0;
        for (std::size_t j = 0; j < hd.bins(); ++j) {
            acc += hd.masses[j];
            Dyadic right(mpz_class(static_cast<long>(j + 1)), static_cast<unsigned>(depth));
            CHECK(acc == nu_cdf(nu2, right));
        }
    }
}

TEST_CASE("measure weights are validated") {
    SelfSimilarMeasure1D bad{mpq_class(1, 2), mpq_class(1, 3)};
    CHECK_THROWS_AS(bad.validate(), InvalidWeights);
    CHECK_THROWS_AS(nu_histogram(bad, 4), InvalidWeights);
    CHECK_THROWS_AS(nu_histogram(SelfSimilarMeasure1D::standard(2), 40), BudgetExceeded);
}

TEST_CASE("dimension formulas and the absolute continuity threshold") {
    CHECK(nu_dimension(2) == Catch::Approx(0.918296).margin(1e-6));
    CHECK(pair_dimension(8) > 1.0);
    CHECK(pair_dimension(9) < 1.0);
    CHECK(pair_dimension(8) == Catch::Approx(1.00652).margin(1e-5));
    CHECK(pair_dimension(9) == Catch::Approx(0.937991).margin(1e-5));
    CHECK_THROWS_AS(nu_dimension(1), DomainError);
}

TEST_CASE("standard pushforward quadrant weights") {
    PushforwardSpec sp = standard_spec(2, mpq_class(1, 2), 1, 1);
    CHECK(sp.quad_weight(0, 0) == mpq_class(4, 9));
    CHECK(sp.quad_weight(0, 1) == mpq_class(2, 9));
    CHECK(sp.quad_weight(1, 0) == mpq_class(2, 9));
    CHECK(sp.quad_weight(1, 1) == mpq_class(1, 9));
    CHECK(sp.alpha() == mpq_class(1, 4));
    CHECK(sp.beta() == mpq_class(1, 4));
}

TEST_CASE("weighted variants orient the marginals by entry and exit corners") {
    std::vector<mpq_class> mu{mpq_class(1, 2), mpq_class(1, 4), mpq_class(1, 4)};
    PushforwardSpec sp = weighted_variants(2, mu, 0, 1);
    CHECK(sp.oriented_weight(0, 0) == mpq_class(1, 8));
    CHECK(sp.oriented_weight(0, 1) == mpq_class(3, 8));
    CHECK(sp.oriented_weight(1, 0) == mpq_class(1, 8));
    CHECK(sp.oriented_weight(1, 1) == mpq_class(3, 8));

    CHECK_THROWS_AS(weighted_variants(2, {mpq_class(1, 2), mpq_class(1, 2)}, 0, 1), InvalidWeights);
    std::vector<mpq_class> neg{mpq_class(3, 2), mpq_class(-1, 4), mpq_class(-1, 4)};
    CHECK_THROWS_AS(weighted_variants(2, neg, 0, 1), InvalidWeights);
    CHECK_THROWS_AS(weighted_variants(2, mu, 0, 5), LetterOutOfRange);
}

TEST_CASE("grid pushforward at t = 0 degenerates to the entry marginal") {
    PushforwardSpec sp = standard_spec(2, mpq_class(0), 1, 1);
    Histogram grid = tilde_nu_histogram_grid(sp, 8);
    Histogram nu = nu_histogram(sp.s, 8);
    CHECK(grid.masses == nu.masses);
}

TEST_CASE("grid pushforward conserves mass exactly") {
    for (int num : {1, 2, 3}) {
        PushforwardSpec sp = standard_spec(2, mpq_class(num, 4), 1, 1);
        CHECK(tilde_nu_histogram_grid(sp, 8).total() == 1);
    }
    CHECK_THROWS_AS(tilde_nu_histogram_grid(standard_spec(2, mpq_class(1, 2), 1, 1), 13),
                    BudgetExceeded);
}

TEST_CASE("transfer operator agrees with the exact grid") {
    PushforwardSpec sp = standard_spec(2, mpq_class(1, 2), 1, 1);
    Histogram grid = tilde_nu_histogram_grid(sp, 6);
    IfsResult ifs = tilde_nu_histogram_ifs(sp, 6);
    CHECK(ifs.hist.total() == Catch::Approx(1.0).margin(1e-9));
    CHECK(ifs.residuals.back() < 1e-13);
    CHECK(l1_distance(grid, ifs.hist) <= 0.02);
}

TEST_CASE("eta totals are the exact cell measures") {
    EtaResult c2c = eta_cell_to_cell(Cell{{{1, 1}, 2}}, Cell{{{2, 2}, 2}}, mpq_class(1, 2), 6);
    CHECK(c2c.normalization == mpq_class(1, 81));
    CHECK(c2c.hist.total() == mpq_class(1, 81));
    CHECK(c2c.interval.length == mpq_class(1, 4));

    EtaResult c2p = eta_cell_to_point(Cell{{{1}, 2}}, PointAddress{{{}, 2}, 2}, mpq_class(3, 4), 6);
    CHECK(c2p.normalization == mpq_class(1, 3));
    CHECK(c2p.hist.total() == mpq_class(1, 3));
    CHECK(c2p.interval.length == mpq_class(1, 8));
}

TEST_CASE("histogram CSV carries the schema header") {
    Histogram h = nu_histogram(SelfSimilarMeasure1D::standard(2), 1);
    std::ostringstream os;
    write_histogram_csv(os, h, {{"measure", "nu"}, {"n", 2}});
    std::string text = os.str();
    CHECK(text.rfind("# schema=gasket-histogram-v1\n", 0) == 0);
    CHECK(text.find("bin_left,bin_right,mass") != std::string::npos);
    CHECK(text.find("0,1/2,2/3") != std::string::npos);
    CHECK(text.find("1/2,1,1/3") != std::string::npos);
}
