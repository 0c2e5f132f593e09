#include <cmath>

#include "doctest.h"
#include "ifslab/checks.hpp"

using namespace ifslab;

namespace {

IfsInstance cantor() {
    std::vector<ContractionMap> maps;
    maps.emplace_back(AffineMap{{1.0 / 3.0}, {0.0}},
                      ComparisonFunction::linear(1.0 / 3.0));
    maps.emplace_back(AffineMap{{1.0 / 3.0}, {2.0 / 3.0}},
                      ComparisonFunction::linear(1.0 / 3.0));
    return IfsInstance(std::move(maps));
}

IfsInstance identity_system() {
    std::vector<ContractionMap> maps;
    maps.emplace_back(AffineMap{{1.0}, {0.0}});
    return IfsInstance(std::move(maps));
}

IfsInstance halving() {
    std::vector<ContractionMap> maps;
    maps.emplace_back(AffineMap{{0.5}, {0.0}}, ComparisonFunction::linear(0.5));
    return IfsInstance(std::move(maps));
}

PointCloud origin_cloud() {
    PointCloud c(1);
    c.add(Point{0.0});
    return c;
}

}  // namespace

TEST_CASE("check_line format") {
    CheckReport r;
    r.id = "demo";
    r.passed = true;
    r.residual = 0.5;
    r.params = "n=3";
    CHECK(check_line(r) == "CHECK demo PASS residual=0.5 params=\"n=3\"");
    r.passed = false;
    r.error = "boom";
    CHECK(check_line(r) == "CHECK demo FAIL residual=0.5 params=\"n=3\" error=\"boom\"");
}

TEST_CASE("union inequality holds on random families") {
    CheckReport r = check_union_inequality(50, 4, 15, 4242);
    CHECK(r.passed);
    CHECK(r.residual <= 1e-12);
    CHECK_THROWS(check_union_inequality(0, 4, 15, 4242));
}

TEST_CASE("equivariance on the Cantor system") {
    IfsInstance S = cantor();
    CheckReport r = check_equivariance(S, sample_addresses(S.alphabet(), 3, 8, 7));
    CHECK(r.passed);
    CHECK(r.residual <= 10 * S.tol().tol_point);
}

TEST_CASE("equivariance reports an error when the coding map diverges") {
    IfsInstance S = identity_system();
    CheckReport r = check_equivariance(S, sample_addresses(S.alphabet(), 2, 0, 7));
    CHECK(!r.passed);
    CHECK(!r.error.empty());
}

TEST_CASE("point fibred") {
    IfsInstance S = cantor();
    PointCloud B(1);
    B.add(Point{-0.5});
    B.add(Point{1.5});
    std::vector<std::size_t> depths;
    for (std::size_t n = 1; n <= 14; ++n) depths.push_back(n);
    auto addresses = sample_addresses(S.alphabet(), 3, 8, 7);
    SUBCASE("passes with monotone s_n on a phi-contractive system") {
        CheckReport r = check_point_fibred(S, B, depths, addresses);
        CHECK(r.passed);
    }
    SUBCASE("fails when the final depth cannot reach tol_attr") {
        CheckReport r = check_point_fibred(S, B, {1, 2, 3}, addresses);
        CHECK(!r.passed);  // 3^-3 * 1.5 is far above tol_attr
        CHECK(r.error.empty());
    }
    SUBCASE("rejects unsorted depths") {
        CheckReport r = check_point_fibred(S, B, {4, 2}, addresses);
        CHECK(!r.passed);
        CHECK(!r.error.empty());
    }
}

TEST_CASE("fixed points agree with the coding map") {
    CheckReport r = check_fixed_points(cantor(), 4);
    CHECK(r.passed);
}

TEST_CASE("periodic density") {
    IfsInstance S = cantor();
    AttractorResult attr = attractor(S, origin_cloud());
    REQUIRE(attr.converged);
    SUBCASE("decreasing e_L on the Cantor attractor") {
        CheckReport r = check_periodic_density(S, {2, 4, 6, 8}, attr.cloud,
                                               std::pow(3.0, -8) + S.tol().cell() +
                                                   S.tol().tol_attr);
        CHECK(r.passed);
    }
    SUBCASE("single-map system: every e_L is zero and ties are tolerated") {
        IfsInstance H = halving();
        AttractorResult a = attractor(H, origin_cloud());
        REQUIRE(a.converged);
        CheckReport r = check_periodic_density(H, {1, 2, 3}, a.cloud);
        CHECK(r.passed);
        CHECK(r.residual <= 0.0);
    }
    SUBCASE("unreachable threshold fails honestly") {
        CheckReport r = check_periodic_density(S, {2, 4}, attr.cloud, 1e-15);
        CHECK(!r.passed);
    }
}

TEST_CASE("pi continuity bound on the Cantor system") {
    IfsInstance S = cantor();
    PointCloud M = invariant_superset(S, origin_cloud(), 13);
    CheckReport r = check_pi_continuity(S, {1, 2, 4, 6}, M, 77);
    CHECK(r.passed);
    CHECK(r.residual <= 1e-12);
}

TEST_CASE("sample_addresses is deterministic and duplicate free") {
    auto a = sample_addresses(Alphabet(2), 3, 8, 5);
    auto b = sample_addresses(Alphabet(2), 3, 8, 5);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = i + 1; j < a.size(); ++j) CHECK(!(a[i] == a[j]));
}

TEST_CASE("implication chain") {
    SUBCASE("cantor passes every condition and is consistent") {
        ChainResult c = run_implication_chain(cantor(), 2024);
        REQUIRE(c.reports.size() == 5);
        for (const CheckReport& r : c.reports) CHECK(r.passed);
        CHECK(c.consistent);
    }
    SUBCASE("identity system fails the suite without contradicting the chain") {
        ChainResult c = run_implication_chain(identity_system(), 2024);
        REQUIRE(c.reports.size() == 5);
        CHECK(!c.reports[0].passed);  // no witness
        CHECK(!c.reports[1].passed);  // diameters stay put
        CHECK(c.consistent);
    }
}
