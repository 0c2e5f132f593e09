#include <cmath>
#include <random>

#include "doctest.h"
#include "ifslab/maps.hpp"

using namespace ifslab;

namespace {

AffineMap cantor_left() { return {{1.0 / 3.0}, {0.0}}; }
AffineMap cantor_right() { return {{1.0 / 3.0}, {2.0 / 3.0}}; }

}  // namespace

TEST_CASE("comparison function families") {
    SUBCASE("linear") {
        ComparisonFunction phi = ComparisonFunction::linear(0.5);
        CHECK(phi(2.0) == 1.0);
        CHECK(phi.iterate(8.0, 3) == 1.0);
        CHECK_THROWS(ComparisonFunction::linear(1.0));
        CHECK_THROWS(ComparisonFunction::linear(0.0));
        CHECK_THROWS(ComparisonFunction::linear(-0.2));
    }
    SUBCASE("rational phi(t)=t/(1+t), closed-form iterate t/(1+nt)") {
        ComparisonFunction phi = ComparisonFunction::rational();
        CHECK(phi(1.0) == 0.5);
        // brute iteration oracle
        for (double t : {0.25, 1.0, 7.5}) {
            double brute = t;
            for (int n = 0; n < 20; ++n) brute = phi(brute);
            CHECK(phi.iterate(t, 20) == doctest::Approx(brute).epsilon(1e-12));
            CHECK(phi.iterate(t, 20) == doctest::Approx(t / (1 + 20 * t)).epsilon(1e-12));
        }
    }
    SUBCASE("step table is right-continuous and below the identity") {
        ComparisonFunction phi = ComparisonFunction::table({1.0, 2.0}, {0.5, 1.5});
        CHECK(phi(0.5) == 0.0);   // below the first knot
        CHECK(phi(1.0) == 0.5);   // value at the knot itself
        CHECK(phi(1.5) == 0.5);
        CHECK(phi(3.0) == 1.5);
        CHECK_THROWS(ComparisonFunction::table({1.0}, {1.0}));       // not < t
        CHECK_THROWS(ComparisonFunction::table({2.0, 1.0}, {0.5, 0.4}));
        CHECK_THROWS(ComparisonFunction::table({1.0, 2.0}, {0.9, 0.5}));  // not increasing
    }
}

TEST_CASE("operator norm") {
    CHECK(operator_norm({1.0, 0.0, 0.0, 1.0}, 2) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(operator_norm({0.5, 0.0, 0.0, 0.25}, 2) == doctest::Approx(0.5).epsilon(1e-9));
    double c = 0.7, a = std::cos(1.1) * c, b = std::sin(1.1) * c;
    CHECK(operator_norm({a, -b, b, a}, 2) == doctest::Approx(0.7).epsilon(1e-9));
}

TEST_CASE("affine fixed points") {
    CHECK(affine_fixed_point(cantor_right(), 1)[0] ==
          doctest::Approx(1.0).epsilon(1e-14));
    CHECK(affine_fixed_point(cantor_left(), 1) == Point{0.0});
    // x -> (x+1)/2, y -> y/3 + 2 fixes (1, 3)
    AffineMap f{{0.5, 0.0, 0.0, 1.0 / 3.0}, {0.5, 2.0}};
    Point p = affine_fixed_point(f, 2);
    CHECK(p[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(p[1] == doctest::Approx(3.0).epsilon(1e-14));
    CHECK_THROWS(affine_fixed_point({{1.0}, {0.5}}, 1));  // identity part, singular
}

TEST_CASE("word evaluation composes left to right, last letter first") {
    std::vector<ContractionMap> maps;
    maps.emplace_back(cantor_left());
    maps.emplace_back(cantor_right());
    Alphabet alphabet(2);
    Word w = Word::parse(alphabet, "0.1");
    // f_01(x) = f_0(f_1(x)) = (x/3 + 2/3)/3
    CHECK(eval_word(maps, w, Point{0.0})[0] ==
          doctest::Approx(2.0 / 9.0).epsilon(1e-15));
    CHECK(eval_word(maps, Word::parse(alphabet, ""), Point{0.4}) == Point{0.4});

    SUBCASE("homomorphism f_uv = f_u o f_v on random inputs") {
        std::mt19937_64 rng(31);
        std::uniform_real_distribution<double> unit(-2.0, 2.0);
        for (const char* utext : {"0", "1.0", "0.0.1"}) {
            for (const char* vtext : {"1", "0.1"}) {
                Word u = Word::parse(alphabet, utext);
                Word v = Word::parse(alphabet, vtext);
                Point x{unit(rng)};
                CHECK(eval_word(maps, concat(u, v), x) ==
                      eval_word(maps, u, eval_word(maps, v, x)));
            }
        }
    }

    SUBCASE("compose_word_affine agrees with eval_word") {
        Word w2 = Word::parse(alphabet, "1.0.1");
        AffineMap fw = compose_word_affine(maps, w2);
        for (double x : {-1.0, 0.0, 0.7}) {
            Point via_compose{fw.matrix[0] * x + fw.offset[0]};
            CHECK(eval_word(maps, w2, Point{x})[0] ==
                  doctest::Approx(via_compose[0]).epsilon(1e-15));
        }
    }
}

TEST_CASE("sinusoidal maps") {
    ContractionMap f(1, SinusoidalMap{0.5, {1.0}});
    CHECK(f.eval(Point{0.0}) == Point{1.0});
    CHECK(f.eval(Point{std::asin(1.0)})[0] == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(!f.is_affine());
}

TEST_CASE("declared affine witness must cover the operator norm") {
    CHECK_NOTHROW(ContractionMap(cantor_left(),
                                 ComparisonFunction::linear(1.0 / 3.0)));
    CHECK_THROWS(ContractionMap(cantor_left(), ComparisonFunction::linear(0.25)));
}

TEST_CASE("phi-contractivity sampling") {
    ComparisonFunction third = ComparisonFunction::linear(1.0 / 3.0);
    Point lo{-1.0}, hi{2.0};
    SUBCASE("true witness produces a clean report") {
        ContractionMap f(cantor_left(), third);
        PhiCheckReport r = check_phi_contractive(f, third, 2000, lo, hi, 41);
        CHECK(r.clean());
        CHECK(r.samples == 2000);
    }
    SUBCASE("too-small witness is flagged with worst violations first") {
        ContractionMap f(cantor_left(), third);
        PhiCheckReport r =
            check_phi_contractive(f, ComparisonFunction::linear(0.25), 2000, lo, hi, 41);
        REQUIRE(!r.clean());
        for (std::size_t i = 1; i < r.violations.size(); ++i)
            CHECK(r.violations[i - 1].lhs - r.violations[i - 1].rhs >=
                  r.violations[i].lhs - r.violations[i].rhs);
    }
    SUBCASE("an expanding map violates any linear witness") {
        ContractionMap f(AffineMap{{2.0}, {0.0}});
        PhiCheckReport r =
            check_phi_contractive(f, ComparisonFunction::linear(0.9), 2000, lo, hi, 41);
        CHECK(!r.clean());
    }
}
