#include "doctest.h"

#include <cmath>

#include "csgn/profiles.hpp"

using namespace csgn;

TEST_CASE("mother bump: values and support") {
    CHECK(mother_bump::eval(0.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
    CHECK(mother_bump::eval(1.0) == 0.0);
    CHECK(mother_bump::eval(-1.0) == 0.0);
    CHECK(mother_bump::eval(1.5) == 0.0);
    CHECK(mother_bump::eval(0.5) > 0.0);
    CHECK(mother_bump::eval(0.5) == mother_bump::eval(-0.5));
    CHECK(mother_bump::derivative(0.0) == 0.0);
    CHECK(mother_bump::derivative(2.0) == 0.0);
}

TEST_CASE("mother bump: derivative matches central differences") {
    for (double t : {-0.8, -0.3, 0.2, 0.6, 0.9}) {
        const double h = 1e-6;
        const double fd =
            (mother_bump::eval(t + h) - mother_bump::eval(t - h)) / (2 * h);
        CHECK(mother_bump::derivative(t) == doctest::Approx(fd).epsilon(1e-7));
    }
}

TEST_CASE("single bump eval") {
    const RadialProfile g({{2.0, 10.0, 1.0}});
    CHECK(g.eval(10.0) == doctest::Approx(2.0 * std::exp(-1.0)));
    CHECK(g.eval(11.0) == 0.0);
    CHECK(g.eval(9.0) == 0.0);
    CHECK(g.eval(0.0) == 0.0);
    CHECK(g.eval(10.5) == doctest::Approx(2.0 * mother_bump::eval(0.5)));
    CHECK_FALSE(g.trivial());
    CHECK(g.support() == std::vector<std::pair<double, double>>{{9.0, 11.0}});
}

TEST_CASE("bump validation") {
    CHECK_THROWS_AS(RadialProfile({{0.0, 10.0, 1.0}}), Error);
    CHECK_THROWS_AS(RadialProfile({{1.0, 1.0, 2.0}}), Error);  // R <= S
    CHECK_THROWS_AS(RadialProfile({{1.0, 10.0, -1.0}}), Error);
    try {
        RadialProfile({{1.0, 10.0, 1.0}, {1.0, 11.5, 1.0}});
        FAIL("expected overlap error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::OverlappingSupports);
    }
    // touching supports count as overlapping (disjointness is strict)
    CHECK_THROWS_AS(RadialProfile({{1.0, 10.0, 1.0}, {1.0, 12.0, 1.0}}), Error);
}

TEST_CASE("bumps are sorted by center") {
    const RadialProfile g({{1.0, 20.0, 1.0}, {3.0, 5.0, 1.0}});
    CHECK(g.bumps()[0].R == 5.0);
    CHECK(g.bumps()[1].R == 20.0);
    CHECK(g.eval(20.0) == doctest::Approx(std::exp(-1.0)));
    CHECK(g.eval(5.0) == doctest::Approx(3.0 * std::exp(-1.0)));
}

TEST_CASE("derivative of a profile") {
    const RadialProfile g({{2.0, 10.0, 0.5}});
    CHECK(g.eval_derivative(10.0) == 0.0);
    CHECK(g.eval_derivative(20.0) == 0.0);
    for (double r : {9.7, 9.9, 10.2, 10.4}) {
        const double h = 1e-6;
        const double fd = (g.eval(r + h) - g.eval(r - h)) / (2 * h);
        CHECK(g.eval_derivative(r) == doctest::Approx(fd).epsilon(1e-6));
    }
}

TEST_CASE("dilation closure") {
    const RadialProfile g({{1.5, 10.0, 1.0}});
    const double c = 3.0;
    const RadialProfile gc({{1.5, c * 10.0, c * 1.0}});
    for (double r : {9.2, 10.0, 10.8}) {
        CHECK(gc.eval(c * r) == doctest::Approx(g.eval(r)).epsilon(1e-13));
        CHECK(gc.eval_derivative(c * r) ==
              doctest::Approx(g.eval_derivative(r) / c).epsilon(1e-12));
    }
}

TEST_CASE("json round trip") {
    const RadialProfile g({{1.0, 10.0, 1.0}, {0.5, 100.0, 2.0}});
    const RadialProfile h = RadialProfile::from_json(g.to_json());
    REQUIRE(h.bumps().size() == 2);
    CHECK(h.bumps()[0].lambda == 1.0);
    CHECK(h.bumps()[1].R == 100.0);
    CHECK(h.bumps()[1].S == 2.0);

    CHECK_THROWS_AS(RadialProfile::from_json("not json"), Error);
    CHECK_THROWS_AS(RadialProfile::from_json("{}"), Error);
    CHECK_THROWS_AS(RadialProfile::from_json("{\"bumps\": [{\"lambda\": 1}]}"),
                    Error);
}

TEST_CASE("expand_multibump") {
    const RadialProfile g = expand_multibump({1, 10.0, 0.25, -0.875});
    REQUIRE(g.bumps().size() == 1);
    CHECK(g.bumps()[0].lambda == doctest::Approx(std::pow(10.0, -0.875)));
    CHECK(g.bumps()[0].R == 10.0);
    CHECK(g.bumps()[0].S == doctest::Approx(std::pow(10.0, 0.25)));

    const RadialProfile g3 = expand_multibump({3, 10.0, 0.25, -0.875});
    CHECK(g3.bumps().size() == 3);
    auto sup = g3.support();
    for (std::size_t i = 0; i + 1 < sup.size(); ++i)
        CHECK(sup[i].second < sup[i + 1].first);

    CHECK_THROWS_AS(expand_multibump({2, 1.01, 0.25, -0.875}), Error);
    CHECK_THROWS_AS(expand_multibump({0, 10.0, 0.25, -0.875}), Error);
    CHECK_THROWS_AS(expand_multibump({2, 1.0, 0.25, -0.875}), Error);
}

TEST_CASE("empty profile is trivial") {
    const RadialProfile g;
    CHECK(g.trivial());
    CHECK(g.eval(1.0) == 0.0);
    CHECK(g.support().empty());
}
