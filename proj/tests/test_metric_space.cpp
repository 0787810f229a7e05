#include "treeprod/metric_space.hpp"

#include <doctest.h>

#include <sstream>

using namespace treeprod;

TEST_CASE("rational parsing and printing") {
    CHECK(parse_rational("1/9") == Rational(1, 9));
    CHECK(parse_rational("-0.125") == Rational(-1, 8));
    CHECK(parse_rational("6/4") == Rational(3, 2));
    CHECK(parse_rational("010/08") == Rational(5, 4));
    CHECK(parse_rational("0.5") == Rational(1, 2));
    CHECK(to_string(Rational(6, 3)) == "2");
    CHECK(to_string(Rational(-2, 6)) == "-1/3");
    CHECK(power(Rational(1, 9), -2) == 81);
    CHECK(power(Rational(2, 3), 3) == Rational(8, 27));
    CHECK_THROWS(parse_rational("x/3"));
}

TEST_CASE("cantor points are left endpoints of the triadic intervals") {
    const auto s = generate_cantor(2);
    REQUIRE(s.size() == 4);
    const Rational xs[] = {0, Rational(2, 9), Rational(2, 3), Rational(8, 9)};
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) {
            Rational d = xs[i] - xs[j];
            if (d < 0) d = -d;
            CHECK(s.distance(i, j) == d);
        }
    CHECK(s.diameter() == Rational(8, 9));
    CHECK(s.min_distance() == Rational(2, 9));
}

TEST_CASE("circle uses arc length") {
    const auto s = generate_circle(12);
    CHECK(s.distance(0, 1) == Rational(1, 12));
    CHECK(s.distance(0, 11) == Rational(1, 12));
    CHECK(s.distance(2, 8) == Rational(1, 2));
    CHECK(s.diameter() == Rational(1, 2));
}

TEST_CASE("grid uses the sup metric") {
    const auto s = generate_grid(3);
    REQUIRE(s.size() == 9);
    CHECK(s.distance(0, 4) == Rational(1, 2));
    CHECK(s.distance(0, 8) == 1);
    CHECK(s.distance(0, 5) == 1);
}

TEST_CASE("metric validation reports the first defect") {
    std::vector<std::vector<Rational>> d{{0, 1, 5}, {1, 0, 1}, {5, 1, 0}};
    auto v = validate_metric(d);
    REQUIRE(v);
    CHECK(v->kind == MetricViolation::Kind::triangle);
    d[2][0] = 2;
    d[0][2] = 2;
    CHECK_FALSE(validate_metric(d));
    d[1][0] = 3;
    REQUIRE(validate_metric(d));
    CHECK(validate_metric(d)->kind == MetricViolation::Kind::asymmetric);
    CHECK_THROWS_AS(FiniteMetricSpace("bad", {{0, 0}, {0, 0}}), MetricError);
}

TEST_CASE("csv loader") {
    std::istringstream in("3\n0,1/2,1\n1/2,0,1/2\n1,1/2,0\n");
    const auto s = load_space_csv(in);
    CHECK(s.size() == 3);
    CHECK(s.distance(0, 2) == 1);
    std::istringstream bad("2\n0,1\n2,0\n");
    CHECK_THROWS_AS(load_space_csv(bad), MetricError);
}

TEST_CASE("k0 is the largest k with diam < r^k") {
    const Rational r(1, 9);
    for (const Rational diam : {Rational(8, 9), Rational(1, 2), Rational(1, 9), Rational(1, 81), Rational(10)}) {
        const int k = compute_k0(diam, r);
        CHECK(diam < power(r, k));
        CHECK_FALSE(diam < power(r, k + 1));
    }
    CHECK(compute_k0(Rational(1, 9), r) == 0);
}

TEST_CASE("greedy nets are separated and maximal") {
    const auto s = generate_circle(81);
    for (const Rational sep : {Rational(1, 9), Rational(1, 81), Rational(1, 4)}) {
        const auto net = maximal_separated_net(s, sep);
        for (std::size_t i = 0; i < net.size(); ++i)
            for (std::size_t j = i + 1; j < net.size(); ++j) CHECK(s.distance(net[i], net[j]) >= sep);
        for (PointId p = 0; p < s.size(); ++p) {
            bool near = false;
            for (PointId q : net) near = near || s.distance(p, q) < sep;
            CHECK(near);
        }
    }
    CHECK(maximal_separated_net(s, Rational(1, 9)).size() == 9);
}

TEST_CASE("scale parameters") {
    const auto s = generate_cantor(4);
    const auto sc = make_scale(s, Rational(1, 9));
    CHECK(sc.k0 == 0);
    CHECK(sc.ball_radius(2) == Rational(2, 81));
    CHECK_THROWS(make_scale(s, Rational(1, 5)));
    CHECK(make_scale(s, Rational(1, 9), 4).max_level == 4);
}

TEST_CASE("small generated spaces") {
    const auto c1 = generate_cantor(1);
    REQUIRE(c1.size() == 2);
    CHECK(c1.distance(0, 1) == Rational(2, 3));
    const auto s2 = generate_circle(2);
    CHECK(s2.distance(0, 1) == Rational(1, 2));
    CHECK_THROWS_AS(generate_grid(1), MetricError);
    CHECK_THROWS_AS(FiniteMetricSpace("one", {{0}}), MetricError);
    CHECK_FALSE(validate_metric({{0, Rational(2, 9)}, {Rational(2, 9), 0}}));
}

TEST_CASE("k0 at r = 1/6") {
    const Rational r(1, 6);
    CHECK(compute_k0(1, r) == -1);
    CHECK(compute_k0(Rational(1, 2), r) == 0);
    CHECK(compute_k0(5, r) == -1);
    CHECK_THROWS_AS(compute_k0(0, r), MetricError);
}

TEST_CASE("greedy net on three line points") {
    const Rational x[] = {0, Rational(2, 5), 1};
    std::vector<std::vector<Rational>> d(3, std::vector<Rational>(3));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) d[i][j] = x[i] > x[j] ? x[i] - x[j] : x[j] - x[i];
    const FiniteMetricSpace s("line", d);
    CHECK(maximal_separated_net(s, Rational(1, 2)) == std::vector<PointId>{0, 2});
    CHECK(maximal_separated_net(s, Rational(3, 10)) == std::vector<PointId>{0, 1, 2});
    CHECK(maximal_separated_net(s, Rational(1, 2), {1}) == std::vector<PointId>{1});
    CHECK_THROWS_AS(maximal_separated_net(s, 0), MetricError);
}

TEST_CASE("doubling estimates") {
    CHECK(doubling_estimate(FiniteMetricSpace("two", {{0, 1}, {1, 0}})) == 1);
    CHECK(doubling_estimate(generate_cantor(4)) <= 4);
    CHECK(doubling_estimate(generate_grid(4)) <= 16);
}
