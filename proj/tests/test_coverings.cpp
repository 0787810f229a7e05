#include "treeprod/coverings.hpp"
#include "treeprod/io.hpp"

#include <doctest.h>

#include <memory>

using namespace treeprod;

namespace {

struct Setup {
    FiniteMetricSpace space;
    std::shared_ptr<BallSystem> balls;
    ApproxGraph graph;
    CoveringGeometry geo;

    Setup(FiniteMetricSpace s, const Rational& r, int J, BallSemantics sem)
        : space(std::move(s)),
          balls(std::make_shared<BallSystem>(space, make_scale(space, r, J), sem)),
          graph(build_approximation(balls)),
          geo(*balls) {}
};

Setup& cantor() {
    static Setup s(generate_cantor(4), Rational(1, 9), 4, BallSemantics::certified);
    return s;
}

Setup& circle() {
    static Setup s(generate_circle(81), Rational(1, 9), 2, BallSemantics::pointwise);
    return s;
}

GeneratorOptions circle_options(int colors) {
    GeneratorOptions o;
    o.colors = colors;
    if (colors == 2) o.lattice = {LatticeParams{6, Rational(1, 9), Rational(0), {Rational(0), Rational(1, 12)}}};
    o.validate = false;
    return o;
}

// Per level and color: members pairwise disjoint, union is everything, diameters below r^j.
void check_partition(const CoveringSequence& seq, const FiniteMetricSpace& space) {
    for (int j = 0; j <= seq.top_level(); ++j)
        for (int c = 0; c < seq.colors; ++c) {
            PointSet seen(space.size());
            for (const auto& u : seq.family(j, c)) {
                CHECK((seen & u.members).none());
                seen |= u.members;
                Rational diam = 0;
                for (auto a = u.members.find_first(); a != PointSet::npos; a = u.members.find_next(a))
                    for (auto b = u.members.find_first(); b != PointSet::npos; b = u.members.find_next(b))
                        diam = std::max(diam, space.distance(a, b));
                if (j > 0) CHECK(diam < power(seq.r, j));
            }
        }
    // Every point lies in some element of each level, over all colors.
    for (int j = 0; j <= seq.top_level(); ++j) {
        PointSet any(space.size());
        for (int c = 0; c < seq.colors; ++c)
            for (const auto& u : seq.family(j, c)) any |= u.members;
        CHECK(any.all());
    }
}

bool has_failure(const CoveringReport& rep, const std::string& id) {
    for (const auto& c : rep.checks)
        if (c.id == id) return !c.ok();
    return false;
}

}  // namespace

TEST_CASE("cantor ultrametric covering passes the validator") {
    auto& s = cantor();
    GeneratorOptions o;
    const auto seq = generate_covering_sequence(CoveringKind::ultrametric, s.graph, s.geo, o);
    CHECK(seq.top_level() == required_covering_levels(s.graph) - 1);
    CHECK(seq.top_level() == 3);
    const auto rep = validate_covering_sequence(seq, s.graph, s.geo);
    INFO(rep.first_violation());
    CHECK(rep.passed());
    check_partition(seq, s.space);
    for (const auto& c : rep.checks) CHECK(c.checked > 0);
}

TEST_CASE("two-color shifted arcs cover the circle") {
    auto& s = circle();
    const auto seq = generate_covering_sequence(CoveringKind::shifted_arcs, s.graph, s.geo, circle_options(2));
    const auto rep = validate_covering_sequence(seq, s.graph, s.geo);
    INFO(rep.first_violation());
    CHECK(rep.passed());
    check_partition(seq, s.space);
    REQUIRE(rep.mesh.size() == 2);
    CHECK(rep.mesh[1] < Rational(1, 9));
    CHECK(rep.lebesgue[1] > 0);
}

TEST_CASE("one color cannot cover the circle") {
    auto& s = circle();
    auto o = circle_options(1);
    o.lattice = {LatticeParams{6, Rational(1, 9), Rational(0), {Rational(0)}}};
    const auto seq = generate_covering_sequence(CoveringKind::shifted_arcs, s.graph, s.geo, o);
    const auto rep = validate_covering_sequence(seq, s.graph, s.geo);
    CHECK_FALSE(rep.passed());
    CHECK(has_failure(rep, "covering.covers"));

    o.validate = true;
    o.lattice.clear();
    o.search_limit = 200;
    CHECK_THROWS_AS(generate_covering_sequence(CoveringKind::shifted_arcs, s.graph, s.geo, o), CoveringError);
}

TEST_CASE("validator catches a dropped element") {
    auto& s = circle();
    auto seq = generate_covering_sequence(CoveringKind::shifted_arcs, s.graph, s.geo, circle_options(2));
    auto& fam = seq.families[1][0];
    REQUIRE(fam.size() > 1);
    // Drop the same arc from both colors so some point loses all its elements.
    const auto victim = fam.front().members;
    fam.erase(fam.begin());
    auto& other = seq.families[1][1];
    std::erase_if(other, [&](const CoveringElement& u) { return (u.members & victim).any(); });
    const auto rep = validate_covering_sequence(seq, s.graph, s.geo);
    CHECK_FALSE(rep.passed());
    CHECK(has_failure(rep, "covering.covers"));
}

TEST_CASE("covering json round trip") {
    for (Setup* s : {&cantor(), &circle()}) {
        const bool arcs = s == &circle();
        const auto seq = arcs ? generate_covering_sequence(CoveringKind::shifted_arcs, s->graph, s->geo, circle_options(2))
                              : generate_covering_sequence(CoveringKind::ultrametric, s->graph, s->geo, {});
        const Json j = covering_to_json(seq);
        const auto back = covering_from_json(Json::parse(j.dump()), s->geo);
        REQUIRE(back.top_level() == seq.top_level());
        CHECK(back.colors == seq.colors);
        CHECK(back.r == seq.r);
        for (int lv = 0; lv <= seq.top_level(); ++lv)
            for (int c = 0; c < seq.colors; ++c) {
                REQUIRE(back.family(lv, c).size() == seq.family(lv, c).size());
                for (std::size_t i = 0; i < seq.family(lv, c).size(); ++i) {
                    CHECK(back.family(lv, c)[i].id == seq.family(lv, c)[i].id);
                    CHECK(back.family(lv, c)[i].members == seq.family(lv, c)[i].members);
                }
            }
        CHECK(covering_to_json(back) == j);
        CHECK(validate_covering_sequence(back, s->graph, s->geo).passed());
    }
}

TEST_CASE("covering kinds by name") {
    for (auto k : {CoveringKind::ultrametric, CoveringKind::shifted_arcs, CoveringKind::shifted_cubes})
        CHECK(parse_covering_kind(to_string(k)) == k);
    CHECK_THROWS(parse_covering_kind("hexagons"));
}

TEST_CASE("mesh values") {
    auto& s = cantor();
    const auto seq = generate_covering_sequence(CoveringKind::ultrametric, s.graph, s.geo, {});
    CHECK(mesh(level_elements(seq, 0), s.geo) == s.space.diameter());
    const auto rep = validate_covering_sequence(seq, s.graph, s.geo);
    CHECK(rep.mesh[2] < Rational(1, 81));
    CHECK_THROWS_AS(mesh({}, s.geo), CoveringError);

    static const auto space = generate_circle(36);
    const BallSystem balls(space, make_scale(space, Rational(1, 9), 1), BallSemantics::certified);
    const CoveringGeometry geo(balls);
    const auto a = geo.make("a", 0, 1, Region::circle({{0, Rational(1, 9)}}));
    const auto b = geo.make("b", 0, 1, Region::circle({{Rational(1, 2), Rational(1, 2) + Rational(1, 10)}}));
    CHECK(mesh({&a, &b}, geo) == Rational(1, 9));
}

TEST_CASE("lebesgue number of two overlapping half arcs") {
    static const auto space = generate_circle(36);
    const BallSystem balls(space, make_scale(space, Rational(1, 9), 1), BallSemantics::certified);
    const CoveringGeometry geo(balls);
    for (const Rational t : {Rational(1, 6), Rational(1, 9), Rational(1, 18)}) {
        const auto a = geo.make("a", 0, 1, Region::circle({{0, Rational(1, 2) + t}}));
        const auto b = geo.make("b", 1, 1, Region::circle({{Rational(1, 2), 1 + t}}));
        CHECK(lebesgue_number({&a, &b}, geo) >= t / 2);
    }
    const auto half = geo.make("half", 0, 1, Region::circle({{0, Rational(1, 2)}}));
    CHECK_THROWS_AS(lebesgue_number({&half}, geo), CoveringError);
}

TEST_CASE("a single level of {Z} is a valid sequence") {
    static const auto space = generate_cantor(3);
    auto balls = std::make_shared<BallSystem>(space, make_scale(space, Rational(1, 9), 1), BallSemantics::certified);
    const auto g = build_approximation(balls);
    const CoveringGeometry geo(*balls);
    const auto seq = generate_covering_sequence(CoveringKind::ultrametric, g, geo, {});
    CHECK(seq.top_level() == 0);
    CHECK(validate_covering_sequence(seq, g, geo).passed());
}

TEST_CASE("ultrametric covering of cantor(3)") {
    static const auto space = generate_cantor(3);
    auto balls = std::make_shared<BallSystem>(space, make_scale(space, Rational(1, 9), 3), BallSemantics::certified);
    const auto g = build_approximation(balls);
    const CoveringGeometry geo(*balls);
    const auto seq = generate_covering_sequence(CoveringKind::ultrametric, g, geo, {});
    CHECK(validate_covering_sequence(seq, g, geo).passed());
}

TEST_CASE("overlapping arcs of one color are caught") {
    auto& s = circle();
    auto seq = generate_covering_sequence(CoveringKind::shifted_arcs, s.graph, s.geo, circle_options(2));
    auto extra = seq.families[1][1].front();
    extra.id += ".copy";
    extra.color = 0;
    seq.families[1][0].push_back(extra);
    const auto rep = validate_covering_sequence(seq, s.graph, s.geo);
    CHECK(has_failure(rep, "covering.same_color_disjoint"));

    auto same = circle_options(2);
    same.lattice = {LatticeParams{6, Rational(1, 9), Rational(0), {Rational(0), Rational(0)}}};
    const auto twin = generate_covering_sequence(CoveringKind::shifted_arcs, s.graph, s.geo, same);
    CHECK_FALSE(validate_covering_sequence(twin, s.graph, s.geo).passed());
}
