#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "credalkit/model.hpp"
#include "support/fixtures.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace credalkit;

TEST_CASE("variables reject duplicate values and empty domains") {
    CHECK_THROWS_AS(Variable("X", {}), Error);
    CHECK_THROWS_AS(Variable("X", {"a", "a"}), Error);
    CHECK_THROWS_AS(Space({Variable("X", {"a"}), Variable("X", {"b"})}), Error);
}

TEST_CASE("world enumeration is lexicographic and invertible") {
    const SpacePtr space = testfix::swan_space();
    CHECK(space->world_count() == 12);
    CHECK(space->label(space->world(0)) == "swan x_W aggressive");
    CHECK(space->label(space->world(1)) == "swan x_W tame");
    CHECK(space->label(space->world(2)) == "swan x_G aggressive");
    CHECK(space->label(space->world(11)) == "other x_B tame");
    for (std::size_t i = 0; i < space->world_count(); ++i)
        CHECK(space->index(space->world(i)) == i);
}

TEST_CASE("parser handles the surface grammar") {
    const SpacePtr space = testfix::swan_space();

    SUBCASE("conjunction with negation") {
        const Formula f = parse_formula("X=x_B & !Y=swan", space);
        REQUIRE(f.kind() == Formula::Kind::conjunction);
        CHECK(f.left().kind() == Formula::Kind::atom);
        CHECK(space->variable(f.left().variable()).name() == "X");
        CHECK(space->variable(f.left().variable()).domain()[f.left().value()] == "x_B");
        REQUIRE(f.right().kind() == Formula::Kind::negation);
        CHECK(f.right().child().kind() == Formula::Kind::atom);
        CHECK(space->variable(f.right().child().variable()).name() == "Y");
    }
    SUBCASE("constants") {
        CHECK(parse_formula("true", space).kind() == Formula::Kind::top);
        CHECK(parse_formula("false", space).kind() == Formula::Kind::bottom);
    }
    SUBCASE("unknown names are reported") {
        CHECK_THROWS_AS(parse_formula("X=q", space), ParseError);
        CHECK_THROWS_AS(parse_formula("W=x_B", space), ParseError);
        CHECK_THROWS_WITH_AS(parse_formula("X=q", space),
                             doctest::Contains("unknown value 'q'"), ParseError);
    }
    SUBCASE("syntax errors carry a position") {
        try {
            parse_formula("X=x_B &", space);
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(e.position() == 7);
        }
    }
    SUBCASE("precedence: ! binds tighter than &, & tighter than |") {
        const Formula f = parse_formula("!X=x_W & Y=swan | Z=tame", space);
        CHECK(f.kind() == Formula::Kind::disjunction);
        CHECK(f.left().kind() == Formula::Kind::conjunction);
        CHECK(f.left().left().kind() == Formula::Kind::negation);
    }
    SUBCASE("operators are left-associative") {
        const Formula f = parse_formula("X=x_W | X=x_G | X=x_B", space);
        CHECK(f.kind() == Formula::Kind::disjunction);
        CHECK(f.left().kind() == Formula::Kind::disjunction);
        CHECK(f.right().kind() == Formula::Kind::atom);
    }
}

TEST_CASE("print-parse round trip preserves structure") {
    testgen::Rng rng(20240811);
    for (int i = 0; i < 300; ++i) {
        const SpacePtr space = testgen::small_space(rng);
        const Formula f = testgen::random_formula(rng, space);
        const Formula back = parse_formula(to_string(f), space);
        CHECK(f.same_structure(back));
    }
}

TEST_CASE("satisfaction follows propositional semantics") {
    const SpacePtr space = testfix::swan_space();
    const World w({0, 2, 1}); // swan, x_B, tame
    CHECK(satisfies(w, parse_formula("X=x_B & Y=swan", space)));
    CHECK(satisfies(w, Formula::top(space)));
    CHECK_FALSE(satisfies(World({0, 0, 0}), parse_formula("!X=x_W", space)));
}

TEST_CASE("extension enumerates satisfying worlds in canonical order") {
    const SpacePtr space = testfix::binary_space();
    SUBCASE("atom extension") {
        const auto ext = extension(parse_formula("X=x", space), *space);
        REQUIRE(ext.size() == 2);
        CHECK(space->label(ext[0]) == "x y");
        CHECK(space->label(ext[1]) == "x ny");
    }
    SUBCASE("contradiction and excluded middle") {
        CHECK(extension(Formula::bottom(space), *space).empty());
        CHECK(extension(parse_formula("X=x | !X=x", space), *space).size() == 4);
    }
}

TEST_CASE("extension respects complement and intersection") {
    testgen::Rng rng(91);
    for (int i = 0; i < 200; ++i) {
        const SpacePtr space = testgen::small_space(rng);
        const Formula f = testgen::random_formula(rng, space);
        const Formula g = testgen::random_formula(rng, space);

        std::vector<bool> in_f(space->world_count(), false);
        for (std::size_t idx : extension_indices(f, *space)) in_f[idx] = true;

        const auto not_f = extension_indices(Formula::negation(f), *space);
        std::size_t count = 0;
        for (std::size_t idx : not_f) {
            CHECK_FALSE(in_f[idx]);
            ++count;
        }
        CHECK(count + extension_indices(f, *space).size() == space->world_count());

        std::vector<bool> in_g(space->world_count(), false);
        for (std::size_t idx : extension_indices(g, *space)) in_g[idx] = true;
        for (std::size_t idx : extension_indices(Formula::conjunction(f, g), *space))
            CHECK((in_f[idx] && in_g[idx]));
    }
}

TEST_CASE("closest world: atomic evidence overwrites one coordinate") {
    const SpacePtr space = testfix::binary_space();
    const Formula on_x = parse_formula("X=x", space);
    CHECK(closest_world(World({1, 0}), on_x, *space) == World({0, 0}));
    CHECK(closest_world(World({0, 1}), on_x, *space) == World({0, 1}));
}

TEST_CASE("closest world: Hamming minimum with canonical tie-break") {
    const SpacePtr space =
        Space::make({Variable("X", {"x_W", "x_G", "x_B"}), Variable("Y", {"swan", "other"})});
    // both x_G and x_B sit at distance 1; domain order prefers x_G
    const World start({0, 0});
    const Formula f = parse_formula("X=x_B | X=x_G", space);
    const World expected = *testoracle::closest_world_scan(*space, start, f);
    CHECK(space->label(expected) == "x_G swan");
    CHECK(closest_world(start, f, *space) == expected);
}

TEST_CASE("closest world is idempotent and lands in the extension") {
    testgen::Rng rng(4242);
    int checked = 0;
    while (checked < 200) {
        const SpacePtr space = testgen::small_space(rng);
        const Formula f = testgen::random_formula(rng, space);
        if (extension_indices(f, *space).empty()) continue;
        ++checked;
        const World w = space->world(testgen::pick(rng, 0, space->world_count() - 1));
        const World moved = closest_world(w, f, *space);
        CHECK(satisfies(moved, f));
        CHECK(closest_world(moved, f, *space) == moved);
        CHECK(moved == *testoracle::closest_world_scan(*space, w, f));
        if (f.kind() == Formula::Kind::atom) {
            for (std::size_t v = 0; v < w.size(); ++v)
                if (v != f.variable()) CHECK(moved[v] == w[v]);
        }
    }
}

TEST_CASE("closest world on an unsatisfiable formula is an error") {
    const SpacePtr space = testfix::binary_space();
    CHECK_THROWS_AS(closest_world(World({0, 0}), Formula::bottom(space), *space),
                    NoClosestWorldError);
    CHECK_THROWS_AS(closest_world(World({0, 0}), parse_formula("X=x & !X=x", space), *space),
                    NoClosestWorldError);
}
