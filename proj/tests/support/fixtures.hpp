#pragma once

// The recurring test models, built out longhand so the file formats and
// factor assembly are checked against an independent construction.

#include "credalkit/credal.hpp"

namespace credalkit::testfix {

/// kind in {swan, other}; color in {x_W, x_G, x_B}; temper in
/// {aggressive, tame}. Declaration order: kind, color, temper.
inline SpacePtr swan_space() {
    return Space::make({Variable("Y", {"swan", "other"}),
                        Variable("X", {"x_W", "x_G", "x_B"}),
                        Variable("Z", {"aggressive", "tame"})});
}

/// Joint built by hand as P(Y) * P(X|Y) * P(Z|Y) with
///   P(swan) = 7/10
///   P(X|swan) = (4/5, 1/5, 0),  P(X|other) = (1/2, 3/10, 1/5)
///   P(Z|swan) = (19/20, 1/20),  P(Z|other) = (1/5, 4/5)
inline Pmf swan_joint(const SpacePtr& space = swan_space()) {
    const Rational py[] = {Rational(7, 10), Rational(3, 10)};
    const Rational px[2][3] = {{Rational(4, 5), Rational(1, 5), Rational(0)},
                               {Rational(1, 2), Rational(3, 10), Rational(1, 5)}};
    const Rational pz[2][2] = {{Rational(19, 20), Rational(1, 20)},
                               {Rational(1, 5), Rational(4, 5)}};
    std::vector<Rational> weights(space->world_count());
    for (std::size_t i = 0; i < space->world_count(); ++i) {
        const World w = space->world(i);
        weights[i] = py[w[0]] * px[w[0]][w[1]] * pz[w[0]][w[2]];
    }
    return Pmf(space, std::move(weights));
}

inline ConditionalEvidence sighting_evidence(const SpacePtr& space = swan_space()) {
    return ConditionalEvidence(space, 1, 0, 0,
                               {Rational(4, 5), Rational(1, 10), Rational(1, 10)});
}

/// X in {x, nx}, Y in {y, ny}.
inline SpacePtr binary_space() {
    return Space::make({Variable("X", {"x", "nx"}), Variable("Y", {"y", "ny"})});
}

/// P(x, y) = P(x, ny) = 0, P(nx, y) = 3/5, P(nx, ny) = 2/5.
inline Pmf zero_support_pmf(const SpacePtr& space = binary_space()) {
    return Pmf(space, {Rational(0), Rational(0), Rational(3, 5), Rational(2, 5)});
}

/// X in {x1, x2, x3}, Y in {y1, y2}; declaration order X, Y.
inline SpacePtr grid_space() {
    return Space::make({Variable("X", {"x1", "x2", "x3"}), Variable("Y", {"y1", "y2"})});
}

/// World bounds (x-major):
///   (x1,y1)=[0,0] (x1,y2)=[0,0] (x2,y1)=[3/20,7/20]
///   (x2,y2)=[1/4,49/100] (x3,y1)=[0,9/20] (x3,y2)=[3/100,1/2]
inline IntervalSpec grid_intervals(const SpacePtr& space = grid_space()) {
    std::vector<std::pair<Rational, Rational>> bounds = {
        {Rational(0), Rational(0)},
        {Rational(0), Rational(0)},
        {Rational(3, 20), Rational(7, 20)},
        {Rational(1, 4), Rational(49, 100)},
        {Rational(0), Rational(9, 20)},
        {Rational(3, 100), Rational(1, 2)},
    };
    return IntervalSpec(space, std::move(bounds));
}

inline MarginalEvidence grid_marginal_evidence(const SpacePtr& space = grid_space()) {
    return MarginalEvidence(space, 0, {Rational(3, 10), Rational(0), Rational(7, 10)});
}

inline CredalEvidence grid_credal_evidence(const SpacePtr& space = grid_space()) {
    return CredalEvidence(space, 0,
                          {{Rational(1, 5), Rational(2, 5)},
                           {Rational(0), Rational(1, 10)},
                           {Rational(1, 2), Rational(4, 5)}});
}

} // namespace credalkit::testfix
