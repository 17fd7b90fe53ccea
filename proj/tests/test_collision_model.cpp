#include "gaucoll/collision_model.hpp"

#include "doctest.h"
#include "gaucoll/observables.hpp"
#include "gaucoll/symplectic.hpp"
#include "helpers.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace gaucoll;
using gaucoll::testing::max_abs_diff;

namespace {
const double kPi = std::numbers::pi;
}

TEST_CASE("beam-splitter system-ancilla blocks") {
    const Mat id = Mat::Identity(2, 2);

    auto spec = ModelSpec::beam_splitter(0.0, 0.0, thermal_cm(1.0), vacuum_cm());
    auto blocks = build_se_blocks(spec);
    CHECK(max_abs_diff(blocks.a, id) == 0.0);
    CHECK(blocks.b.cwiseAbs().maxCoeff() == 0.0);
    CHECK(blocks.c.cwiseAbs().maxCoeff() == 0.0);
    CHECK(max_abs_diff(blocks.d, id) == 0.0);

    // full SWAP
    spec = ModelSpec::beam_splitter(kPi / 2, 0.0, thermal_cm(1.0), vacuum_cm());
    blocks = build_se_blocks(spec);
    CHECK(blocks.a.cwiseAbs().maxCoeff() <= 1e-15);
    CHECK(max_abs_diff(blocks.b, id) <= 1e-15);
    CHECK(max_abs_diff(blocks.c, Mat(-id)) <= 1e-15);

    spec = ModelSpec::beam_splitter(0.5, 0.0, thermal_cm(1.0), vacuum_cm());
    blocks = build_se_blocks(spec);
    CHECK(blocks.a(0, 0) == doctest::Approx(0.8775825618903728).epsilon(1e-14));
    CHECK(blocks.b(1, 1) == doctest::Approx(0.479425538604203).epsilon(1e-14));
}

TEST_CASE("ancilla-ancilla blocks: beam splitter and squeezer") {
    auto spec = ModelSpec::beam_splitter(0.3, 0.0, thermal_cm(1.0), vacuum_cm());
    auto blocks = build_ee_blocks(spec);
    CHECK(max_abs_diff(blocks.e, Mat::Identity(2, 2)) == 0.0);
    CHECK(blocks.f.cwiseAbs().maxCoeff() == 0.0);
    CHECK(blocks.g.cwiseAbs().maxCoeff() == 0.0);

    // at nu_e = asinh(1) the squeezing block hits exactly 1
    spec = ModelSpec::two_mode_squeezer(0.3, std::asinh(1.0), thermal_cm(1.0),
                                        vacuum_cm());
    blocks = build_ee_blocks(spec);
    CHECK(blocks.f(0, 0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(blocks.f(1, 1) == doctest::Approx(-1.0).epsilon(1e-15));

    spec = ModelSpec::two_mode_squeezer(0.3, 0.5, thermal_cm(1.0), vacuum_cm());
    blocks = build_ee_blocks(spec);
    CHECK(blocks.e(0, 0) == doctest::Approx(1.1276259652063807).epsilon(1e-14));
    CHECK(blocks.f(0, 0) == doctest::Approx(0.5210953054937474).epsilon(1e-14));
}

TEST_CASE("embedding matrices for the beam-splitter chain") {
    const double ls = 0.5, le = 0.3;
    const auto spec =
        ModelSpec::beam_splitter(ls, le, thermal_cm(20.0), vacuum_cm());
    const auto ch = build_embedding(spec);
    const double x = std::cos(ls), y = std::sin(ls);
    const double z = std::cos(le), w = std::sin(le);

    Mat expected_x = Mat::Zero(4, 4);
    expected_x.topLeftCorner(2, 2) = x * Mat::Identity(2, 2);
    expected_x.topRightCorner(2, 2) = y * Mat::Identity(2, 2);
    expected_x.bottomLeftCorner(2, 2) = y * w * Mat::Identity(2, 2);
    expected_x.bottomRightCorner(2, 2) = -x * w * Mat::Identity(2, 2);
    CHECK(max_abs_diff(ch.x, expected_x) <= 1e-15);

    Mat expected_y = Mat::Zero(4, 4);
    expected_y(2, 2) = z * z / 2;
    expected_y(3, 3) = z * z / 2;
    CHECK(max_abs_diff(ch.y, expected_y) <= 1e-15);
}

TEST_CASE("embedding matrices for the squeezing chain") {
    const double ls = 0.1, nu = 0.5;
    const auto spec =
        ModelSpec::two_mode_squeezer(ls, nu, thermal_cm(20.0), vacuum_cm());
    const auto ch = build_embedding(spec);
    const double x = std::cos(ls), y = std::sin(ls);
    const double zt = std::cosh(nu), wt = std::sinh(nu);
    Mat sz(2, 2);
    sz << 1, 0, 0, -1;

    CHECK(max_abs_diff(ch.x.bottomLeftCorner(2, 2), Mat(-y * wt * sz)) <= 1e-15);
    CHECK(max_abs_diff(ch.x.bottomRightCorner(2, 2), Mat(x * wt * sz)) <= 1e-15);
    CHECK(max_abs_diff(ch.y.bottomRightCorner(2, 2), Mat(zt * zt * vacuum_cm())) <=
          1e-15);
}

TEST_CASE("lambda_e = 0 decouples the carried ancilla") {
    const auto spec =
        ModelSpec::beam_splitter(0.7, 0.0, thermal_cm(5.0), vacuum_cm());
    const auto ch = build_embedding(spec);
    CHECK(ch.x.bottomLeftCorner(2, 2).cwiseAbs().maxCoeff() == 0.0);
    CHECK(ch.x.bottomRightCorner(2, 2).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("embed_step: no coupling leaves the system untouched") {
    const auto spec =
        ModelSpec::beam_splitter(0.0, 0.4, thermal_cm(3.0), vacuum_cm());
    const auto trajectory = evolve(spec, 10);
    for (const auto& state : trajectory) {
        CHECK(max_abs_diff(state.theta(), spec.system_init) <= 1e-12);
    }
}

TEST_CASE("first collision with fresh vacuum ancilla mixes occupations") {
    const double ls = 0.5;
    const auto spec =
        ModelSpec::beam_splitter(ls, 0.0, thermal_cm(20.0), vacuum_cm());
    const auto trajectory = evolve(spec, 1);
    const double x2 = std::cos(ls) * std::cos(ls);
    const double y2 = std::sin(ls) * std::sin(ls);
    const Mat expected = (x2 * 20.5 + y2 * 0.5) * Mat::Identity(2, 2);
    CHECK(max_abs_diff(trajectory[1].theta(), expected) <= 1e-12);
}

TEST_CASE("evolve: monotone decay for weakly coupled ancillas") {
    const auto spec =
        ModelSpec::beam_splitter(0.5, 0.1, thermal_cm(20.0), vacuum_cm());
    const auto trajectory = evolve(spec, 60);
    for (std::size_t n = 1; n < trajectory.size(); ++n) {
        CHECK(occupation(trajectory[n].theta()) <=
              occupation(trajectory[n - 1].theta()) + 1e-12);
    }
}

TEST_CASE("evolve: squeezing chain converges below critical, diverges above") {
    auto spec =
        ModelSpec::two_mode_squeezer(0.6, 0.5, thermal_cm(20.0), vacuum_cm());
    auto trajectory = evolve(spec, 400);
    const double steady = tms_steady_occupation(0.5);
    CHECK(std::abs(occupation(trajectory.back().theta()) - steady) <= 1e-6);

    spec = ModelSpec::two_mode_squeezer(0.1, 0.95, thermal_cm(20.0), vacuum_cm());
    trajectory = evolve(spec, 300);
    CHECK(occupation(trajectory.back().theta()) > 1e4);
}

TEST_CASE("closed-form solution equals the iterated recurrence") {
    std::mt19937 rng(201);
    for (int trial = 0; trial < 10; ++trial) {
        const auto spec = (trial % 2 == 0) ? testing::random_bs_spec(rng, true)
                                           : testing::random_tms_spec(rng, 0.85, true);
        const auto ch = build_embedding(spec);
        const auto trajectory = evolve(spec, 25);
        const Mat gamma0 = trajectory.front().gamma;
        CHECK(max_abs_diff(closed_form_state(ch, gamma0, 0), gamma0) == 0.0);
        CHECK(max_abs_diff(closed_form_state(ch, gamma0, 1),
                           Mat(ch.x * gamma0 * ch.x.transpose() + ch.y)) <=
              1e-12);
        CHECK(max_abs_diff(closed_form_state(ch, gamma0, 25),
                           trajectory[25].gamma) <= 1e-10);
    }
}

TEST_CASE("closed-form solution composes") {
    std::mt19937 rng(202);
    const auto spec = testing::random_bs_spec(rng, true);
    const auto ch = build_embedding(spec);
    const Mat gamma0 = initial_state(spec).gamma;
    const Mat direct = closed_form_state(ch, gamma0, 17);
    const Mat composed =
        closed_form_state(ch, closed_form_state(ch, gamma0, 8), 9);
    CHECK(max_abs_diff(direct, composed) <= 1e-9);
}

TEST_CASE("brute-force chain basics and resource guard") {
    const auto spec =
        ModelSpec::beam_splitter(0.5, 0.9, thermal_cm(20.0), vacuum_cm());
    CHECK(max_abs_diff(brute_force_chain(spec, 0), spec.system_init) == 0.0);

    // one collision: theta^1 = x^2 theta^0 + y^2 eps, no prior correlations
    const double x2 = std::cos(0.5) * std::cos(0.5);
    const double y2 = std::sin(0.5) * std::sin(0.5);
    CHECK(max_abs_diff(brute_force_chain(spec, 1),
                       Mat(x2 * spec.system_init + y2 * spec.ancilla_state)) <=
          1e-12);

    CHECK_THROWS_AS(brute_force_chain(spec, 300), ResourceError);
}

TEST_CASE("embedding and full chain agree along trajectories") {
    std::mt19937 rng(203);
    for (int trial = 0; trial < 20; ++trial) {
        const auto spec = (trial % 2 == 0) ? testing::random_bs_spec(rng)
                                           : testing::random_tms_spec(rng);
        const auto trajectory = evolve(spec, 25);
        for (int n : {1, 5, 12, 25}) {
            CHECK(max_abs_diff(trajectory[static_cast<std::size_t>(n)].theta(),
                               brute_force_chain(spec, n)) <= 1e-9);
        }
    }
}

TEST_CASE("every evolved state is a valid covariance matrix") {
    std::mt19937 rng(204);
    for (int trial = 0; trial < 5; ++trial) {
        const auto spec = testing::random_tms_spec(rng, 0.85, true);
        for (const auto& state : evolve(spec, 40)) {
            CHECK(is_valid_cm(state.gamma));
        }
    }
}

TEST_CASE("full SWAP conserves excitations into the system") {
    const auto spec =
        ModelSpec::beam_splitter(kPi / 2, 0.0, thermal_cm(20.0), vacuum_cm());
    const auto trajectory = evolve(spec, 1);
    CHECK(occupation(trajectory[1].theta()) ==
          doctest::Approx(occupation(spec.ancilla_state)).epsilon(1e-12));
}

TEST_CASE("embed_step rejects invalid input states") {
    const auto spec =
        ModelSpec::beam_splitter(0.5, 0.3, thermal_cm(5.0), vacuum_cm());
    const auto ch = build_embedding(spec);
    EmbeddedState bad = initial_state(spec);
    bad.gamma *= 0.1; // violates the uncertainty relation
    CHECK_THROWS_AS(embed_step(bad, ch), ValidityError);

    EmbeddedState tiny = initial_state(spec);
    tiny.gamma = vacuum_cm();
    CHECK_THROWS_AS(embed_step(tiny, ch), ShapeError);
}

TEST_CASE("angle wrapping and squeezing sign normalization") {
    CHECK(wrap_angle(3 * kPi / 2) == doctest::Approx(-kPi / 2));
    CHECK(wrap_angle(kPi) == doctest::Approx(kPi));
    CHECK(wrap_angle(-kPi) == doctest::Approx(kPi));
    CHECK(wrap_angle(0.25) == doctest::Approx(0.25));

    const auto spec =
        ModelSpec::two_mode_squeezer(0.1, -0.5, thermal_cm(1.0), vacuum_cm());
    CHECK(std::get<TwoModeSqueezerEE>(spec.ee).nu_e == doctest::Approx(0.5));
}

TEST_CASE("general blocks must assemble into symplectic matrices") {
    Mat id = Mat::Identity(2, 2);
    // a valid passive pair (beam splitter written out by hand)
    const double t = 0.7;
    CHECK_NOTHROW(ModelSpec::general(
        std::cos(t) * id, std::sin(t) * id, -std::sin(t) * id, std::cos(t) * id,
        id, Mat::Zero(2, 2), Mat::Zero(2, 2), id, thermal_cm(2.0), vacuum_cm()));

    // scaling the A block breaks symplecticity
    CHECK_THROWS_AS(ModelSpec::general(2.0 * std::cos(t) * id, std::sin(t) * id,
                                       -std::sin(t) * id, std::cos(t) * id, id,
                                       Mat::Zero(2, 2), Mat::Zero(2, 2), id,
                                       thermal_cm(2.0), vacuum_cm()),
                    ValidityError);

    // invalid ancilla state
    CHECK_THROWS_AS(ModelSpec::beam_splitter(0.5, 0.3, thermal_cm(2.0),
                                             0.2 * Mat::Identity(2, 2)),
                    ValidityError);
}

TEST_CASE("general blocks reproduce the named models") {
    std::mt19937 rng(205);
    const double ls = 1.2, le = -0.8;
    const Mat theta0 = testing::random_cm(rng);
    const Mat id = Mat::Identity(2, 2);
    const auto named = ModelSpec::beam_splitter(ls, le, theta0, vacuum_cm());
    const auto general = ModelSpec::general(
        std::cos(ls) * id, std::sin(ls) * id, -std::sin(ls) * id,
        std::cos(ls) * id, std::cos(le) * id, std::sin(le) * id,
        -std::sin(le) * id, std::cos(le) * id, theta0, vacuum_cm());
    const auto a = evolve(named, 15);
    const auto b = evolve(general, 15);
    for (std::size_t n = 0; n < a.size(); ++n) {
        CHECK(max_abs_diff(a[n].gamma, b[n].gamma) <= 1e-12);
    }
}
