#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "lawson/io.hpp"
#include "lawson/lax.hpp"
#include "oracle.hpp"

using namespace lawson;

namespace {

double qdist(const Quaternion& x, const Quaternion& y) { return (x - y).frobenius(); }

Quaternion sigma3() { return {Complex(1, 0), {0, 0}, {0, 0}, Complex(-1, 0)}; } // diag(1,-1)

} // namespace

TEST_CASE("alpha and beta normalizations") {
    SpectralPoint s0(0.0);
    CHECK(alpha({{1, 0}, 1.0}, s0) == doctest::Approx(std::sqrt(5.0)).epsilon(1e-14));
    CHECK(beta({{1, 0}, 1.0}, s0) == doctest::Approx(1.0).epsilon(1e-14));
    // alpha^2 = 0 + 2cos(pi) + 1 + 1 = 0 degenerates.
    CHECK_THROWS_AS(alpha({{0, 0}, 1.0}, SpectralPoint(M_PI / 2.0)), Error);
}

TEST_CASE("evaluated matrices match closed forms") {
    SpectralPoint s0(0.0);
    Quaternion u = eval_U({{1, 0}, 1.0}, s0);
    double r5 = 1.0 / std::sqrt(5.0);
    CHECK(qdist(u, Quaternion(Complex(r5, 0), Complex(-2 * r5, 0), Complex(2 * r5, 0),
                              Complex(r5, 0))) < 1e-14);

    CHECK(qdist(eval_V({{1, 0}, 1.0}, s0), Quaternion::one()) < 1e-14);
    CHECK(qdist(eval_U({{0, 0}, 1.0}, s0), Quaternion::j()) < 1e-14);
}

TEST_CASE("evaluated matrices are SU(2) with twisting symmetry") {
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> dc(-0.8, 0.8), du(0.6, 1.6), dg(-1.2, 1.2);
    for (int t = 0; t < 25; ++t) {
        UEdgeData ue{{dc(rng), dc(rng)}, du(rng)};
        VEdgeData ve{{dc(rng) + 1.0, dc(rng)}, du(rng)};
        double g = dg(rng);
        SpectralPoint s(g), sneg(g + M_PI); // lambda -> -lambda
        for (const Quaternion& q : {eval_U(ue, s), eval_V(ve, s)}) {
            CHECK(std::abs(q.det() - Complex(1, 0)) < 1e-12);
            CHECK(q.unitarity_defect() < 1e-12);
        }
        Quaternion s3 = sigma3();
        CHECK(qdist(eval_U(ue, sneg), s3 * eval_U(ue, s) * s3) < 1e-11);
        CHECK(qdist(eval_V(ve, sneg), s3 * eval_V(ve, s) * s3) < 1e-11);
    }
}

TEST_CASE("gamma derivatives at the Euclidean point") {
    CHECK(dU_dgamma({{0.7, -0.4}, 1.0}).frobenius() < 1e-15); // u = 1 kills it
    CHECK(qdist(dV_dgamma({{1, 0}, 1.0}), -2.0 * Quaternion::j()) < 1e-14);
    CHECK(qdist(dU_dgamma({{0, 0}, 2.0}), 0.6 * Quaternion::i()) < 1e-14);
    CHECK_THROWS_AS(dV_dgamma({{0, 0}, 1.0}), Error); // beta(1) = 0
}

TEST_CASE("finite-difference check of the gamma derivatives") {
    UEdgeData ue{{0.3, -0.2}, 1.25};
    VEdgeData ve{{-0.4, 0.6}, 0.85};
    double h = 1e-6;
    Quaternion du_fd =
        (eval_U(ue, SpectralPoint(h)) - eval_U(ue, SpectralPoint(-h))) * (1.0 / (2.0 * h));
    Quaternion dv_fd =
        (eval_V(ve, SpectralPoint(h)) - eval_V(ve, SpectralPoint(-h))) * (1.0 / (2.0 * h));
    CHECK(qdist(du_fd, dU_dgamma(ue)) < 1e-8);
    CHECK(qdist(dv_fd, dV_dgamma(ve)) < 1e-8);
}

TEST_CASE("solve_quad fixed points") {
    QuadLax q = solve_quad({{1, 0}, 1.0}, {{1, 0}, 1.0});
    CHECK(std::abs(q.Up.a - Complex(1, 0)) < 1e-12);
    CHECK(std::abs(q.Vp.b - Complex(1, 0)) < 1e-12);
    CHECK(q.Up.u == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(q.Vp.v == doctest::Approx(1.0).epsilon(1e-12));

    QuadLax q2 = solve_quad({{1, 0}, 1.0}, {{-1, 0}, 1.0});
    CHECK(std::abs(q2.Up.a - Complex(1, 0)) < 1e-12);
    CHECK(std::abs(q2.Vp.b - Complex(-1, 0)) < 1e-12);
    CHECK(q2.Up.u == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(q2.Vp.v == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("solve_quad frozen reference values") {
    // Values computed with an independent least-squares root finder on the
    // commutation residual at gamma = +-pi/6 with the constraint u u' = v v'.
    QuadLax q = solve_quad({{0.5, 0.2}, 1.3}, {{-0.1, 0.7}, 0.8});
    CHECK(std::abs(q.Up.a - Complex(0.032781222109142548, -0.12061142789998305)) < 1e-12);
    CHECK(std::abs(q.Vp.b - Complex(-0.1527902971830265, -0.78772512955293561)) < 1e-12);
    CHECK(q.Up.u == doctest::Approx(0.69439183213628453).epsilon(1e-12));
    CHECK(q.Vp.v == doctest::Approx(1.1283867272214623).epsilon(1e-12));
}

TEST_CASE("solve_quad satisfies all invariants on random data") {
    std::mt19937 rng(21);
    std::uniform_real_distribution<double> dc(-0.7, 0.7), du(0.7, 1.4);
    std::uniform_real_distribution<double> dgamma(-M_PI, M_PI);
    for (int t = 0; t < 40; ++t) {
        UEdgeData U{{dc(rng), dc(rng)}, du(rng)};
        VEdgeData V{{dc(rng), dc(rng)}, du(rng)};
        QuadLax q = solve_quad(U, V);

        CHECK(std::abs(q.U.u * q.Up.u - q.V.v * q.Vp.v) < 1e-10);
        CHECK(commutation_residual(q, {M_PI / 6.0, -M_PI / 6.0}) < 1e-10);
        // Labeling preservation.
        CHECK(std::abs(alpha_label(q.Up) - alpha_label(q.U)) < 1e-9);
        CHECK(std::abs(beta_label(q.Vp) - beta_label(q.V)) < 1e-9);
        // Residual vanishes away from the two defining spectral points.
        for (int k = 0; k < 5; ++k)
            CHECK(commutation_residual(q, {dgamma(rng)}) < 1e-9);
    }
}

TEST_CASE("solve_quad agrees with the independent oracle") {
    std::mt19937 rng(33);
    std::uniform_real_distribution<double> dc(-0.7, 0.7), du(0.7, 1.4);
    for (int t = 0; t < 25; ++t) {
        UEdgeData U{{dc(rng), dc(rng)}, du(rng)};
        VEdgeData V{{dc(rng), dc(rng)}, du(rng)};
        QuadLax q = solve_quad(U, V);
        oracle::Result ref = oracle::solve({U.a, V.b, U.u, V.v}, true);
        REQUIRE(ref.residual < 1e-11);
        CHECK(std::abs(q.Up.a - ref.a) < 1e-8);
        CHECK(std::abs(q.Vp.b - ref.b) < 1e-8);
        CHECK(std::abs(q.Up.u - ref.u) < 1e-8);
        CHECK(std::abs(q.Vp.v - ref.v) < 1e-8);
    }
}

TEST_CASE("down-left re-solve reproduces the original pair") {
    std::mt19937 rng(45);
    std::uniform_real_distribution<double> dc(-0.6, 0.6), du(0.75, 1.35);
    for (int t = 0; t < 10; ++t) {
        UEdgeData U{{dc(rng), dc(rng)}, du(rng)};
        VEdgeData V{{dc(rng), dc(rng)}, du(rng)};
        QuadLax q = solve_quad(U, V);
        // Solve the quad for the bottom/left pair given the top/right one.
        oracle::Result back = oracle::solve({q.Up.a, q.Vp.b, q.Up.u, q.Vp.v}, false);
        REQUIRE(back.residual < 1e-11);
        CHECK(std::abs(back.a - U.a) < 1e-9);
        CHECK(std::abs(back.b - V.b) < 1e-9);
        CHECK(std::abs(back.u - U.u) < 1e-9);
        CHECK(std::abs(back.v - V.v) < 1e-9);
    }
}

TEST_CASE("commutation residual is sensitive to perturbations") {
    QuadLax q = solve_quad({{0.5, 0.2}, 1.3}, {{-0.1, 0.7}, 0.8});
    q.Up.u += 0.1;
    CHECK(commutation_residual(q, {M_PI / 6.0, -M_PI / 6.0}) > 1e-3);
}

TEST_CASE("propagate constant data is a fixed point") {
    CauchyData c;
    c.row0.assign(4, UEdgeData{{1, 0}, 1.0});
    c.col0.assign(4, VEdgeData{{1, 0}, 1.0});
    LatticeLax lat = propagate(c);
    REQUIRE(lat.width() == 5);
    REQUIRE(lat.height() == 5);
    for (int n = 0; n < 5; ++n)
        for (int m = 0; m < 4; ++m)
            CHECK(std::abs(lat.horizontal(m, n).a - Complex(1, 0)) < 1e-10);
    for (int n = 0; n < 4; ++n)
        for (int m = 0; m < 5; ++m)
            CHECK(std::abs(lat.vertical(m, n).b - Complex(1, 0)) < 1e-10);
    lat.validate();
}

TEST_CASE("propagate single quad equals solve_quad") {
    CauchyData c;
    c.row0 = {UEdgeData{{0.5, 0.2}, 1.3}};
    c.col0 = {VEdgeData{{-0.1, 0.7}, 0.8}};
    LatticeLax lat = propagate(c);
    QuadLax direct = solve_quad(c.row0[0], c.col0[0]);
    CHECK(std::abs(lat.horizontal(0, 1).a - direct.Up.a) < 1e-14);
    CHECK(std::abs(lat.vertical(1, 0).b - direct.Vp.b) < 1e-14);
}

TEST_CASE("propagate random data satisfies lattice invariants") {
    CauchyData c = io::random_cauchy(6, 6, 17);
    LatticeLax lat = propagate(c);
    lat.validate();
    // Determinism: same Cauchy data gives bit-identical edges.
    LatticeLax lat2 = propagate(c);
    for (int n = 0; n < 6; ++n)
        for (int m = 0; m + 1 < 6; ++m)
            CHECK(lat.horizontal(m, n).a == lat2.horizontal(m, n).a);
}

TEST_CASE("vertex function w closes multiplicatively") {
    CauchyData c = io::random_cauchy(5, 5, 29);
    LatticeLax lat = propagate(c);
    std::vector<double> w = vertex_function_w(lat);
    REQUIRE(w.size() == 25u);
    CHECK(w[0] == doctest::Approx(1.0));
    for (int n = 0; n < 5; ++n)
        for (int m = 0; m + 1 < 5; ++m)
            CHECK(std::abs(lat.horizontal(m, n).u - w[n * 5 + m] * w[n * 5 + m + 1]) < 1e-10);
    for (int n = 0; n + 1 < 5; ++n)
        for (int m = 0; m < 5; ++m)
            CHECK(std::abs(lat.vertical(m, n).v - w[n * 5 + m] * w[(n + 1) * 5 + m]) < 1e-10);
}
