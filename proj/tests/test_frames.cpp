#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "lawson/frames.hpp"
#include "lawson/io.hpp"

using namespace lawson;

namespace {

double qdist(const Quaternion& x, const Quaternion& y) { return (x - y).frobenius(); }

CauchyData constant_data(int w, int h) {
    CauchyData c;
    c.row0.assign(w - 1, UEdgeData{{1, 0}, 1.0});
    c.col0.assign(h - 1, VEdgeData{{1, 0}, 1.0});
    return c;
}

Quaternion sigma3() { return {Complex(1, 0), {0, 0}, {0, 0}, Complex(-1, 0)}; }

} // namespace

TEST_CASE("constant-data frame is a power of one matrix") {
    LatticeLax lat = propagate(constant_data(4, 4));
    FrameField phi = integrate_frame(lat, SpectralPoint(0.0));

    CHECK(qdist(phi.at(0, 0), Quaternion::one()) == 0.0);
    double r5 = 1.0 / std::sqrt(5.0);
    Quaternion u1(Complex(r5, 0), Complex(-2 * r5, 0), Complex(2 * r5, 0), Complex(r5, 0));
    CHECK(qdist(phi.at(1, 0), u1) < 1e-14);
    // V(1) = 1 for this data, so rows repeat the first one.
    CHECK(qdist(phi.at(2, 1), phi.at(2, 0)) < 1e-13);
    CHECK(qdist(phi.at(3, 0), u1 * u1 * u1) < 1e-13);
}

TEST_CASE("single-vertex window") {
    LatticeLax lat(1, 1);
    FrameField phi = integrate_frame(lat, SpectralPoint(0.3));
    CHECK(qdist(phi.at(0, 0), Quaternion::one()) == 0.0);
}

TEST_CASE("edge compatibility and unitarity at every vertex") {
    LatticeLax lat = propagate(io::random_cauchy(5, 5, 101));
    SpectralPoint s(0.4);
    FrameField phi = integrate_frame(lat, s);
    for (int n = 0; n < 5; ++n)
        for (int m = 0; m < 5; ++m) {
            CHECK(phi.at(m, n).unitarity_defect() < 1e-11);
            if (m + 1 < 5)
                CHECK(qdist(phi.at(m + 1, n), eval_U(lat.horizontal(m, n), s) * phi.at(m, n)) <
                      1e-11);
            if (n + 1 < 5)
                CHECK(qdist(phi.at(m, n + 1), eval_V(lat.vertical(m, n), s) * phi.at(m, n)) <
                      1e-11);
        }
}

TEST_CASE("path independence at the far corner") {
    LatticeLax lat = propagate(io::random_cauchy(5, 5, 202));
    SpectralPoint s(0.7);
    FrameField phi = integrate_frame(lat, s);

    // Right-then-up path.
    Quaternion p1 = Quaternion::one();
    for (int m = 0; m + 1 < 5; ++m)
        p1 = eval_U(lat.horizontal(m, 0), s) * p1;
    for (int n = 0; n + 1 < 5; ++n)
        p1 = eval_V(lat.vertical(4, n), s) * p1;
    // Up-then-right path.
    Quaternion p2 = Quaternion::one();
    for (int n = 0; n + 1 < 5; ++n)
        p2 = eval_V(lat.vertical(0, n), s) * p2;
    for (int m = 0; m + 1 < 5; ++m)
        p2 = eval_U(lat.horizontal(m, 4), s) * p2;

    CHECK(qdist(p1, p2) < 1e-10);
    CHECK(qdist(phi.at(4, 4), p1) < 1e-10);
}

TEST_CASE("twisted loop symmetry of the integrated frame") {
    LatticeLax lat = propagate(io::random_cauchy(4, 4, 303));
    double g = 0.55;
    FrameField phi = integrate_frame(lat, SpectralPoint(g));
    FrameField phin = integrate_frame(lat, SpectralPoint(g + M_PI)); // lambda -> -lambda
    Quaternion s3 = sigma3();
    for (int n = 0; n < 4; ++n)
        for (int m = 0; m < 4; ++m)
            CHECK(qdist(phin.at(m, n), s3 * phi.at(m, n) * s3) < 1e-11);
}

TEST_CASE("derivative field fixtures for constant data") {
    LatticeLax lat = propagate(constant_data(4, 4));
    FrameWithDerivative fd = integrate_frame_with_derivative(lat);
    // u = 1 kills the horizontal derivative contribution on the bottom row.
    for (int m = 0; m < 4; ++m)
        CHECK(fd.dot_at(m, 0).frobenius() < 1e-13);
    // One vertical step: dot(0,1) = dV(1) * phi(0,0) = -2j.
    CHECK(qdist(fd.dot_at(0, 1), -2.0 * Quaternion::j()) < 1e-13);
}

TEST_CASE("derivative matches a finite difference of the frame") {
    LatticeLax lat = propagate(io::random_cauchy(4, 4, 404));
    FrameWithDerivative fd = integrate_frame_with_derivative(lat);
    double h = 1e-5;
    FrameField fp = integrate_frame(lat, SpectralPoint(h));
    FrameField fm = integrate_frame(lat, SpectralPoint(-h));
    for (int n = 0; n < 4; ++n)
        for (int m = 0; m < 4; ++m) {
            Quaternion fdiff = (fp.at(m, n) - fm.at(m, n)) * (1.0 / (2.0 * h));
            CHECK(qdist(fdiff, fd.dot_at(m, n)) < 1e-6);
        }
}

TEST_CASE("derivative field product rule on edges") {
    LatticeLax lat = propagate(io::random_cauchy(4, 4, 505));
    FrameWithDerivative fd = integrate_frame_with_derivative(lat);
    SpectralPoint s0(0.0);
    for (int n = 0; n < 4; ++n)
        for (int m = 0; m + 1 < 4; ++m) {
            Quaternion lhs = fd.dot_at(m + 1, n);
            Quaternion rhs = dU_dgamma(lat.horizontal(m, n)) * fd.phi.at(m, n) +
                             eval_U(lat.horizontal(m, n), s0) * fd.dot_at(m, n);
            CHECK(qdist(lhs, rhs) < 1e-10);
        }
}

TEST_CASE("degenerate vertical edge rejects the Euclidean evaluation") {
    CauchyData c;
    c.row0 = {UEdgeData{{0.5, 0.1}, 1.2}};
    c.col0 = {VEdgeData{{0, 0}, 1.0}}; // beta(1) = 0
    CHECK_THROWS_AS(integrate_frame_with_derivative(propagate(c)), Error);
}

TEST_CASE("psi gauge") {
    LatticeLax lat = propagate(constant_data(3, 3));
    FrameField phi = integrate_frame(lat, SpectralPoint(0.0));
    FrameField same = gauge_psi(phi); // gamma = 0: identity
    for (int n = 0; n < 3; ++n)
        for (int m = 0; m < 3; ++m)
            CHECK(qdist(same.at(m, n), phi.at(m, n)) < 1e-14);

    FrameField phig = integrate_frame(lat, SpectralPoint(M_PI / 2.0));
    FrameField psi = gauge_psi(phig);
    // Left factor exp(-gamma/2 k) = diag(e^{i pi/4}, e^{-i pi/4}) at the base.
    Quaternion expected = exp_k(-M_PI / 4.0);
    CHECK(qdist(psi.at(0, 0), expected) < 1e-14);
}
