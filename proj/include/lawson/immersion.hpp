#ifndef LAWSON_IMMERSION_HPP
#define LAWSON_IMMERSION_HPP

#include <array>
#include <cstdint>

#include "lawson/frames.hpp"

namespace lawson {

/// Quad face corner indices into a row-major (m fastest) vertex array.
using Face = std::array<int, 4>;

inline int vertex_index(int m, int n, int width) { return n * width + m; }

/// All elementary quads of an M x N window, corners ordered (F, F1, F12, F2).
std::vector<Face> window_faces(int width, int height);

/// CMC-1 net in R^3 with unit Gauss map and Christoffel dual.
struct NetR3 {
    int width = 0, height = 0;
    std::vector<Vec3> F;     // F-hat
    std::vector<Vec3> Fdual; // F-check = F-hat + N-hat
    std::vector<Vec3> N;     // unit Gauss map
    std::vector<Face> faces;
    std::uint64_t lattice_hash = 0;

    const Vec3& f(int m, int n) const { return F[vertex_index(m, n, width)]; }
    const Vec3& fdual(int m, int n) const { return Fdual[vertex_index(m, n, width)]; }
    const Vec3& normal(int m, int n) const { return N[vertex_index(m, n, width)]; }
};

/// CMC net on the unit sphere S^3 with Gauss map, built at spectral angle gamma1.
struct NetS3 {
    int width = 0, height = 0;
    double gamma1 = 0.0;
    std::vector<Vec4> F;
    std::vector<Vec4> N;
    std::vector<Face> faces;
    std::uint64_t lattice_hash = 0;

    const Vec4& f(int m, int n) const { return F[vertex_index(m, n, width)]; }
    const Vec4& normal(int m, int n) const { return N[vertex_index(m, n, width)]; }
};

/// Scaled member of the sphere family: radius 1/sin(2 gamma1), curvature
/// kappa = sin^2(2 gamma1), mean curvature cos(2 gamma1).
struct SphereNet {
    int width = 0, height = 0;
    double gamma1 = 0.0;
    double kappa = 0.0;
    double radius = 1.0;
    std::vector<Vec4> F;
    std::vector<Vec4> N;
    std::vector<Face> faces;
    std::uint64_t lattice_hash = 0;

    const Vec4& f(int m, int n) const { return F[vertex_index(m, n, width)]; }
    const Vec4& normal(int m, int n) const { return N[vertex_index(m, n, width)]; }
};

/// Euclidean immersion at gamma = 0:
///   N = -Phi^{-1} k Phi, F = -Phi^{-1} Phidot - N/2, Fdual = F + N.
NetR3 immerse_r3(const FrameWithDerivative& fd, std::uint64_t lattice_hash = 0);
NetR3 immerse_r3(const LatticeLax& lat);

/// Spherical immersion with lambda2 = lambda1^{-1} (or -lambda1^{-1} when
/// negative_branch is set, giving a congruent net):
///   F = Phi(l1)^{-1} M Phi(l2), N = -Phi(l1)^{-1} k M Phi(l2).
NetS3 immerse_s3(const LatticeLax& lat, double gamma1, bool negative_branch = false);

SphereNet scale_to_sphere(const NetS3& net);

/// FNV-1a over the raw edge data, used as provenance for generated nets.
std::uint64_t lattice_hash(const LatticeLax& lat);

} // namespace lawson

#endif
