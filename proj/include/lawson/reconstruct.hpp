#ifndef LAWSON_RECONSTRUCT_HPP
#define LAWSON_RECONSTRUCT_HPP

#include "lawson/immersion.hpp"

namespace lawson {

/// Result of the inverse pipeline: recovered Lax data plus the residuals that
/// certify it. All tolerances are engineering choices; the residuals are
/// reported so callers can judge them.
struct ReconstructionReport {
    LatticeLax lax;
    double gamma1 = 0.0; // spectral angle recovered from H (S^3 only)
    bool transposed = false; // input had the opposite trapezoid convention
    Quaternion base_frame = Quaternion::one();
    double max_commutation_residual = 0.0;    // at gamma = +-pi/6 (and +-gamma1 in S^3)
    double max_shared_edge_disagreement = 0.0;
    double max_labeling_deviation = 0.0;
};

struct ReconstructTolerances {
    double h_tol = 1e-6;           // deviation of measured H_f from its target
    double frame_tol = 1e-9;       // Gauss-map compatibility of the base frame
    double component_tol = 1e-6;   // normal-component check of the edge matrices
    double angle_tol = 1e-9;       // S^3 angle formulas
    double sphere_tol = 1e-9;      // |F| = |N| = 1 in S^3
    double consistency_tol = 1e-8; // shared-edge agreement
};

/// Quad corners ordered (F, F1, F12, F2), normals likewise.
QuadLax reconstruct_quad_r3(const std::array<Vec3, 4>& F, const std::array<Vec3, 4>& N,
                            const Quaternion& base_frame,
                            const ReconstructTolerances& tol = {});

/// Returns the recovered quad data and the spectral angle gamma1 derived from
/// the measured mean curvature. The frame pair (phi, phi_prime) must satisfy
/// F = phi'^{-1} M phi and N = -phi'^{-1} k M phi at the base vertex.
std::pair<QuadLax, double> reconstruct_quad_s3(const std::array<Vec4, 4>& F,
                                               const std::array<Vec4, 4>& N,
                                               const Quaternion& phi, const Quaternion& phi_prime,
                                               const ReconstructTolerances& tol = {});

ReconstructionReport reconstruct_net_r3(int width, int height, const std::vector<Vec3>& F,
                                        const std::vector<Vec3>& N,
                                        const Quaternion& base_frame = Quaternion::one(),
                                        const ReconstructTolerances& tol = {});

ReconstructionReport reconstruct_net_s3(int width, int height, const std::vector<Vec4>& F,
                                        const std::vector<Vec4>& N,
                                        const Quaternion& phi = Quaternion::one(),
                                        const Quaternion& phi_prime = Quaternion::one(),
                                        const ReconstructTolerances& tol = {});

inline ReconstructionReport reconstruct_net(const NetR3& net,
                                            const ReconstructTolerances& tol = {}) {
    return reconstruct_net_r3(net.width, net.height, net.F, net.N, Quaternion::one(), tol);
}
inline ReconstructionReport reconstruct_net(const NetS3& net,
                                            const ReconstructTolerances& tol = {}) {
    return reconstruct_net_s3(net.width, net.height, net.F, net.N, Quaternion::one(),
                              Quaternion::one(), tol);
}

} // namespace lawson

#endif
