#include "lawson/reconstruct.hpp"

#include <cmath>
#include <tuple>

#include "lawson/geometry.hpp"

namespace lawson {

namespace {

constexpr Complex kI{0, 1};

struct EdgeRatio {
    double product; // signed s s_i
    double len2;    // |dF|^2
};

EdgeRatio edge_ratio(const Vec4& df, const Vec4& dd) {
    double nf = df.norm(), nd = dd.norm();
    if (nd < 1e-14 * (1.0 + nf))
        throw Error("degenerate dual edge");
    double r = nf / nd;
    double sign = df.dot(dd) < 0.0 ? -1.0 : 1.0;
    return {sign * r, nf * nf};
}

std::array<Vec4, 4> lift_quad(const std::array<Vec3, 4>& pts) {
    return {lift4(pts[0]), lift4(pts[1]), lift4(pts[2]), lift4(pts[3])};
}

// Extracts the off-diagonal Lax coefficient from the conjugated edge matrix
// and verifies its normal (diagonal) component.
Complex extract_coefficient(const Quaternion& edge_matrix, Complex factor, Complex expected_m11,
                            double tol, const char* what) {
    double scale = edge_matrix.frobenius();
    if (std::abs(edge_matrix.m11 - expected_m11) > tol * (1.0 + scale))
        throw Error(std::string(what) + ": got " + std::to_string(edge_matrix.m11.real()) + "+" +
                    std::to_string(edge_matrix.m11.imag()) + "i, expected " +
                    std::to_string(expected_m11.real()) + "+" +
                    std::to_string(expected_m11.imag()) + "i");
    return edge_matrix.m21 / factor;
}

double measured_h(const std::array<Vec4, 4>& F, const std::array<Vec4, 4>& N) {
    geometry::PlanarQuad fq = geometry::PlanarQuad::from_points(F, 1e-6);
    geometry::PlanarQuad nq = geometry::PlanarQuad::in_frame_of(fq, N, 1e-6);
    return geometry::curvatures(fq, nq).first;
}

} // namespace

QuadLax reconstruct_quad_r3(const std::array<Vec3, 4>& F, const std::array<Vec3, 4>& N,
                            const Quaternion& base_frame, const ReconstructTolerances& tol) {
    // Precondition: the quad is CMC-1 and the frame is compatible at the base.
    double h = measured_h(lift_quad(F), lift_quad(N));
    if (std::abs(h - 1.0) > tol.h_tol)
        throw Error("quad is not CMC-1: H_f = " + std::to_string(h));
    Quaternion phi_inv = base_frame.inverse();
    Vec3 frame_normal = project_r3(-1.0 * (phi_inv * Quaternion::k() * base_frame), 1e-9);
    if ((frame_normal - N[0]).norm() > tol.frame_tol)
        throw Error("inconsistent Gauss map");

    std::array<Vec3, 4> D;
    for (int i = 0; i < 4; ++i)
        D[i] = F[i] + N[i];

    // Metric products along the four edges; u^2 = -s s_1, v^2 = s s_2.
    EdgeRatio r01 = edge_ratio(lift4(F[1] - F[0]), lift4(D[1] - D[0]));
    EdgeRatio r02 = edge_ratio(lift4(F[3] - F[0]), lift4(D[3] - D[0]));
    EdgeRatio r2_12 = edge_ratio(lift4(F[2] - F[3]), lift4(D[2] - D[3]));
    EdgeRatio r1_12 = edge_ratio(lift4(F[2] - F[1]), lift4(D[2] - D[1]));
    if (r01.product >= 0.0 || r2_12.product >= 0.0 || r02.product <= 0.0 || r1_12.product <= 0.0)
        throw Error("wrong trapezoid orientation");
    double u = std::sqrt(-r01.product);
    double up = std::sqrt(-r2_12.product);
    double v = std::sqrt(r02.product);
    double vp = std::sqrt(r1_12.product);

    // Labelings give alpha, beta: A = |dF01|^2/(s s1) = -4/alpha^2, B = 4/beta^2.
    double alpha2 = -4.0 * r01.product / r01.len2;
    double beta2 = 4.0 * r02.product / r02.len2;
    double alpha2p = -4.0 * r2_12.product / r2_12.len2;
    double beta2p = 4.0 * r1_12.product / r1_12.len2;

    // a from Phi dF01 Phi^{-1} = (2iu/alpha^2) [[u+1/u, conj a], [a, -(u+1/u)]].
    auto read_u_edge = [&](const Vec3& df, const Quaternion& phi, double uu, double a2) {
        Quaternion q = phi * embed_r3(df) * phi.inverse();
        Complex factor = 2.0 * kI * uu / a2;
        Complex a = extract_coefficient(q, factor, factor * (uu + 1.0 / uu), tol.component_tol,
                                        "inconsistent Gauss map");
        return UEdgeData{a, uu};
    };
    // b from Phi dF02 Phi^{-1} = (2v/beta^2) [[i(v-1/v), -conj b], [b, -i(v-1/v)]].
    auto read_v_edge = [&](const Vec3& df, const Quaternion& phi, double vv, double b2) {
        Quaternion q = phi * embed_r3(df) * phi.inverse();
        Complex factor = Complex(2.0 * vv / b2, 0);
        Complex b = extract_coefficient(q, factor, factor * kI * (vv - 1.0 / vv),
                                        tol.component_tol, "inconsistent Gauss map");
        return VEdgeData{b, vv};
    };

    SpectralPoint s0(0.0);
    UEdgeData U = read_u_edge(F[1] - F[0], base_frame, u, alpha2);
    VEdgeData V = read_v_edge(F[3] - F[0], base_frame, v, beta2);
    Quaternion phi1 = eval_U(U, s0) * base_frame;
    Quaternion phi2 = eval_V(V, s0) * base_frame;
    UEdgeData Up = read_u_edge(F[2] - F[3], phi2, up, alpha2p);
    VEdgeData Vp = read_v_edge(F[2] - F[1], phi1, vp, beta2p);

    QuadLax q{U, Up, V, Vp};
    if (std::abs(u * up - v * vp) > tol.consistency_tol)
        throw Error("uu' = vv' violated by reconstructed quad");
    if (commutation_residual(q, {M_PI / 6.0, -M_PI / 6.0}) > tol.consistency_tol)
        throw Error("reconstructed quad fails commutation");
    return q;
}

std::pair<QuadLax, double> reconstruct_quad_s3(const std::array<Vec4, 4>& F,
                                               const std::array<Vec4, 4>& N,
                                               const Quaternion& phi, const Quaternion& phi_prime,
                                               const ReconstructTolerances& tol) {
    for (int i = 0; i < 4; ++i) {
        if (std::abs(F[i].norm() - 1.0) > tol.sphere_tol ||
            std::abs(N[i].norm() - 1.0) > tol.sphere_tol)
            throw Error("not on unit sphere");
        if (std::abs(F[i].dot(N[i])) > tol.sphere_tol)
            throw Error("Gauss map not orthogonal to position");
    }

    double h = measured_h(F, N);
    double gamma1 = std::abs(h) < 1e-9 ? M_PI / 4.0 : 0.5 * std::atan2(1.0, h);
    double c2 = std::cos(2.0 * gamma1);
    double s2 = std::sin(2.0 * gamma1);
    bool minimal = std::abs(h) < 1e-9;

    Quaternion M = exp_k(gamma1);
    Quaternion phip_inv = phi_prime.inverse();
    Vec4 base_f = project_r4(phip_inv * M * phi, 1e-9);
    Vec4 base_n = project_r4(-1.0 * (phip_inv * Quaternion::k() * M * phi), 1e-9);
    if ((base_f - F[0]).norm() > tol.frame_tol || (base_n - N[0]).norm() > tol.frame_tol)
        throw Error("inconsistent frame pair at base vertex");

    std::array<Vec4, 4> D;
    for (int i = 0; i < 4; ++i)
        D[i] = minimal ? N[i] : F[i] + (1.0 / h) * N[i];

    EdgeRatio r01 = edge_ratio(F[1] - F[0], D[1] - D[0]);
    EdgeRatio r02 = edge_ratio(F[3] - F[0], D[3] - D[0]);
    EdgeRatio r2_12 = edge_ratio(F[2] - F[3], D[2] - D[3]);
    EdgeRatio r1_12 = edge_ratio(F[2] - F[1], D[2] - D[1]);

    // u^2 = -ss1 / cos(2 gamma1) (or -ss1 when minimal), likewise v^2.
    double denom = minimal ? 1.0 : c2;
    double u2 = -r01.product / denom;
    double u2p = -r2_12.product / denom;
    double v2 = r02.product / denom;
    double v2p = r1_12.product / denom;
    if (u2 <= 0.0 || u2p <= 0.0 || v2 <= 0.0 || v2p <= 0.0)
        throw Error("wrong trapezoid orientation");
    double u = std::sqrt(u2), up = std::sqrt(u2p), v = std::sqrt(v2), vp = std::sqrt(v2p);

    // alpha^2 = -4 sin^2(2g)/(A cos 2g), A = |dF01|^2 / ss1 (minimal: -4/A).
    auto alpha2_of = [&](const EdgeRatio& r) {
        double A = r.len2 / r.product;
        return minimal ? -4.0 / A : -4.0 * s2 * s2 / (A * c2);
    };
    auto beta2_of = [&](const EdgeRatio& r) {
        double B = r.len2 / r.product;
        return minimal ? 4.0 / B : 4.0 * s2 * s2 / (B * c2);
    };
    double alpha2 = alpha2_of(r01), alpha2p = alpha2_of(r2_12);
    double beta2 = beta2_of(r02), beta2p = beta2_of(r1_12);
    if (alpha2 <= 0.0 || beta2 <= 0.0 || alpha2p <= 0.0 || beta2p <= 0.0)
        throw Error("not a CMC quad in S3: negative labeling");

    // Angle checks on the base edges.
    {
        Vec4 df = F[1] - F[0];
        double len = df.norm();
        double cos_theta = df.dot(N[0]) / len;
        double cos_chi = df.dot(F[0]) / len;
        double alpha = std::sqrt(alpha2);
        if (std::abs(cos_theta - (1.0 / u + c2 * u) / alpha) > tol.angle_tol)
            throw Error("not a CMC quad in S3: theta angle, got " + std::to_string(cos_theta) +
                        " expected " + std::to_string((1.0 / u + c2 * u) / alpha));
        if (std::abs(cos_chi + u * s2 / alpha) > tol.angle_tol)
            throw Error("not a CMC quad in S3: chi angle, got " + std::to_string(cos_chi) +
                        " expected " + std::to_string(-u * s2 / alpha));
        Vec4 dg = F[3] - F[0];
        double cos_chi_v = dg.dot(F[0]) / dg.norm();
        if (std::abs(cos_chi_v + v * s2 / std::sqrt(beta2)) > tol.angle_tol)
            throw Error("not a CMC quad in S3: chi_v angle, got " + std::to_string(cos_chi_v) +
                        " expected " + std::to_string(-v * s2 / std::sqrt(beta2)));
    }

    Complex l1 = std::polar(1.0, gamma1);
    Complex l1i = std::conj(l1);

    // a from phi' dF01 phi^{-1} =
    //   (2u sin 2g / alpha^2) i [[l1 u + u^{-1}/l1, conj a], [a, ...]];
    // the global i is forced by the quaternion structure m12 = -conj(m21).
    auto read_u_edge = [&](const Vec4& df, const Quaternion& fr_prime, const Quaternion& fr,
                           double uu, double a2) {
        Quaternion q = fr_prime * embed_r4(df) * fr.inverse();
        Complex factor = Complex(2.0 * uu * s2 / a2, 0) * kI;
        Complex a = extract_coefficient(q, factor, factor * (l1 * uu + l1i / uu),
                                        tol.component_tol, "not a CMC quad in S3: U edge matrix");
        return UEdgeData{a, uu};
    };
    auto read_v_edge = [&](const Vec4& df, const Quaternion& fr_prime, const Quaternion& fr,
                           double vv, double b2) {
        Quaternion q = fr_prime * embed_r4(df) * fr.inverse();
        Complex factor = Complex(2.0 * vv * s2 / b2, 0);
        Complex b = extract_coefficient(q, factor, factor * kI * (l1 * vv - l1i / vv),
                                        tol.component_tol, "not a CMC quad in S3: V edge matrix");
        return VEdgeData{b, vv};
    };

    SpectralPoint sp1(gamma1), sp2(-gamma1);
    UEdgeData U = read_u_edge(F[1] - F[0], phi_prime, phi, u, alpha2);
    VEdgeData V = read_v_edge(F[3] - F[0], phi_prime, phi, v, beta2);
    Quaternion phi1p = eval_U(U, sp1) * phi_prime;
    Quaternion phi1 = eval_U(U, sp2) * phi;
    Quaternion phi2p = eval_V(V, sp1) * phi_prime;
    Quaternion phi2 = eval_V(V, sp2) * phi;
    UEdgeData Up = read_u_edge(F[2] - F[3], phi2p, phi2, up, alpha2p);
    VEdgeData Vp = read_v_edge(F[2] - F[1], phi1p, phi1, vp, beta2p);

    QuadLax q{U, Up, V, Vp};
    if (std::abs(u * up - v * vp) > tol.consistency_tol)
        throw Error("uu' = vv' violated by reconstructed quad");
    // Two-lambda sufficiency: commutation at gamma1 and -gamma1 plus uu' = vv'
    // implies commutation for all lambda (gamma1 avoids {0, pi/2}).
    if (commutation_residual(q, {gamma1, -gamma1}) > tol.consistency_tol)
        throw Error("reconstructed quad fails commutation");
    return {q, gamma1};
}

namespace {

template <typename Vec>
std::vector<Vec> transpose_grid(int width, int height, const std::vector<Vec>& g) {
    std::vector<Vec> out(g.size());
    for (int n = 0; n < height; ++n)
        for (int m = 0; m < width; ++m)
            out[static_cast<size_t>(m) * height + n] = g[static_cast<size_t>(n) * width + m];
    return out;
}

void merge_u_edge(LatticeLax& lax, std::vector<bool>& seen_h, int m, int n,
                  const UEdgeData& e, double tol, double& worst) {
    size_t idx = static_cast<size_t>(n) * (lax.width() - 1) + m;
    if (!seen_h[idx]) {
        lax.horizontal(m, n) = e;
        seen_h[idx] = true;
        return;
    }
    const UEdgeData& prev = lax.horizontal(m, n);
    double d = std::max(std::abs(prev.a - e.a), std::abs(prev.u - e.u));
    worst = std::max(worst, d);
    if (d > tol)
        throw Error("net is not integrable: shared horizontal edge (" + std::to_string(m) + "," +
                    std::to_string(n) + ") disagrees by " + std::to_string(d));
}

void merge_v_edge(LatticeLax& lax, std::vector<bool>& seen_v, int m, int n,
                  const VEdgeData& e, double tol, double& worst) {
    size_t idx = static_cast<size_t>(n) * lax.width() + m;
    if (!seen_v[idx]) {
        lax.vertical(m, n) = e;
        seen_v[idx] = true;
        return;
    }
    const VEdgeData& prev = lax.vertical(m, n);
    double d = std::max(std::abs(prev.b - e.b), std::abs(prev.v - e.v));
    worst = std::max(worst, d);
    if (d > tol)
        throw Error("net is not integrable: shared vertical edge (" + std::to_string(m) + "," +
                    std::to_string(n) + ") disagrees by " + std::to_string(d));
}

void finish_report(ReconstructionReport& rep) {
    const LatticeLax& lax = rep.lax;
    for (int n = 0; n + 1 < lax.height(); ++n)
        for (int m = 0; m + 1 < lax.width(); ++m)
            rep.max_commutation_residual =
                std::max(rep.max_commutation_residual,
                         commutation_residual(lax.quad(m, n), {M_PI / 6.0, -M_PI / 6.0}));
    for (int m = 0; m + 1 < lax.width(); ++m) {
        double ref = alpha_label(lax.horizontal(m, 0));
        for (int n = 1; n < lax.height(); ++n)
            rep.max_labeling_deviation =
                std::max(rep.max_labeling_deviation,
                         std::abs(alpha_label(lax.horizontal(m, n)) - ref) / (1.0 + ref));
    }
    for (int n = 0; n + 1 < lax.height(); ++n) {
        double ref = beta_label(lax.vertical(0, n));
        for (int m = 1; m < lax.width(); ++m)
            rep.max_labeling_deviation =
                std::max(rep.max_labeling_deviation,
                         std::abs(beta_label(lax.vertical(m, n)) - ref) / (1.0 + ref));
    }
}

// Detects the trapezoid convention on the first quad: returns true when the
// grid must be transposed so that s alternates along direction 1.
template <typename Vec>
bool needs_transpose(int width, const std::vector<Vec>& F, const std::vector<Vec>& D) {
    Vec df1 = F[1] - F[0];
    Vec dd1 = D[1] - D[0];
    Vec df2 = F[width] - F[0];
    Vec dd2 = D[width] - D[0];
    return df1.dot(dd1) > 0.0 && df2.dot(dd2) < 0.0;
}

} // namespace

ReconstructionReport reconstruct_net_r3(int width, int height, const std::vector<Vec3>& F,
                                        const std::vector<Vec3>& N, const Quaternion& base_frame,
                                        const ReconstructTolerances& tol) {
    if (width < 2 || height < 2)
        throw Error("net too small to reconstruct");
    std::vector<Vec3> D(F.size());
    for (size_t i = 0; i < F.size(); ++i)
        D[i] = F[i] + N[i];
    if (needs_transpose(width, F, D))
        return [&] {
            ReconstructionReport rep = reconstruct_net_r3(
                height, width, transpose_grid(width, height, F), transpose_grid(width, height, N),
                base_frame, tol);
            rep.transposed = true;
            return rep;
        }();

    ReconstructionReport rep{LatticeLax(width, height)};
    rep.base_frame = base_frame;
    std::vector<bool> seen_h(static_cast<size_t>(width - 1) * height, false);
    std::vector<bool> seen_v(static_cast<size_t>(width) * (height - 1), false);
    std::vector<Quaternion> frames(static_cast<size_t>(width) * height);
    std::vector<bool> have_frame(frames.size(), false);
    auto frame_at = [&](int m, int n) -> Quaternion& {
        return frames[static_cast<size_t>(n) * width + m];
    };
    frame_at(0, 0) = base_frame;
    have_frame[0] = true;

    SpectralPoint s0(0.0);
    auto pick = [&](int m, int n) {
        return std::array<Vec3, 4>{F[vertex_index(m, n, width)], F[vertex_index(m + 1, n, width)],
                                   F[vertex_index(m + 1, n + 1, width)],
                                   F[vertex_index(m, n + 1, width)]};
    };
    auto pick_n = [&](int m, int n) {
        return std::array<Vec3, 4>{N[vertex_index(m, n, width)], N[vertex_index(m + 1, n, width)],
                                   N[vertex_index(m + 1, n + 1, width)],
                                   N[vertex_index(m, n + 1, width)]};
    };

    for (int n = 0; n + 1 < height; ++n)
        for (int m = 0; m + 1 < width; ++m) {
            QuadLax q;
            try {
                q = reconstruct_quad_r3(pick(m, n), pick_n(m, n), frame_at(m, n), tol);
            } catch (const Error& e) {
                throw Error("reconstruction failed at quad (" + std::to_string(m) + "," +
                            std::to_string(n) + "): " + e.what());
            }
            merge_u_edge(rep.lax, seen_h, m, n, q.U, tol.consistency_tol,
                         rep.max_shared_edge_disagreement);
            merge_u_edge(rep.lax, seen_h, m, n + 1, q.Up, tol.consistency_tol,
                         rep.max_shared_edge_disagreement);
            merge_v_edge(rep.lax, seen_v, m, n, q.V, tol.consistency_tol,
                         rep.max_shared_edge_disagreement);
            merge_v_edge(rep.lax, seen_v, m + 1, n, q.Vp, tol.consistency_tol,
                         rep.max_shared_edge_disagreement);
            if (!have_frame[static_cast<size_t>(n) * width + m + 1]) {
                frame_at(m + 1, n) = eval_U(q.U, s0) * frame_at(m, n);
                have_frame[static_cast<size_t>(n) * width + m + 1] = true;
            }
            if (!have_frame[static_cast<size_t>(n + 1) * width + m]) {
                frame_at(m, n + 1) = eval_V(q.V, s0) * frame_at(m, n);
                have_frame[static_cast<size_t>(n + 1) * width + m] = true;
            }
        }
    finish_report(rep);
    return rep;
}

ReconstructionReport reconstruct_net_s3(int width, int height, const std::vector<Vec4>& F,
                                        const std::vector<Vec4>& N, const Quaternion& phi,
                                        const Quaternion& phi_prime,
                                        const ReconstructTolerances& tol) {
    if (width < 2 || height < 2)
        throw Error("net too small to reconstruct");
    {
        // Convention detection needs the dual, which needs H of the first quad.
        std::array<Vec4, 4> fq{F[0], F[1], F[static_cast<size_t>(width) + 1], F[width]};
        std::array<Vec4, 4> nq{N[0], N[1], N[static_cast<size_t>(width) + 1], N[width]};
        double h = measured_h(fq, nq);
        std::vector<Vec4> D(F.size());
        for (size_t i = 0; i < F.size(); ++i)
            D[i] = std::abs(h) < 1e-9 ? N[i] : F[i] + (1.0 / h) * N[i];
        if (needs_transpose(width, F, D)) {
            ReconstructionReport rep = reconstruct_net_s3(
                height, width, transpose_grid(width, height, F), transpose_grid(width, height, N),
                phi, phi_prime, tol);
            rep.transposed = true;
            return rep;
        }
    }

    ReconstructionReport rep{LatticeLax(width, height)};
    rep.base_frame = phi_prime;
    std::vector<bool> seen_h(static_cast<size_t>(width - 1) * height, false);
    std::vector<bool> seen_v(static_cast<size_t>(width) * (height - 1), false);
    // Frame pairs (phi at lambda2, phi' at lambda1) per vertex.
    std::vector<Quaternion> fr2(static_cast<size_t>(width) * height);
    std::vector<Quaternion> fr1(fr2.size());
    std::vector<bool> have_frame(fr2.size(), false);
    auto vid = [&](int m, int n) { return static_cast<size_t>(n) * width + m; };
    fr2[vid(0, 0)] = phi;
    fr1[vid(0, 0)] = phi_prime;
    have_frame[vid(0, 0)] = true;

    double gamma1 = 0.0;
    bool have_gamma = false;

    auto pick4 = [&](const std::vector<Vec4>& G, int m, int n) {
        return std::array<Vec4, 4>{G[vid(m, n)], G[vid(m + 1, n)], G[vid(m + 1, n + 1)],
                                   G[vid(m, n + 1)]};
    };

    for (int n = 0; n + 1 < height; ++n)
        for (int m = 0; m + 1 < width; ++m) {
            QuadLax q;
            double g1;
            try {
                std::tie(q, g1) = reconstruct_quad_s3(pick4(F, m, n), pick4(N, m, n),
                                                      fr2[vid(m, n)], fr1[vid(m, n)], tol);
            } catch (const Error& e) {
                throw Error("reconstruction failed at quad (" + std::to_string(m) + "," +
                            std::to_string(n) + "): " + e.what());
            }
            if (!have_gamma) {
                gamma1 = g1;
                have_gamma = true;
            } else if (std::abs(g1 - gamma1) > tol.h_tol)
                throw Error("mean curvature is not constant across faces");
            merge_u_edge(rep.lax, seen_h, m, n, q.U, tol.consistency_tol,
                         rep.max_shared_edge_disagreement);
            merge_u_edge(rep.lax, seen_h, m, n + 1, q.Up, tol.consistency_tol,
                         rep.max_shared_edge_disagreement);
            merge_v_edge(rep.lax, seen_v, m, n, q.V, tol.consistency_tol,
                         rep.max_shared_edge_disagreement);
            merge_v_edge(rep.lax, seen_v, m + 1, n, q.Vp, tol.consistency_tol,
                         rep.max_shared_edge_disagreement);
            SpectralPoint sp1(gamma1), sp2(-gamma1);
            if (!have_frame[vid(m + 1, n)]) {
                fr1[vid(m + 1, n)] = eval_U(q.U, sp1) * fr1[vid(m, n)];
                fr2[vid(m + 1, n)] = eval_U(q.U, sp2) * fr2[vid(m, n)];
                have_frame[vid(m + 1, n)] = true;
            }
            if (!have_frame[vid(m, n + 1)]) {
                fr1[vid(m, n + 1)] = eval_V(q.V, sp1) * fr1[vid(m, n)];
                fr2[vid(m, n + 1)] = eval_V(q.V, sp2) * fr2[vid(m, n)];
                have_frame[vid(m, n + 1)] = true;
            }
        }
    rep.gamma1 = gamma1;
    finish_report(rep);
    return rep;
}

} // namespace lawson
