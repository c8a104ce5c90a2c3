#include "lawson/verify.hpp"

#include <cmath>

namespace lawson {

namespace {

struct VerifyContext {
    int width = 0, height = 0, dim = 3;
    const std::vector<Vec4>* F = nullptr;
    const std::vector<Vec4>* N = nullptr;
    const std::vector<Vec4>* dual = nullptr; // may be null
    double target_h = 0.0;
    const LatticeLax* lax = nullptr;
    double spectral_gamma = 0.0; // where alpha/beta are evaluated
    double edge_factor = 4.0;    // |dF01|^2 = edge_factor * u^2 / alpha^2
};

std::array<Vec4, 4> face_points(const std::vector<Vec4>& grid, const Face& f) {
    return {grid[f[0]], grid[f[1]], grid[f[2]], grid[f[3]]};
}

void run_core(const VerifyContext& cx, VerificationReport& rep) {
    const VerifyTolerances& tol = rep.tolerances;
    std::vector<Face> faces = window_faces(cx.width, cx.height);
    SpectralPoint sp(cx.spectral_gamma);

    double worst_planarity = 0.0, worst_circularity = 0.0;
    double worst_h = 0.0, worst_mixed = 0.0, worst_xr = 0.0;
    for (const Face& f : faces) {
        std::array<Vec4, 4> fp = face_points(*cx.F, f);
        geometry::FaceDefects d = geometry::face_defects(fp);
        worst_planarity = std::max(worst_planarity, d.planarity);
        worst_circularity = std::max(worst_circularity, d.circularity);
        rep.face_planarity.push_back(d.planarity);
        rep.face_circularity.push_back(d.circularity);

        geometry::PlanarQuad fq = geometry::PlanarQuad::from_points(fp);
        geometry::PlanarQuad nq = geometry::PlanarQuad::in_frame_of(fq, face_points(*cx.N, f));
        auto [h, k] = geometry::curvatures(fq, nq);
        rep.face_h.push_back(h);
        rep.face_k.push_back(k);
        worst_h = std::max(worst_h, std::abs(h - cx.target_h));

        if (cx.dual) {
            geometry::PlanarQuad dq =
                geometry::PlanarQuad::in_frame_of(fq, face_points(*cx.dual, f));
            double area = geometry::signed_area(fq);
            worst_mixed = std::max(worst_mixed,
                                   std::abs(geometry::mixed_area(fq, dq)) / std::abs(area));
        }

        geometry::CrossRatioCheck xr =
            geometry::face_cross_ratio_real_check(fp, cx.dim, tol.cross_ratio);
        rep.face_cross_ratio.push_back(xr.value.real());
        double xr_dev = std::abs(xr.value.imag()) / std::abs(xr.value);
        if (!xr.is_real_negative)
            xr_dev = std::max(xr_dev, 1.0);
        if (cx.lax) {
            int m = f[0] % cx.width, n = f[0] / cx.width;
            double a = alpha(cx.lax->horizontal(m, n), sp);
            double b = beta(cx.lax->vertical(m, n), sp);
            double expected = -(b * b) / (a * a);
            xr_dev = std::max(xr_dev, std::abs(xr.value.real() - expected) / std::abs(expected));
        }
        worst_xr = std::max(worst_xr, xr_dev);
    }

    rep.criteria.push_back({"face planarity", worst_planarity, tol.face_defect,
                            worst_planarity <= tol.face_defect});
    rep.criteria.push_back({"face circularity", worst_circularity, tol.face_defect,
                            worst_circularity <= tol.face_defect});
    rep.criteria.push_back(
        {"mean curvature", worst_h, tol.mean_curvature, worst_h <= tol.mean_curvature});
    if (cx.dual)
        rep.criteria.push_back({"dual mixed area", worst_mixed, tol.dual_mixed_area,
                                worst_mixed <= tol.dual_mixed_area});
    rep.criteria.push_back(
        {"cross-ratio", worst_xr, tol.cross_ratio, worst_xr <= tol.cross_ratio});

    if (cx.dual) {
        geometry::MetricProducts mp =
            geometry::metric_products(cx.width, cx.height, *cx.F, *cx.dual);
        rep.edge_products_h = mp.horizontal;
        rep.edge_products_v = mp.vertical;
        geometry::EdgeLabeling lab = geometry::edge_labelings(cx.width, cx.height, *cx.F, mp);
        rep.labeling_a = lab.A;
        rep.labeling_b = lab.B;
        double spread = std::max(lab.max_column_spread, lab.max_row_spread);
        rep.criteria.push_back(
            {"edge labeling", spread, tol.labeling_spread, spread <= tol.labeling_spread});
    }

    if (cx.lax) {
        double worst_len = 0.0;
        for (int n = 0; n < cx.height; ++n)
            for (int m = 0; m + 1 < cx.width; ++m) {
                const UEdgeData& e = cx.lax->horizontal(m, n);
                double a = alpha(e, sp);
                double expected = cx.edge_factor * e.u * e.u / (a * a);
                Vec4 d = (*cx.F)[vertex_index(m + 1, n, cx.width)] -
                         (*cx.F)[vertex_index(m, n, cx.width)];
                worst_len = std::max(worst_len, std::abs(d.dot(d) - expected) / expected);
            }
        for (int n = 0; n + 1 < cx.height; ++n)
            for (int m = 0; m < cx.width; ++m) {
                const VEdgeData& e = cx.lax->vertical(m, n);
                double b = beta(e, sp);
                double expected = cx.edge_factor * e.v * e.v / (b * b);
                Vec4 d = (*cx.F)[vertex_index(m, n + 1, cx.width)] -
                         (*cx.F)[vertex_index(m, n, cx.width)];
                worst_len = std::max(worst_len, std::abs(d.dot(d) - expected) / expected);
            }
        rep.criteria.push_back(
            {"edge lengths", worst_len, tol.edge_length, worst_len <= tol.edge_length});
    }
}

std::vector<Vec4> lift_grid(const std::vector<Vec3>& g) {
    std::vector<Vec4> out;
    out.reserve(g.size());
    for (const Vec3& v : g)
        out.push_back(lift4(v));
    return out;
}

} // namespace

VerificationReport verify_net(const NetR3& net, const LatticeLax* lax,
                              const VerifyTolerances& tol) {
    VerificationReport rep;
    rep.tolerances = tol;

    double worst_unit = 0.0;
    for (const Vec3& n : net.N)
        worst_unit = std::max(worst_unit, std::abs(n.norm() - 1.0));
    rep.criteria.push_back(
        {"unit Gauss map", worst_unit, tol.unit_norm, worst_unit <= tol.unit_norm});

    std::vector<Vec4> F = lift_grid(net.F), N = lift_grid(net.N), dual = lift_grid(net.Fdual);
    VerifyContext cx;
    cx.width = net.width;
    cx.height = net.height;
    cx.dim = 3;
    cx.F = &F;
    cx.N = &N;
    cx.dual = &dual;
    cx.target_h = 1.0;
    cx.lax = lax;
    cx.spectral_gamma = 0.0;
    cx.edge_factor = 4.0;
    run_core(cx, rep);
    return rep;
}

VerificationReport verify_net(const NetS3& net, const LatticeLax* lax,
                              const VerifyTolerances& tol) {
    VerificationReport rep;
    rep.tolerances = tol;

    double worst_unit = 0.0;
    for (size_t i = 0; i < net.F.size(); ++i) {
        worst_unit = std::max(worst_unit, std::abs(net.F[i].norm() - 1.0));
        worst_unit = std::max(worst_unit, std::abs(net.N[i].norm() - 1.0));
        worst_unit = std::max(worst_unit, std::abs(net.F[i].dot(net.N[i])));
    }
    rep.criteria.push_back(
        {"unit sphere and orthogonality", worst_unit, tol.unit_norm, worst_unit <= tol.unit_norm});

    double s2 = std::sin(2.0 * net.gamma1), c2 = std::cos(2.0 * net.gamma1);
    double h = c2 / s2;
    std::vector<Vec4> dual(net.F.size());
    if (std::abs(h) < 1e-12)
        dual = net.N;
    else
        for (size_t i = 0; i < dual.size(); ++i)
            dual[i] = net.F[i] + (1.0 / h) * net.N[i];

    VerifyContext cx;
    cx.width = net.width;
    cx.height = net.height;
    cx.dim = 4;
    cx.F = &net.F;
    cx.N = &net.N;
    cx.dual = &dual;
    cx.target_h = h;
    cx.lax = lax;
    cx.spectral_gamma = net.gamma1;
    cx.edge_factor = 4.0 * s2 * s2;
    run_core(cx, rep);
    return rep;
}

VerificationReport verify_net(const SphereNet& net, const LatticeLax* lax,
                              const VerifyTolerances& tol) {
    VerificationReport rep;
    rep.tolerances = tol;

    double worst_unit = 0.0;
    for (size_t i = 0; i < net.F.size(); ++i) {
        worst_unit = std::max(worst_unit, std::abs(net.F[i].norm() - net.radius) / net.radius);
        worst_unit = std::max(worst_unit, std::abs(net.N[i].norm() - 1.0));
        worst_unit =
            std::max(worst_unit, std::abs(net.F[i].dot(net.N[i])) / net.radius);
    }
    rep.criteria.push_back(
        {"sphere radius and orthogonality", worst_unit, tol.unit_norm,
         worst_unit <= tol.unit_norm});

    double h = std::cos(2.0 * net.gamma1);
    std::vector<Vec4> dual(net.F.size());
    if (std::abs(h) < 1e-12)
        dual = net.N;
    else
        for (size_t i = 0; i < dual.size(); ++i)
            dual[i] = net.F[i] + (1.0 / h) * net.N[i];

    VerifyContext cx;
    cx.width = net.width;
    cx.height = net.height;
    cx.dim = 4;
    cx.F = &net.F;
    cx.N = &net.N;
    cx.dual = &dual;
    cx.target_h = h;
    cx.lax = lax;
    cx.spectral_gamma = net.gamma1;
    cx.edge_factor = 4.0;
    run_core(cx, rep);
    return rep;
}

} // namespace lawson
