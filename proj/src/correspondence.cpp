#include "lawson/correspondence.hpp"

#include <cmath>

namespace lawson {

namespace {

std::vector<Vec4> lift_grid(const std::vector<Vec3>& g) {
    std::vector<Vec4> out;
    out.reserve(g.size());
    for (const Vec3& v : g)
        out.push_back(lift4(v));
    return out;
}

} // namespace

geometry::MetricProducts net_metric_products(const NetR3& net) {
    return geometry::metric_products(net.width, net.height, lift_grid(net.F),
                                     lift_grid(net.Fdual));
}

geometry::MetricProducts net_metric_products(const NetS3& net) {
    double h = std::cos(2.0 * net.gamma1) / std::sin(2.0 * net.gamma1); // cot(2 gamma1)
    std::vector<Vec4> dual(net.F.size());
    if (std::abs(h) < 1e-12) {
        dual = net.N;
    } else {
        for (size_t i = 0; i < net.F.size(); ++i)
            dual[i] = net.F[i] + (1.0 / h) * net.N[i];
    }
    return geometry::metric_products(net.width, net.height, net.F, dual);
}

LawsonPair lawson_pair(const CauchyData& c) {
    LatticeLax lax = propagate(c);
    NetR3 r3 = immerse_r3(lax);
    NetS3 s3 = immerse_s3(lax, M_PI / 4.0);

    LawsonPair pair{std::move(r3), std::move(s3), std::move(lax)};
    if (pair.r3.width >= 2 && pair.r3.height >= 2) {
        geometry::MetricProducts a = net_metric_products(pair.r3);
        geometry::MetricProducts b = net_metric_products(pair.s3);
        for (size_t i = 0; i < a.horizontal.size(); ++i)
            pair.max_metric_mismatch =
                std::max(pair.max_metric_mismatch, std::abs(a.horizontal[i] - b.horizontal[i]) /
                                                       (1.0 + std::abs(a.horizontal[i])));
        for (size_t i = 0; i < a.vertical.size(); ++i)
            pair.max_metric_mismatch =
                std::max(pair.max_metric_mismatch,
                         std::abs(a.vertical[i] - b.vertical[i]) / (1.0 + std::abs(a.vertical[i])));
    }
    return pair;
}

std::vector<FamilyMember> sphere_family(const CauchyData& c, const std::vector<double>& gammas) {
    LatticeLax lax = propagate(c);
    std::vector<FamilyMember> family;
    family.reserve(gammas.size());
    for (double g : gammas) {
        if (!(g > 0.0 && g < M_PI / 2.0))
            throw Error("invalid spectral angle: gamma1 must lie in (0, pi/2)");
        NetS3 unit = immerse_s3(lax, g);
        FamilyMember member;
        member.gamma1 = g;
        member.net = scale_to_sphere(unit);
        member.kappa = member.net.kappa;

        if (unit.width >= 2 && unit.height >= 2) {
            // Measure H on the scaled net against its Gauss map.
            double h_sum = 0.0;
            int count = 0;
            for (const Face& f : member.net.faces) {
                std::array<Vec4, 4> fp{member.net.F[f[0]], member.net.F[f[1]],
                                       member.net.F[f[2]], member.net.F[f[3]]};
                std::array<Vec4, 4> np{member.net.N[f[0]], member.net.N[f[1]],
                                       member.net.N[f[2]], member.net.N[f[3]]};
                geometry::PlanarQuad fq = geometry::PlanarQuad::from_points(fp);
                geometry::PlanarQuad nq = geometry::PlanarQuad::in_frame_of(fq, np);
                h_sum += geometry::curvatures(fq, nq).first;
                ++count;
            }
            member.measured_h = h_sum / count;

            double h = std::cos(2.0 * g);
            std::vector<Vec4> dual(member.net.F.size());
            if (std::abs(h) < 1e-12)
                dual = member.net.N;
            else
                for (size_t i = 0; i < dual.size(); ++i)
                    dual[i] = member.net.F[i] + (1.0 / h) * member.net.N[i];
            member.normalized_products = geometry::metric_products(
                member.net.width, member.net.height, member.net.F, dual);
            // Divide the scaled-sphere products s s_i = -u^2 H, v^2 H by H;
            // the minimal member's products are already -u^2, v^2.
            if (std::abs(h) >= 1e-12) {
                for (double& p : member.normalized_products.horizontal)
                    p /= h;
                for (double& p : member.normalized_products.vertical)
                    p /= h;
            }
        }
        family.push_back(std::move(member));
    }
    return family;
}

SphereNet scale_family_member(const SphereNet& net, double factor) {
    if (factor <= 0.0)
        throw Error("scale factor must be positive");
    SphereNet out = net;
    out.radius *= factor;
    out.kappa /= factor * factor;
    for (Vec4& f : out.F)
        f = f * factor;
    return out;
}

CalapsoReport calapso_labeling_check(const LatticeLax& lax, double gamma, double gamma_prime) {
    SpectralPoint s(gamma), sp(gamma_prime);
    double h = std::cos(2.0 * gamma), hp = std::cos(2.0 * gamma_prime);
    CalapsoReport rep;
    for (int n = 0; n < lax.height(); ++n)
        for (int m = 0; m + 1 < lax.width(); ++m) {
            const UEdgeData& e = lax.horizontal(m, n);
            double a2 = alpha(e, s) * alpha(e, s);
            double a2p = alpha(e, sp) * alpha(e, sp);
            // alpha^2 carries lambda^2 + lambda^{-2} = 2 cos(2 gamma), so the
            // shift between members is 2 (H' - H).
            rep.max_alpha_shift_residual =
                std::max(rep.max_alpha_shift_residual, std::abs(a2p - a2 - 2.0 * (hp - h)));
            // Labeling a_01 = 2 / alpha^2 makes the Moebius map exact:
            // a_01' = a_01 / (1 + (H' - H) a_01).
            double a01 = 2.0 / a2;
            double mapped = a01 / (1.0 + (hp - h) * a01);
            rep.max_labeling_map_residual =
                std::max(rep.max_labeling_map_residual, std::abs(mapped - 2.0 / a2p));
        }
    for (int n = 0; n + 1 < lax.height(); ++n)
        for (int m = 0; m < lax.width(); ++m) {
            const VEdgeData& e = lax.vertical(m, n);
            double b2 = beta(e, s) * beta(e, s);
            double b2p = beta(e, sp) * beta(e, sp);
            rep.max_beta_shift_residual =
                std::max(rep.max_beta_shift_residual, std::abs(b2p - b2 - 2.0 * (h - hp)));
            double a02 = -2.0 / b2;
            double mapped = a02 / (1.0 - (h - hp) * a02);
            rep.max_labeling_map_residual =
                std::max(rep.max_labeling_map_residual, std::abs(mapped + 2.0 / b2p));
        }
    return rep;
}

std::vector<LimitRow> euclidean_limit(const CauchyData& c, const std::vector<double>& gammas) {
    for (size_t i = 1; i < gammas.size(); ++i)
        if (!(gammas[i] < gammas[i - 1]))
            throw Error("gamma sequence must be strictly decreasing");
    for (double g : gammas)
        if (!(g > 0.0 && g <= M_PI / 4.0))
            throw Error("limit gammas must lie in (0, pi/4]");

    LatticeLax lax = propagate(c);
    NetR3 euclid = immerse_r3(lax);

    std::vector<LimitRow> rows;
    rows.reserve(gammas.size());
    Vec4 unit{0, 0, 0, 1};
    for (double g : gammas) {
        NetS3 s3 = immerse_s3(lax, g);
        double scale = 1.0 / std::sin(2.0 * g);
        double worst = 0.0;
        for (size_t i = 0; i < s3.F.size(); ++i) {
            Vec4 d = (s3.F[i] - unit) * scale;
            // Drop the real-quaternion (1) coefficient, keep the (i, j, k) part.
            Vec3 imag{d.x1, d.x2, d.x3};
            worst = std::max(worst, (imag - euclid.F[i]).norm());
        }
        LimitRow row{g, worst, 0.0};
        if (!rows.empty())
            row.ratio = worst / rows.back().deviation;
        rows.push_back(row);
    }
    return rows;
}

} // namespace lawson
