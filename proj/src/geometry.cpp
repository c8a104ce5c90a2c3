#include "lawson/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace lawson {
namespace geometry {

namespace {

double max_pairwise_distance(const std::array<Vec4, 4>& pts) {
    double s = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            s = std::max(s, (pts[i] - pts[j]).norm());
    return s;
}

// sin of the angle between two vectors (0 for parallel or anti-parallel),
// via the component of b orthogonal to a to avoid cancellation.
double angular_defect(const Vec4& a, const Vec4& b) {
    double na2 = a.norm2(), nb = b.norm();
    Vec4 r = b - a * (a.dot(b) / na2);
    return r.norm() / nb;
}

Vec4 normalized(const Vec4& v) {
    double n = v.norm();
    if (n == 0.0)
        throw Error("degenerate face");
    return v * (1.0 / n);
}

std::array<Vec4, 4> lift_all(const std::array<Vec3, 4>& pts) {
    return {lift4(pts[0]), lift4(pts[1]), lift4(pts[2]), lift4(pts[3])};
}

double shoelace(const std::array<std::array<double, 2>, 4>& c) {
    double a = 0.0;
    for (int i = 0; i < 4; ++i) {
        int j = (i + 1) % 4;
        a += c[i][0] * c[j][1] - c[j][0] * c[i][1];
    }
    return 0.5 * a;
}

} // namespace

FaceDefects face_defects(const std::array<Vec4, 4>& pts) {
    Vec4 d1 = pts[1] - pts[0], d2 = pts[2] - pts[0], d3 = pts[3] - pts[0];
    double scale = max_pairwise_distance(pts);
    if (scale == 0.0)
        throw Error("degenerate face");

    // Orthonormal frame of the plane spanned by d1, d2 (stable Gram-Schmidt).
    Vec4 e1 = normalized(d1);
    Vec4 e2raw = d2 - e1 * d2.dot(e1);
    double n2 = e2raw.norm();
    if (n2 < 1e-14 * scale)
        throw Error("degenerate face"); // collinear triple
    Vec4 e2 = e2raw * (1.0 / n2);

    // 3-volume of the parallelepiped as |d1| * |d2 perp| * dist(d3, span):
    // residual vectors avoid the cancellation of the Gram determinant.
    Vec4 r3 = d3 - e1 * d3.dot(e1) - e2 * d3.dot(e2);
    double planarity = d1.norm() * n2 * r3.norm() / (scale * scale * scale);

    auto coord = [&](const Vec4& p) {
        Vec4 d = p - pts[0];
        return std::array<double, 2>{d.dot(e1), d.dot(e2)};
    };
    auto c1 = coord(pts[0]), c2 = coord(pts[1]), c3 = coord(pts[2]), c4 = coord(pts[3]);

    // 2D circumcenter from the perpendicular bisector equations.
    double ax = c1[0], ay = c1[1], bx = c2[0], by = c2[1], cx = c3[0], cy = c3[1];
    double d = 2.0 * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by));
    if (std::abs(d) < 1e-14 * scale * scale)
        throw Error("degenerate face");
    double a2 = ax * ax + ay * ay, b2 = bx * bx + by * by, c2sq = cx * cx + cy * cy;
    double ux = (a2 * (by - cy) + b2 * (cy - ay) + c2sq * (ay - by)) / d;
    double uy = (a2 * (cx - bx) + b2 * (ax - cx) + c2sq * (bx - ax)) / d;
    double radius = std::hypot(ax - ux, ay - uy);

    double off_plane = r3.norm(); // distance of p4 from the circle's plane
    double in_plane = std::hypot(c4[0] - ux, c4[1] - uy) - radius;
    double dist = std::hypot(in_plane, off_plane);

    return {planarity, dist / radius};
}

PlanarQuad PlanarQuad::from_points(const std::array<Vec4, 4>& pts, double planarity_tol) {
    double scale = max_pairwise_distance(pts);
    if (scale == 0.0)
        throw Error("degenerate face");
    Vec4 d1 = pts[1] - pts[0];
    Vec4 d2 = pts[3] - pts[0];
    if (d1.norm() < 1e-14 * scale || angular_defect(d1, d2) < 1e-14) {
        // fall back to the diagonal for a second spanning direction
        d2 = pts[2] - pts[0];
    }
    PlanarQuad q;
    q.pts_ = pts;
    q.origin_ = pts[0];
    q.e1_ = normalized(d1);
    Vec4 e2raw = d2 - q.e1_ * d2.dot(q.e1_);
    if (e2raw.norm() < 1e-14 * scale)
        throw Error("degenerate face");
    q.e2_ = normalized(e2raw);

    if (face_defects(pts).planarity > planarity_tol)
        throw Error("face not planar");
    return q;
}

PlanarQuad PlanarQuad::from_points3(const std::array<Vec3, 4>& pts, double planarity_tol) {
    return from_points(lift_all(pts), planarity_tol);
}

PlanarQuad PlanarQuad::in_frame_of(const PlanarQuad& ref, const std::array<Vec4, 4>& pts,
                                   double planarity_tol) {
    PlanarQuad q;
    q.pts_ = pts;
    q.origin_ = ref.origin_;
    q.e1_ = ref.e1_;
    q.e2_ = ref.e2_;
    double scale = std::max(max_pairwise_distance(pts), ref.scale());
    // The face must lie in a plane parallel to the reference plane.
    for (int i = 1; i < 4; ++i) {
        Vec4 d = pts[i] - pts[0];
        Vec4 res = d - q.e1_ * d.dot(q.e1_) - q.e2_ * d.dot(q.e2_);
        if (res.norm() > planarity_tol * scale)
            throw Error("face not parallel to reference plane");
    }
    return q;
}

PlanarQuad PlanarQuad::with_normal(const std::array<Vec3, 4>& pts, const Vec3& normal,
                                   double planarity_tol) {
    PlanarQuad q = from_points(lift_all(pts), planarity_tol);
    Vec3 n = normal * (1.0 / normal.norm());
    Vec3 e1{q.e1_.x1, q.e1_.x2, q.e1_.x3};
    Vec3 e2 = n.cross(e1); // e1 x e2 = n
    q.e2_ = lift4(e2);
    return q;
}

std::array<std::array<double, 2>, 4> PlanarQuad::coords() const {
    std::array<std::array<double, 2>, 4> out;
    for (int i = 0; i < 4; ++i) {
        Vec4 d = pts_[i] - origin_;
        out[i] = {d.dot(e1_), d.dot(e2_)};
    }
    return out;
}

double PlanarQuad::scale() const {
    double s = 0.0;
    for (int i = 0; i < 4; ++i)
        s = std::max(s, (pts_[(i + 1) % 4] - pts_[i]).norm());
    return s;
}

double signed_area(const PlanarQuad& q) { return shoelace(q.coords()); }

double mixed_area(const PlanarQuad& f, const PlanarQuad& fp) {
    double scale = std::max(f.scale(), fp.scale());
    for (int i = 0; i < 4; ++i) {
        int j = (i + 1) % 4;
        Vec4 ef = f.points()[j] - f.points()[i];
        Vec4 eg = fp.points()[j] - fp.points()[i];
        if (ef.norm() < 1e-12 * scale || eg.norm() < 1e-12 * scale)
            continue; // degenerate edges are parallel to anything
        if (angular_defect(ef, eg) > 1e-9)
            throw Error("not edge-parallel");
    }
    // Both faces in f's frame; shoelace is translation invariant.
    PlanarQuad g = PlanarQuad::in_frame_of(f, fp.points());
    auto cf = f.coords(), cg = g.coords();
    std::array<std::array<double, 2>, 4> sum, diff;
    for (int i = 0; i < 4; ++i) {
        sum[i] = {cf[i][0] + cg[i][0], cf[i][1] + cg[i][1]};
        diff[i] = {cf[i][0] - cg[i][0], cf[i][1] - cg[i][1]};
    }
    return 0.25 * (shoelace(sum) - shoelace(diff));
}

std::pair<double, double> curvatures(const PlanarQuad& Fface, const PlanarQuad& Nface) {
    double aF = signed_area(Fface);
    double scale = Fface.scale();
    if (std::abs(aF) < 1e-14 * scale * scale)
        throw Error("degenerate face area");
    double aFN = mixed_area(Fface, Nface);
    PlanarQuad n = PlanarQuad::in_frame_of(Fface, Nface.points());
    double aN = shoelace(n.coords());
    return {-aFN / aF, aN / aF};
}

MetricProducts metric_products(int width, int height, const std::vector<Vec4>& F,
                               const std::vector<Vec4>& Fdual, double tol) {
    MetricProducts mp;
    mp.width = width;
    mp.height = height;
    mp.horizontal.resize(static_cast<size_t>(std::max(width - 1, 0)) * height);
    mp.vertical.resize(static_cast<size_t>(width) * std::max(height - 1, 0));
    auto idx = [&](int m, int n) { return static_cast<size_t>(n) * width + m; };

    auto product = [&](const Vec4& df, const Vec4& dd) {
        double nd = dd.norm();
        if (nd < 1e-14 * (1.0 + df.norm()))
            throw Error("degenerate dual edge");
        if (angular_defect(df, dd) > tol)
            throw Error("not edge-parallel");
        double r = df.norm() / nd;
        return df.dot(dd) < 0.0 ? -r : r;
    };

    for (int n = 0; n < height; ++n)
        for (int m = 0; m + 1 < width; ++m)
            mp.horizontal[static_cast<size_t>(n) * (width - 1) + m] =
                product(F[idx(m + 1, n)] - F[idx(m, n)], Fdual[idx(m + 1, n)] - Fdual[idx(m, n)]);
    for (int n = 0; n + 1 < height; ++n)
        for (int m = 0; m < width; ++m)
            mp.vertical[static_cast<size_t>(n) * width + m] =
                product(F[idx(m, n + 1)] - F[idx(m, n)], Fdual[idx(m, n + 1)] - Fdual[idx(m, n)]);
    return mp;
}

std::vector<double> extract_metric(const MetricProducts& mp, double s00, double tol) {
    int width = mp.width, height = mp.height;
    std::vector<double> s(static_cast<size_t>(width) * height, 0.0);
    auto at = [&](int m, int n) -> double& { return s[static_cast<size_t>(n) * width + m]; };
    at(0, 0) = s00;
    for (int n = 0; n + 1 < height; ++n)
        at(0, n + 1) = mp.v(0, n) / at(0, n);
    for (int n = 0; n < height; ++n)
        for (int m = 0; m + 1 < width; ++m)
            at(m + 1, n) = mp.h(m, n) / at(m, n);
    // All remaining edges must be consistent with the reconstruction.
    for (int n = 0; n + 1 < height; ++n)
        for (int m = 1; m < width; ++m) {
            double p = mp.v(m, n);
            if (std::abs(at(m, n) * at(m, n + 1) - p) > tol * (1.0 + std::abs(p)))
                throw Error("non-Koenigs data");
        }
    return s;
}

EdgeLabeling edge_labelings(int width, int height, const std::vector<Vec4>& F,
                            const MetricProducts& mp) {
    EdgeLabeling lab;
    auto idx = [&](int m, int n) { return static_cast<size_t>(n) * width + m; };
    lab.A.resize(std::max(width - 1, 0));
    lab.B.resize(std::max(height - 1, 0));
    for (int m = 0; m + 1 < width; ++m) {
        double ref = 0.0;
        for (int n = 0; n < height; ++n) {
            double val = (F[idx(m + 1, n)] - F[idx(m, n)]).norm2() / mp.h(m, n);
            if (n == 0)
                lab.A[m] = ref = val;
            else
                lab.max_column_spread =
                    std::max(lab.max_column_spread, std::abs(val - ref) / (1.0 + std::abs(ref)));
        }
    }
    for (int n = 0; n + 1 < height; ++n) {
        double ref = 0.0;
        for (int m = 0; m < width; ++m) {
            double val = (F[idx(m, n + 1)] - F[idx(m, n)]).norm2() / mp.v(m, n);
            if (m == 0)
                lab.B[n] = ref = val;
            else
                lab.max_row_spread =
                    std::max(lab.max_row_spread, std::abs(val - ref) / (1.0 + std::abs(ref)));
        }
    }
    return lab;
}

CrossRatioCheck face_cross_ratio_real_check(const std::array<Vec4, 4>& pts, int dim, double tol) {
    std::array<Quaternion, 4> q;
    for (int i = 0; i < 4; ++i) {
        if (dim == 3)
            q[i] = embed_r3(Vec3{pts[i].x1, pts[i].x2, pts[i].x3});
        else
            q[i] = embed_r4(pts[i]);
    }
    Quaternion cr = cross_ratio(q[0], q[1], q[2], q[3]);
    double mag = cr.frobenius();
    double defect = std::sqrt(std::norm(cr.m12) + std::norm(cr.m21) +
                              std::imag(cr.m11) * std::imag(cr.m11) +
                              std::imag(cr.m22) * std::imag(cr.m22) + std::norm(cr.m11 - cr.m22));
    if (defect > tol * (1.0 + mag))
        throw Error("cross-ratio not scalar");
    Complex value = 0.5 * (cr.m11 + cr.m22);
    return {value, std::real(value) < 0.0};
}

} // namespace geometry
} // namespace lawson
