#ifndef LAWSON_GEOMETRY_HPP
#define LAWSON_GEOMETRY_HPP

#include <array>
#include <optional>
#include <vector>

#include "lawson/quaternion.hpp"

namespace lawson {
namespace geometry {

struct FaceDefects {
    double planarity = 0.0;   // normalized tetrahedron volume
    double circularity = 0.0; // circumcircle distance of p4 over circumradius
};

/// Planarity and circularity defects of four points (works in R^3 and R^4,
/// pass R^3 points via lift4).
FaceDefects face_defects(const std::array<Vec4, 4>& pts);

/// Planar quadrilateral with an orthonormal in-plane frame. The frame fixes
/// the sign of areas; by default it is right-handed with respect to the
/// vertex order (F, F1, F12, F2).
class PlanarQuad {
public:
    /// Frame derived from the quad's own edges.
    static PlanarQuad from_points(const std::array<Vec4, 4>& pts, double planarity_tol = 1e-8);
    static PlanarQuad from_points3(const std::array<Vec3, 4>& pts, double planarity_tol = 1e-8);

    /// Same points, but areas measured in another (parallel) face's frame.
    static PlanarQuad in_frame_of(const PlanarQuad& ref, const std::array<Vec4, 4>& pts,
                                  double planarity_tol = 1e-8);

    /// R^3 quad with an explicit orientation normal.
    static PlanarQuad with_normal(const std::array<Vec3, 4>& pts, const Vec3& normal,
                                  double planarity_tol = 1e-8);

    const std::array<Vec4, 4>& points() const { return pts_; }
    const Vec4& e1() const { return e1_; }
    const Vec4& e2() const { return e2_; }

    /// In-plane coordinates of the four corners relative to the frame origin.
    std::array<std::array<double, 2>, 4> coords() const;

    double scale() const; // max edge length, for relative tolerances

private:
    std::array<Vec4, 4> pts_;
    Vec4 origin_, e1_, e2_;
};

/// Shoelace area in the quad's stored frame.
double signed_area(const PlanarQuad& q);

/// Polarization 1/4 (A(f+f') - A(f-f')), both faces measured in f's frame.
/// Throws "not edge-parallel" when corresponding edges are not parallel.
double mixed_area(const PlanarQuad& f, const PlanarQuad& fp);

/// (H, K) = (-A(F,N)/A(F), A(N)/A(F)) for a face of F and the parallel face
/// of its Gauss map.
std::pair<double, double> curvatures(const PlanarQuad& Fface, const PlanarQuad& Nface);

/// Signed metric products s*s_i on every edge of an M x N net, extracted from
/// the net and its edge-parallel dual: |s s_i| = |dF|/|dF*|, negative iff the
/// edges are anti-parallel.
struct MetricProducts {
    int width = 0, height = 0;
    std::vector<double> horizontal; // (M-1) x N, row-major
    std::vector<double> vertical;   // M x (N-1)

    double h(int m, int n) const { return horizontal[static_cast<size_t>(n) * (width - 1) + m]; }
    double v(int m, int n) const { return vertical[static_cast<size_t>(n) * width + m]; }
};

MetricProducts metric_products(int width, int height, const std::vector<Vec4>& F,
                               const std::vector<Vec4>& Fdual, double tol = 1e-9);

/// Multiplicative reconstruction of the vertex metric s from its edge
/// products, normalized by s(0,0) = s00.
std::vector<double> extract_metric(const MetricProducts& mp, double s00, double tol = 1e-8);

/// Edge labelings A (per column of horizontal edges) and B (per row of
/// vertical edges), A = |F1-F|^2/(s s1), B = |F2-F|^2/(s s2).
struct EdgeLabeling {
    std::vector<double> A;       // length M-1
    std::vector<double> B;       // length N-1
    double max_column_spread = 0.0; // relative deviation from constancy
    double max_row_spread = 0.0;
};

EdgeLabeling edge_labelings(int width, int height, const std::vector<Vec4>& F,
                            const MetricProducts& mp);

struct CrossRatioCheck {
    Complex value;
    bool is_real_negative = false;
};

/// Quaternionic cross-ratio of a circular face reduced to its scalar. The
/// points are embedded in Im H (dim 3) or in H (dim 4).
CrossRatioCheck face_cross_ratio_real_check(const std::array<Vec4, 4>& pts, int dim,
                                            double tol = 1e-9);

} // namespace geometry
} // namespace lawson

#endif
