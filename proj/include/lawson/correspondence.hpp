#ifndef LAWSON_CORRESPONDENCE_HPP
#define LAWSON_CORRESPONDENCE_HPP

#include "lawson/geometry.hpp"
#include "lawson/immersion.hpp"

namespace lawson {

/// The discrete Lawson pair: CMC-1 net in R^3 and the minimal net in S^3
/// built from the same Lax data.
struct LawsonPair {
    NetR3 r3;
    NetS3 s3; // gamma1 = pi/4
    LatticeLax lax;
    /// Edge-wise agreement of the geometrically extracted metric products
    /// (relative), the isometry statement.
    double max_metric_mismatch = 0.0;
};

/// One member of the sphere family: CMC net on the sphere of curvature
/// kappa = sin^2(2 gamma1) with H = cos(2 gamma1), so H^2 + kappa = 1.
struct FamilyMember {
    double gamma1 = 0.0;
    SphereNet net;
    double measured_h = 0.0;
    double kappa = 0.0;
    /// Geometric metric products of the member, normalized by H (for the
    /// minimal member the products of the natural dual N, which equal the
    /// same -u^2, v^2 values).
    geometry::MetricProducts normalized_products;
};

LawsonPair lawson_pair(const CauchyData& c);

std::vector<FamilyMember> sphere_family(const CauchyData& c, const std::vector<double>& gammas);

/// Optional uniform scaling exposing the general H^2 + kappa = c families.
SphereNet scale_family_member(const SphereNet& net, double factor);

struct CalapsoReport {
    double max_alpha_shift_residual = 0.0; // alpha(g')^2 - alpha(g)^2 - (H' - H)
    double max_beta_shift_residual = 0.0;
    double max_labeling_map_residual = 0.0; // Moebius map on a_01 = 1/alpha^2
};

/// Verifies the Calapso labeling identities between two members built from
/// the same LatticeLax.
CalapsoReport calapso_labeling_check(const LatticeLax& lax, double gamma, double gamma_prime);

struct LimitRow {
    double gamma = 0.0;
    double deviation = 0.0; // max vertex distance to the Euclidean net
    double ratio = 0.0;     // deviation / previous deviation (0 on the first row)
};

/// Deviation of the rescaled sphere nets from the Euclidean net for a
/// decreasing sequence of spectral angles.
std::vector<LimitRow> euclidean_limit(const CauchyData& c, const std::vector<double>& gammas);

/// Metric products of a net against its dual, as Vec4 grids (helper shared by
/// the pair and family checks).
geometry::MetricProducts net_metric_products(const NetR3& net);
geometry::MetricProducts net_metric_products(const NetS3& net);

} // namespace lawson

#endif
