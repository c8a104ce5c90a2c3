#ifndef LAWSON_VERIFY_HPP
#define LAWSON_VERIFY_HPP

#include <optional>
#include <string>

#include "lawson/correspondence.hpp"

namespace lawson {

struct VerifyTolerances {
    double face_defect = 1e-9;      // planarity and circularity
    double mean_curvature = 1e-8;   // |H_f - H_target|
    double dual_mixed_area = 1e-10; // relative to A(F)
    double cross_ratio = 1e-9;
    double edge_length = 1e-10; // against the Lax edge-length formulas
    double unit_norm = 1e-12;   // |F| = |N| = 1 and orthogonality in S^3
    double labeling_spread = 1e-8;
};

struct CriterionResult {
    std::string name;
    double max_deviation = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct VerificationReport {
    std::vector<CriterionResult> criteria;
    std::vector<double> face_h, face_k, face_planarity, face_circularity, face_cross_ratio;
    std::vector<double> edge_products_h, edge_products_v;
    std::vector<double> labeling_a, labeling_b;
    VerifyTolerances tolerances;

    bool all_pass() const {
        for (const auto& c : criteria)
            if (!c.pass)
                return false;
        return true;
    }
};

VerificationReport verify_net(const NetR3& net, const LatticeLax* lax = nullptr,
                              const VerifyTolerances& tol = {});
VerificationReport verify_net(const NetS3& net, const LatticeLax* lax = nullptr,
                              const VerifyTolerances& tol = {});
VerificationReport verify_net(const SphereNet& net, const LatticeLax* lax = nullptr,
                              const VerifyTolerances& tol = {});

} // namespace lawson

#endif
