#include "lawson/quaternion.hpp"

#include <algorithm>
#include <cmath>

namespace lawson {

Quaternion embed_r3(const Vec3& v) {
    // X = (X1,X2,X3) <-> [[-i X3, -i X1 - X2], [-i X1 + X2, i X3]]
    return {Complex(0, -v.x3), Complex(-v.x2, -v.x1), Complex(v.x2, -v.x1), Complex(0, v.x3)};
}

Vec3 project_r3(const Quaternion& q, double tol) {
    double scale = q.frobenius();
    if (scale == 0.0)
        return {0, 0, 0};
    if (q.structure_defect() > tol * scale)
        throw Error("not a real-quaternion matrix");
    double real_part = 0.5 * std::real(q.m11 + q.m22);
    if (std::abs(real_part) > tol * scale)
        throw Error("not imaginary");
    return {-std::imag(q.m21), std::real(q.m21), -std::imag(q.m11)};
}

Quaternion embed_r4(const Vec4& v) {
    // X = (X1,X2,X3,X4) <-> [[-i X3 + X4, -i X1 - X2], [-i X1 + X2, i X3 + X4]]
    return {Complex(v.x4, -v.x3), Complex(-v.x2, -v.x1), Complex(v.x2, -v.x1),
            Complex(v.x4, v.x3)};
}

Vec4 project_r4(const Quaternion& q, double tol) {
    double scale = q.frobenius();
    if (scale == 0.0)
        return {0, 0, 0, 0};
    if (q.structure_defect() > tol * scale)
        throw Error("not a real-quaternion matrix");
    return {-std::imag(q.m21), std::real(q.m21), -std::imag(q.m11), std::real(q.m11)};
}

Quaternion cross_ratio(const Quaternion& q1, const Quaternion& q2, const Quaternion& q3,
                       const Quaternion& q4) {
    Quaternion d12 = q1 - q2;
    Quaternion d23 = q2 - q3;
    Quaternion d34 = q3 - q4;
    Quaternion d41 = q4 - q1;
    double scale = std::max({d12.frobenius(), d23.frobenius(), d34.frobenius(), d41.frobenius()});
    double floor = 1e-14 * scale * scale * scale * scale;
    if (std::abs(d12.det()) <= floor || std::abs(d23.det()) <= floor ||
        std::abs(d34.det()) <= floor || std::abs(d41.det()) <= floor)
        throw Error("degenerate quadrilateral");
    return d12 * d23.inverse() * d34 * d41.inverse();
}

double r4_inner(const Quaternion& x, const Quaternion& y) {
    // tr(X Y^dagger) = 2 <x, y> on embedded vectors.
    return 0.5 * std::real((x * y.dagger()).trace());
}

} // namespace lawson
