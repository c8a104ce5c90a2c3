#ifndef LAWSON_QUATERNION_HPP
#define LAWSON_QUATERNION_HPP

#include <complex>
#include <stdexcept>
#include <string>

namespace lawson {

using Complex = std::complex<double>;

/// Error type thrown by all numerical preconditions in this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct Vec3 {
    double x1 = 0, x2 = 0, x3 = 0;

    Vec3() = default;
    Vec3(double a, double b, double c) : x1(a), x2(b), x3(c) {}

    Vec3 operator+(const Vec3& o) const { return {x1 + o.x1, x2 + o.x2, x3 + o.x3}; }
    Vec3 operator-(const Vec3& o) const { return {x1 - o.x1, x2 - o.x2, x3 - o.x3}; }
    Vec3 operator*(double s) const { return {x1 * s, x2 * s, x3 * s}; }
    Vec3 operator-() const { return {-x1, -x2, -x3}; }

    double dot(const Vec3& o) const { return x1 * o.x1 + x2 * o.x2 + x3 * o.x3; }
    Vec3 cross(const Vec3& o) const {
        return {x2 * o.x3 - x3 * o.x2, x3 * o.x1 - x1 * o.x3, x1 * o.x2 - x2 * o.x1};
    }
    double norm2() const { return dot(*this); }
    double norm() const { return std::sqrt(norm2()); }
};

inline Vec3 operator*(double s, const Vec3& v) { return v * s; }

struct Vec4 {
    double x1 = 0, x2 = 0, x3 = 0, x4 = 0;

    Vec4() = default;
    Vec4(double a, double b, double c, double d) : x1(a), x2(b), x3(c), x4(d) {}

    Vec4 operator+(const Vec4& o) const { return {x1 + o.x1, x2 + o.x2, x3 + o.x3, x4 + o.x4}; }
    Vec4 operator-(const Vec4& o) const { return {x1 - o.x1, x2 - o.x2, x3 - o.x3, x4 - o.x4}; }
    Vec4 operator*(double s) const { return {x1 * s, x2 * s, x3 * s, x4 * s}; }
    Vec4 operator-() const { return {-x1, -x2, -x3, -x4}; }

    double dot(const Vec4& o) const { return x1 * o.x1 + x2 * o.x2 + x3 * o.x3 + x4 * o.x4; }
    double norm2() const { return dot(*this); }
    double norm() const { return std::sqrt(norm2()); }
};

inline Vec4 operator*(double s, const Vec4& v) { return v * s; }

inline Vec4 lift4(const Vec3& v) { return {v.x1, v.x2, v.x3, 0.0}; }

/// Quaternion as a 2x2 complex matrix. The basis convention is
///   i = [[0,-i],[-i,0]],  j = [[0,-1],[1,0]],  k = [[-i,0],[0,i]],  1 = id,
/// so real quaternions satisfy m21 = -conj(m12), m22 = conj(m11).
class Quaternion {
public:
    Complex m11{0, 0}, m12{0, 0}, m21{0, 0}, m22{0, 0};

    Quaternion() = default;
    Quaternion(Complex a11, Complex a12, Complex a21, Complex a22)
        : m11(a11), m12(a12), m21(a21), m22(a22) {}

    static Quaternion zero() { return {}; }
    static Quaternion one() { return {{1, 0}, {0, 0}, {0, 0}, {1, 0}}; }
    static Quaternion i() { return {{0, 0}, {0, -1}, {0, -1}, {0, 0}}; }
    static Quaternion j() { return {{0, 0}, {-1, 0}, {1, 0}, {0, 0}}; }
    static Quaternion k() { return {{0, -1}, {0, 0}, {0, 0}, {0, 1}}; }

    /// From real coefficients q = x0*1 + x1*i + x2*j + x3*k.
    static Quaternion from_coeffs(double x0, double x1, double x2, double x3) {
        return {Complex(x0, -x3), Complex(-x2, -x1), Complex(x2, -x1), Complex(x0, x3)};
    }

    Quaternion operator+(const Quaternion& o) const {
        return {m11 + o.m11, m12 + o.m12, m21 + o.m21, m22 + o.m22};
    }
    Quaternion operator-(const Quaternion& o) const {
        return {m11 - o.m11, m12 - o.m12, m21 - o.m21, m22 - o.m22};
    }
    Quaternion operator-() const { return {-m11, -m12, -m21, -m22}; }
    Quaternion operator*(const Quaternion& o) const {
        return {m11 * o.m11 + m12 * o.m21, m11 * o.m12 + m12 * o.m22,
                m21 * o.m11 + m22 * o.m21, m21 * o.m12 + m22 * o.m22};
    }
    Quaternion operator*(Complex s) const { return {m11 * s, m12 * s, m21 * s, m22 * s}; }
    Quaternion operator*(double s) const { return *this * Complex(s, 0); }

    Complex det() const { return m11 * m22 - m12 * m21; }
    Complex trace() const { return m11 + m22; }

    /// Conjugate transpose.
    Quaternion dagger() const {
        return {std::conj(m11), std::conj(m21), std::conj(m12), std::conj(m22)};
    }

    Quaternion inverse() const {
        Complex d = det();
        if (std::abs(d) < 1e-300)
            throw Error("quaternion matrix is singular");
        Complex s = 1.0 / d;
        return {m22 * s, -m12 * s, -m21 * s, m11 * s};
    }

    double frobenius() const {
        return std::sqrt(std::norm(m11) + std::norm(m12) + std::norm(m21) + std::norm(m22));
    }

    /// Frobenius deviation from the SU(2)-compatible real-quaternion structure.
    double structure_defect() const {
        Complex d1 = m21 + std::conj(m12);
        Complex d2 = m22 - std::conj(m11);
        return std::sqrt(std::norm(d1) + std::norm(d2));
    }

    /// || q q^dagger - 1 ||_F.
    double unitarity_defect() const {
        return (*this * dagger() - one()).frobenius();
    }
};

inline Quaternion operator*(Complex s, const Quaternion& q) { return q * s; }
inline Quaternion operator*(double s, const Quaternion& q) { return q * s; }

/// exp(angle * k) = diag(e^{-i angle}, e^{i angle}).
inline Quaternion exp_k(double angle) {
    return {std::polar(1.0, -angle), {0, 0}, {0, 0}, std::polar(1.0, angle)};
}

Quaternion embed_r3(const Vec3& v);
Vec3 project_r3(const Quaternion& q, double tol = 1e-12);

Quaternion embed_r4(const Vec4& v);
Vec4 project_r4(const Quaternion& q, double tol = 1e-12);

/// (q1-q2)(q2-q3)^{-1}(q3-q4)(q4-q1)^{-1}, in the ordering (F, F1, F12, F2).
Quaternion cross_ratio(const Quaternion& q1, const Quaternion& q2, const Quaternion& q3,
                       const Quaternion& q4);

/// Fixed R^4 inner product convention: 1/2 Re tr(X Y^dagger) on embedded
/// vectors, normalized so it equals the Euclidean dot product.
double r4_inner(const Quaternion& x, const Quaternion& y);

} // namespace lawson

#endif
