#ifndef LAWSON_LAX_HPP
#define LAWSON_LAX_HPP

#include <span>
#include <vector>

#include "lawson/quaternion.hpp"

namespace lawson {

/// Lax content of a horizontal edge: U(lambda) = (1/alpha) [[a, -lu-u^{-1}/l],
/// [u^{-1}l + u/l, conj a]].
struct UEdgeData {
    Complex a{0, 0};
    double u = 1.0;
};

/// Lax content of a vertical edge: V(lambda) = (1/beta) [[b, -i l v + i v^{-1}/l],
/// [i l v^{-1} - i v/l, conj b]].
struct VEdgeData {
    Complex b{0, 0};
    double v = 1.0;
};

/// Unit-circle spectral parameter lambda = e^{i gamma}, stored through gamma
/// so |lambda| = 1 exactly.
class SpectralPoint {
public:
    explicit SpectralPoint(double gamma) : gamma_(gamma) {}

    double gamma() const { return gamma_; }
    Complex lambda() const { return std::polar(1.0, gamma_); }
    /// lambda^2 + lambda^{-2} on the unit circle.
    double two_cos_2gamma() const { return 2.0 * std::cos(2.0 * gamma_); }

private:
    double gamma_;
};

double alpha(const UEdgeData& e, const SpectralPoint& s);
double beta(const VEdgeData& e, const SpectralPoint& s);

/// Labeling value |a|^2 + u^2 + u^{-2}, constant along a column of horizontal
/// edges (alpha^2 minus the spectral term).
inline double alpha_label(const UEdgeData& e) {
    return std::norm(e.a) + e.u * e.u + 1.0 / (e.u * e.u);
}
inline double beta_label(const VEdgeData& e) {
    return std::norm(e.b) + e.v * e.v + 1.0 / (e.v * e.v);
}

Quaternion eval_U(const UEdgeData& e, const SpectralPoint& s);
Quaternion eval_V(const VEdgeData& e, const SpectralPoint& s);

/// d/dgamma of the evaluated Lax matrix at gamma = 0.
Quaternion dU_dgamma(const UEdgeData& e);
Quaternion dV_dgamma(const VEdgeData& e);

/// The four edges around one quad: U on (0,1), V on (0,2), Up on (2,12),
/// Vp on (1,12).
struct QuadLax {
    UEdgeData U, Up;
    VEdgeData V, Vp;
};

/// Max over the given spectral points of ||V'(l)U(l) - U'(l)V(l)||_F.
double commutation_residual(const QuadLax& q, std::span<const SpectralPoint> points);
double commutation_residual(const QuadLax& q, std::initializer_list<double> gammas);

/// Solves the quad commutation equations for the opposite edges (Up, Vp).
QuadLax solve_quad(const UEdgeData& U, const VEdgeData& V);

/// Edge data on a finite M x N window of Z^2. Horizontal edge (m,n) joins
/// (m,n)-(m+1,n) for 0 <= m < M-1; vertical edge (m,n) joins (m,n)-(m,n+1)
/// for 0 <= n < N-1.
class LatticeLax {
public:
    LatticeLax(int width, int height);

    int width() const { return m_; }
    int height() const { return n_; }

    UEdgeData& horizontal(int m, int n);
    const UEdgeData& horizontal(int m, int n) const;
    VEdgeData& vertical(int m, int n);
    const VEdgeData& vertical(int m, int n) const;

    QuadLax quad(int m, int n) const;

    /// Validates all quad invariants (uu' = vv', commutation at gamma = +-pi/6,
    /// labeling constancy). Throws with lattice coordinates on failure.
    void validate(double tol_uv = 1e-10, double tol_comm = 1e-9, double tol_label = 1e-8) const;

private:
    int m_, n_;
    std::vector<UEdgeData> h_;
    std::vector<VEdgeData> v_;
};

/// Initial data: the bottom row of horizontal edges and the left column of
/// vertical edges.
struct CauchyData {
    std::vector<UEdgeData> row0;
    std::vector<VEdgeData> col0;

    int width() const { return static_cast<int>(row0.size()) + 1; }
    int height() const { return static_cast<int>(col0.size()) + 1; }
};

/// Fills the window quad by quad (row-major) via solve_quad. Deterministic.
LatticeLax propagate(const CauchyData& c);

/// Positive vertex function w with u = w w_1, v = w w_2, normalized w(0,0) = 1.
/// Throws if the multiplicative closure around some quad fails.
std::vector<double> vertex_function_w(const LatticeLax& lat, double tol = 1e-10);

} // namespace lawson

#endif
