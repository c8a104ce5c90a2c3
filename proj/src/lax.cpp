#include "lawson/lax.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace lawson {

namespace {

std::string fmt_gamma(double g) {
    std::ostringstream os;
    os << g;
    return os.str();
}

} // namespace

double alpha(const UEdgeData& e, const SpectralPoint& s) {
    double a2 = std::norm(e.a) + s.two_cos_2gamma() + e.u * e.u + 1.0 / (e.u * e.u);
    if (a2 <= 0.0)
        throw Error("spectral degeneracy at gamma = " + fmt_gamma(s.gamma()));
    return std::sqrt(a2);
}

double beta(const VEdgeData& e, const SpectralPoint& s) {
    double b2 = std::norm(e.b) - s.two_cos_2gamma() + e.v * e.v + 1.0 / (e.v * e.v);
    if (b2 <= 0.0)
        throw Error("spectral degeneracy at gamma = " + fmt_gamma(s.gamma()));
    return std::sqrt(b2);
}

Quaternion eval_U(const UEdgeData& e, const SpectralPoint& s) {
    Complex l = s.lambda();
    Complex li = std::conj(l); // lambda^{-1} on the unit circle
    double a = alpha(e, s);
    return Quaternion{e.a, -l * e.u - li / e.u, l / e.u + li * e.u, std::conj(e.a)} * (1.0 / a);
}

Quaternion eval_V(const VEdgeData& e, const SpectralPoint& s) {
    Complex l = s.lambda();
    Complex li = std::conj(l);
    Complex i{0, 1};
    double b = beta(e, s);
    return Quaternion{e.b, -i * l * e.v + i * li / e.v, i * l / e.v - i * li * e.v,
                      std::conj(e.b)} *
           (1.0 / b);
}

Quaternion dU_dgamma(const UEdgeData& e) {
    // alpha has an extremum at gamma = 0, so only the lambda-entries move:
    // dU/dgamma|_0 = ((u - u^{-1}) / alpha(1)) * i
    double a = alpha(e, SpectralPoint(0.0));
    return Quaternion::i() * ((e.u - 1.0 / e.u) / a);
}

Quaternion dV_dgamma(const VEdgeData& e) {
    double b2 = std::norm(e.b) - 2.0 + e.v * e.v + 1.0 / (e.v * e.v);
    if (b2 <= 0.0)
        throw Error("degenerate edge: beta(1) = 0");
    return Quaternion::j() * (-(e.v + 1.0 / e.v) / std::sqrt(b2));
}

double commutation_residual(const QuadLax& q, std::span<const SpectralPoint> points) {
    double worst = 0.0;
    for (const SpectralPoint& s : points) {
        Quaternion r = eval_V(q.Vp, s) * eval_U(q.U, s) - eval_U(q.Up, s) * eval_V(q.V, s);
        worst = std::max(worst, r.frobenius());
    }
    return worst;
}

double commutation_residual(const QuadLax& q, std::initializer_list<double> gammas) {
    std::vector<SpectralPoint> pts;
    pts.reserve(gammas.size());
    for (double g : gammas)
        pts.emplace_back(g);
    return commutation_residual(q, pts);
}

namespace {

// Right-hand sides of the two linear commutation equations in (a', b'),
// parametrized by t = v' (with u' = v t / u forced by uu' = vv'):
//   (i v) a' + (-u)      b' = t (i conj(a) - conj(b) v / u)
//   (-i/v) a' + (-1/u)   b' = -(i conj(a) + conj(b) u / v) / t
struct LinearElimination {
    Complex a_per_t, a_per_invt; // a'(t) = a_per_t * t + a_per_invt / t
    Complex b_per_t, b_per_invt;

    LinearElimination(const UEdgeData& U, const VEdgeData& V) {
        const Complex i{0, 1};
        double u = U.u, v = V.v;
        Complex ca = std::conj(U.a), cb = std::conj(V.b);
        Complex det = (i * v) * (-1.0 / u) - (-u) * (-i / v); // = -i (v/u + u/v), nonzero
        Complex r1t = i * ca - cb * v / u;                    // coefficient of t in rhs1
        Complex r2s = -(i * ca + cb * u / v);                 // coefficient of 1/t in rhs2
        // Cramer on [[iv, -u], [-i/v, -1/u]]:
        a_per_t = (r1t * (-1.0 / u)) / det;
        a_per_invt = (-(-u) * r2s) / det;
        b_per_t = ((i * v) * 0.0 - (-i / v) * r1t) / det;
        b_per_invt = ((i * v) * r2s) / det;
    }

    Complex a_prime(double t) const { return a_per_t * t + a_per_invt / t; }
    Complex b_prime(double t) const { return b_per_t * t + b_per_invt / t; }
};

// Residual of the remaining scalar commutation equation,
//   b'a - ba' - i (u'v + uv' - 1/(u'v) - 1/(uv')) = 0,  with u' = vt/u, v' = t,
// divided by i: the root lives in the real part, the imaginary part vanishes
// identically for consistent data (over-determination check).
Complex closing_residual(const UEdgeData& U, const VEdgeData& V, const LinearElimination& lin,
                         double t) {
    const Complex i{0, 1};
    double u = U.u, v = V.v;
    double up = v * t / u;
    Complex ap = lin.a_prime(t), bp = lin.b_prime(t);
    return (bp * U.a - V.b * ap) / i - (up * v + u * t - 1.0 / (up * v) - 1.0 / (u * t));
}

double full_residual(const UEdgeData& U, const VEdgeData& V, const QuadLax& q) {
    static const std::vector<SpectralPoint> pts{SpectralPoint(M_PI / 6.0),
                                                SpectralPoint(-M_PI / 6.0)};
    (void)U;
    (void)V;
    return commutation_residual(q, pts);
}

} // namespace

QuadLax solve_quad(const UEdgeData& U, const VEdgeData& V) {
    if (U.u <= 0.0 || V.v <= 0.0)
        throw Error("non-positive edge datum");

    LinearElimination lin(U, V);
    auto re_g = [&](double t) { return std::real(closing_residual(U, V, lin, t)); };

    // Bracketing scan for roots of Re g over a log-spaced grid around t0 = u.
    const double t0 = U.u;
    const double lo = t0 / 50.0, hi = t0 * 50.0;
    const int kSamples = 400;
    std::vector<double> roots;
    double prev_t = lo, prev_g = re_g(lo);
    for (int k = 1; k <= kSamples; ++k) {
        double t = lo * std::pow(hi / lo, static_cast<double>(k) / kSamples);
        double g = re_g(t);
        if (prev_g == 0.0)
            roots.push_back(prev_t);
        else if (g != 0.0 && std::signbit(g) != std::signbit(prev_g)) {
            double a = prev_t, b = t;
            for (int it = 0; it < 200; ++it) {
                double mid = 0.5 * (a + b);
                if (std::signbit(re_g(mid)) == std::signbit(re_g(a)))
                    a = mid;
                else
                    b = mid;
            }
            roots.push_back(0.5 * (a + b));
        }
        prev_t = t;
        prev_g = g;
    }

    // Keep roots on which the full system closes.
    std::vector<QuadLax> admissible;
    std::ostringstream diag;
    for (double t : roots) {
        Complex g = closing_residual(U, V, lin, t);
        QuadLax q{U, {lin.a_prime(t), V.v * t / U.u}, V, {lin.b_prime(t), t}};
        double res = full_residual(U, V, q);
        diag << " t=" << t << " |g|=" << std::abs(g) << " comm=" << res << ";";
        if (std::abs(g) < 1e-9 && res < 1e-10)
            admissible.push_back(q);
    }

    if (admissible.empty())
        throw Error("non-solvable quad data:" + diag.str());
    if (admissible.size() > 1) {
        // Multiple positive roots pass all residuals: take the one closest to
        // t0 and report the rest.
        std::sort(admissible.begin(), admissible.end(), [&](const QuadLax& x, const QuadLax& y) {
            return std::abs(x.Vp.v - t0) < std::abs(y.Vp.v - t0);
        });
        throw Error("ambiguous quad:" + diag.str());
    }

    const QuadLax& q = admissible.front();
    // Labeling preservation is verified, not assumed.
    if (std::abs(alpha_label(q.Up) - alpha_label(q.U)) > 1e-9 * (1.0 + alpha_label(q.U)) ||
        std::abs(beta_label(q.Vp) - beta_label(q.V)) > 1e-9 * (1.0 + beta_label(q.V)))
        throw Error("labeling not preserved by quad solution");
    return q;
}

LatticeLax::LatticeLax(int width, int height) : m_(width), n_(height) {
    if (width < 1 || height < 1)
        throw Error("lattice dimensions must be positive");
    h_.resize(static_cast<size_t>(std::max(width - 1, 0)) * height);
    v_.resize(static_cast<size_t>(width) * std::max(height - 1, 0));
}

UEdgeData& LatticeLax::horizontal(int m, int n) {
    if (m < 0 || m >= m_ - 1 || n < 0 || n >= n_)
        throw Error("horizontal edge index out of range");
    return h_[static_cast<size_t>(n) * (m_ - 1) + m];
}
const UEdgeData& LatticeLax::horizontal(int m, int n) const {
    return const_cast<LatticeLax*>(this)->horizontal(m, n);
}
VEdgeData& LatticeLax::vertical(int m, int n) {
    if (m < 0 || m >= m_ || n < 0 || n >= n_ - 1)
        throw Error("vertical edge index out of range");
    return v_[static_cast<size_t>(n) * m_ + m];
}
const VEdgeData& LatticeLax::vertical(int m, int n) const {
    return const_cast<LatticeLax*>(this)->vertical(m, n);
}

QuadLax LatticeLax::quad(int m, int n) const {
    return {horizontal(m, n), horizontal(m, n + 1), vertical(m, n), vertical(m + 1, n)};
}

void LatticeLax::validate(double tol_uv, double tol_comm, double tol_label) const {
    std::vector<SpectralPoint> pts{SpectralPoint(M_PI / 6.0), SpectralPoint(-M_PI / 6.0)};
    for (int n = 0; n + 1 < n_; ++n) {
        for (int m = 0; m + 1 < m_; ++m) {
            QuadLax q = quad(m, n);
            std::ostringstream at;
            at << " at quad (" << m << "," << n << ")";
            if (std::abs(q.U.u * q.Up.u - q.V.v * q.Vp.v) > tol_uv)
                throw Error("uu' = vv' violated" + at.str());
            if (commutation_residual(q, pts) > tol_comm)
                throw Error("commutation residual too large" + at.str());
        }
    }
    // Column / row labeling constancy.
    for (int m = 0; m + 1 < m_; ++m) {
        double ref = alpha_label(horizontal(m, 0));
        for (int n = 1; n < n_; ++n)
            if (std::abs(alpha_label(horizontal(m, n)) - ref) > tol_label * (1.0 + std::abs(ref)))
                throw Error("alpha labeling not constant along column " + std::to_string(m));
    }
    for (int n = 0; n + 1 < n_; ++n) {
        double ref = beta_label(vertical(0, n));
        for (int m = 1; m < m_; ++m)
            if (std::abs(beta_label(vertical(m, n)) - ref) > tol_label * (1.0 + std::abs(ref)))
                throw Error("beta labeling not constant along row " + std::to_string(n));
    }
}

LatticeLax propagate(const CauchyData& c) {
    int width = c.width(), height = c.height();
    if (width < 1 || height < 1)
        throw Error("empty Cauchy data");
    for (const auto& e : c.row0)
        if (e.u <= 0.0)
            throw Error("Cauchy data: u must be positive");
    for (const auto& e : c.col0)
        if (e.v <= 0.0)
            throw Error("Cauchy data: v must be positive");

    LatticeLax lat(width, height);
    for (int m = 0; m + 1 < width; ++m)
        lat.horizontal(m, 0) = c.row0[m];
    for (int n = 0; n + 1 < height; ++n)
        lat.vertical(0, n) = c.col0[n];

    for (int n = 0; n + 1 < height; ++n) {
        for (int m = 0; m + 1 < width; ++m) {
            try {
                QuadLax q = solve_quad(lat.horizontal(m, n), lat.vertical(m, n));
                lat.horizontal(m, n + 1) = q.Up;
                lat.vertical(m + 1, n) = q.Vp;
            } catch (const Error& e) {
                throw Error("propagation failed at quad (" + std::to_string(m) + "," +
                            std::to_string(n) + "): " + e.what());
            }
        }
    }
    return lat;
}

std::vector<double> vertex_function_w(const LatticeLax& lat, double tol) {
    int width = lat.width(), height = lat.height();
    std::vector<double> w(static_cast<size_t>(width) * height, 0.0);
    auto at = [&](int m, int n) -> double& { return w[static_cast<size_t>(n) * width + m]; };
    at(0, 0) = 1.0;
    for (int n = 0; n + 1 < height; ++n)
        at(0, n + 1) = lat.vertical(0, n).v / at(0, n);
    for (int n = 0; n < height; ++n)
        for (int m = 0; m + 1 < width; ++m)
            at(m + 1, n) = lat.horizontal(m, n).u / at(m, n);
    // Closure: the vertical edges not used for propagation must satisfy v = w w_2.
    for (int n = 0; n + 1 < height; ++n)
        for (int m = 1; m < width; ++m) {
            double v = lat.vertical(m, n).v;
            if (std::abs(at(m, n) * at(m, n + 1) - v) > tol * (1.0 + std::abs(v)))
                throw Error("vertex function closure failed at (" + std::to_string(m) + "," +
                            std::to_string(n) + ")");
        }
    return w;
}

} // namespace lawson
