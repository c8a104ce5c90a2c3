// Independent reference solver for the quad equations, used only by tests.
// It shares no code with the library: matrices are evaluated from scratch and
// the unknowns are found by damped Gauss-Newton on the full matrix residual
// at lambda = e^{+-i pi/6}, with the product constraint u u' = v v' eliminated.
#ifndef LAWSON_TESTS_ORACLE_HPP
#define LAWSON_TESTS_ORACLE_HPP

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>

namespace oracle {

using C = std::complex<double>;
using Mat = std::array<C, 4>; // row-major 2x2

inline Mat mul(const Mat& x, const Mat& y) {
    return {x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3],
            x[2] * y[0] + x[3] * y[2], x[2] * y[1] + x[3] * y[3]};
}

inline Mat umat(C a, double u, double gamma) {
    C l = std::polar(1.0, gamma);
    double al2 = std::norm(a) + 2.0 * std::cos(2.0 * gamma) + u * u + 1.0 / (u * u);
    if (al2 <= 0.0)
        throw std::runtime_error("oracle: alpha degenerate");
    double al = std::sqrt(al2);
    return {a / al, (-l * u - 1.0 / (l * u)) / al, (l / u + u / l) / al, std::conj(a) / al};
}

inline Mat vmat(C b, double v, double gamma) {
    C l = std::polar(1.0, gamma);
    C i(0, 1);
    double be2 = std::norm(b) - 2.0 * std::cos(2.0 * gamma) + v * v + 1.0 / (v * v);
    if (be2 <= 0.0)
        throw std::runtime_error("oracle: beta degenerate");
    double be = std::sqrt(be2);
    return {b / be, (-i * l * v + i / (l * v)) / be, (i * l / v - i * v / l) / be,
            std::conj(b) / be};
}

struct QuadVars {
    C a, b;      // known pair
    double u, v; // known pair
};

struct Result {
    C a, b;
    double u, v;
    double residual; // final max-abs residual
};

// Residual of V'(l)U(l) - U'(l)V(l) at gamma = +-pi/6 packed into 16 reals.
inline void residual16(const QuadVars& known, C a2, double u2, C b2, double v2, bool solve_up,
                       double* out) {
    int k = 0;
    for (double g : {M_PI / 6.0, -M_PI / 6.0}) {
        Mat U, V, Up, Vp;
        if (solve_up) {
            U = umat(known.a, known.u, g);
            V = vmat(known.b, known.v, g);
            Up = umat(a2, u2, g);
            Vp = vmat(b2, v2, g);
        } else {
            U = umat(a2, u2, g);
            V = vmat(b2, v2, g);
            Up = umat(known.a, known.u, g);
            Vp = vmat(known.b, known.v, g);
        }
        Mat r1 = mul(Vp, U), r2 = mul(Up, V);
        for (int e = 0; e < 4; ++e) {
            out[k++] = (r1[e] - r2[e]).real();
            out[k++] = (r1[e] - r2[e]).imag();
        }
    }
}

// Gauss-Newton over x = (Re a2, Im a2, Re b2, Im b2, t) where t is the
// unknown v-type scale and the u-type scale follows from u u' = v v'.
// solve_up = true : known = (U, V) bottom/left, returns (Up, Vp).
// solve_up = false: known = (Up, Vp) top/right, returns (U, V).
inline Result solve(const QuadVars& known, bool solve_up = true) {
    double x[5] = {known.a.real(), known.a.imag(), known.b.real(), known.b.imag(), known.u};

    auto eval = [&](const double* p, double* r) {
        C a2(p[0], p[1]), b2(p[2], p[3]);
        double t = p[4];
        double other = known.v * t / known.u; // u u' = v v'
        residual16(known, a2, other, b2, t, solve_up, r);
    };

    auto sum_sq = [](const double* r) {
        double s = 0.0;
        for (int i = 0; i < 16; ++i)
            s += r[i] * r[i];
        return s;
    };

    double r[16];
    double mu = 1e-12;
    for (int iter = 0; iter < 400; ++iter) {
        eval(x, r);
        double worst = 0.0;
        for (double e : r)
            worst = std::max(worst, std::abs(e));
        if (worst < 1e-14)
            break;
        double cost = sum_sq(r);

        // Numerical Jacobian.
        double J[16][5];
        for (int j = 0; j < 5; ++j) {
            double h = 1e-7 * (1.0 + std::abs(x[j]));
            double xp[5], rp[16], rm[16];
            for (int k = 0; k < 5; ++k)
                xp[k] = x[k];
            xp[j] = x[j] + h;
            eval(xp, rp);
            xp[j] = x[j] - h;
            eval(xp, rm);
            for (int i = 0; i < 16; ++i)
                J[i][j] = (rp[i] - rm[i]) / (2.0 * h);
        }

        // Normal equations (J^T J + mu I) dx = -J^T r, solved by elimination.
        double A[5][6] = {};
        for (int i = 0; i < 5; ++i) {
            for (int j = 0; j < 5; ++j)
                for (int k = 0; k < 16; ++k)
                    A[i][j] += J[k][i] * J[k][j];
            A[i][i] += mu;
            for (int k = 0; k < 16; ++k)
                A[i][5] -= J[k][i] * r[k];
        }
        for (int c = 0; c < 5; ++c) {
            int piv = c;
            for (int i = c + 1; i < 5; ++i)
                if (std::abs(A[i][c]) > std::abs(A[piv][c]))
                    piv = i;
            for (int j = 0; j < 6; ++j)
                std::swap(A[c][j], A[piv][j]);
            for (int i = c + 1; i < 5; ++i) {
                double f = A[i][c] / A[c][c];
                for (int j = c; j < 6; ++j)
                    A[i][j] -= f * A[c][j];
            }
        }
        double dx[5];
        for (int i = 4; i >= 0; --i) {
            double s = A[i][5];
            for (int j = i + 1; j < 5; ++j)
                s -= A[i][j] * dx[j];
            dx[i] = s / A[i][i];
        }
        // Backtracking: accept the step only if it lowers the squared
        // residual, shrinking it (and raising the damping) otherwise.
        double step = 1.0;
        bool accepted = false;
        for (int bt = 0; bt < 30; ++bt) {
            double xt[5], rt[16];
            for (int j = 0; j < 5; ++j)
                xt[j] = x[j] + step * dx[j];
            if (xt[4] <= 0.0)
                xt[4] = 1e-3; // keep the scale positive
            eval(xt, rt);
            if (sum_sq(rt) < cost) {
                for (int j = 0; j < 5; ++j)
                    x[j] = xt[j];
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (accepted)
            mu = std::max(mu * 0.25, 1e-12);
        else
            mu = std::min(mu * 100.0 + 1e-10, 1e2);
    }

    eval(x, r);
    double worst = 0.0;
    for (double e : r)
        worst = std::max(worst, std::abs(e));
    Result res;
    res.a = C(x[0], x[1]);
    res.b = C(x[2], x[3]);
    res.v = x[4];
    res.u = known.v * x[4] / known.u;
    res.residual = worst;
    return res;
}

// Max-abs commutation residual of a full quad at one spectral angle.
inline double quad_residual(C a, double u, C b, double v, C ap, double up, C bp, double vp,
                            double gamma) {
    Mat r1 = mul(vmat(bp, vp, gamma), umat(a, u, gamma));
    Mat r2 = mul(umat(ap, up, gamma), vmat(b, v, gamma));
    double worst = 0.0;
    for (int e = 0; e < 4; ++e)
        worst = std::max(worst, std::abs(r1[e] - r2[e]));
    return worst;
}

} // namespace oracle

#endif
