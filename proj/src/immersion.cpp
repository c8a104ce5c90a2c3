#include "lawson/immersion.hpp"

#include <cmath>
#include <cstring>

namespace lawson {

std::vector<Face> window_faces(int width, int height) {
    std::vector<Face> faces;
    faces.reserve(static_cast<size_t>(std::max(width - 1, 0)) * std::max(height - 1, 0));
    for (int n = 0; n + 1 < height; ++n)
        for (int m = 0; m + 1 < width; ++m)
            faces.push_back({vertex_index(m, n, width), vertex_index(m + 1, n, width),
                             vertex_index(m + 1, n + 1, width), vertex_index(m, n + 1, width)});
    return faces;
}

std::uint64_t lattice_hash(const LatticeLax& lat) {
    std::uint64_t h = 14695981039346656037ull;
    auto mix = [&](double x) {
        std::uint64_t bits;
        std::memcpy(&bits, &x, sizeof bits);
        for (int i = 0; i < 8; ++i) {
            h ^= (bits >> (8 * i)) & 0xff;
            h *= 1099511628211ull;
        }
    };
    mix(static_cast<double>(lat.width()));
    mix(static_cast<double>(lat.height()));
    for (int n = 0; n < lat.height(); ++n)
        for (int m = 0; m + 1 < lat.width(); ++m) {
            const UEdgeData& e = lat.horizontal(m, n);
            mix(e.a.real());
            mix(e.a.imag());
            mix(e.u);
        }
    for (int n = 0; n + 1 < lat.height(); ++n)
        for (int m = 0; m < lat.width(); ++m) {
            const VEdgeData& e = lat.vertical(m, n);
            mix(e.b.real());
            mix(e.b.imag());
            mix(e.v);
        }
    return h;
}

NetR3 immerse_r3(const FrameWithDerivative& fd, std::uint64_t hash) {
    int width = fd.phi.width(), height = fd.phi.height();
    NetR3 net;
    net.width = width;
    net.height = height;
    net.lattice_hash = hash;
    net.faces = window_faces(width, height);
    size_t count = static_cast<size_t>(width) * height;
    net.F.resize(count);
    net.Fdual.resize(count);
    net.N.resize(count);

    for (int n = 0; n < height; ++n)
        for (int m = 0; m < width; ++m) {
            const Quaternion& phi = fd.phi.at(m, n);
            Quaternion phi_inv = phi.inverse();
            Quaternion nq = -1.0 * (phi_inv * Quaternion::k() * phi);
            Quaternion fq = -1.0 * (phi_inv * fd.dot_at(m, n)) - 0.5 * nq;
            int idx = vertex_index(m, n, width);
            net.N[idx] = project_r3(nq, 1e-10);
            net.F[idx] = project_r3(fq, 1e-10);
            net.Fdual[idx] = net.F[idx] + net.N[idx];
        }
    return net;
}

NetR3 immerse_r3(const LatticeLax& lat) {
    return immerse_r3(integrate_frame_with_derivative(lat), lattice_hash(lat));
}

NetS3 immerse_s3(const LatticeLax& lat, double gamma1, bool negative_branch) {
    if (!(gamma1 > 0.0 && gamma1 < M_PI / 2.0))
        throw Error("invalid spectral angle: gamma1 must lie in (0, pi/2)");
    double gamma2 = negative_branch ? M_PI - gamma1 : -gamma1;
    FrameField phi1 = integrate_frame(lat, SpectralPoint(gamma1));
    FrameField phi2 = integrate_frame(lat, SpectralPoint(gamma2));
    Quaternion M = exp_k((gamma1 - gamma2) / 2.0);

    NetS3 net;
    net.width = lat.width();
    net.height = lat.height();
    net.gamma1 = gamma1;
    net.lattice_hash = lattice_hash(lat);
    net.faces = window_faces(net.width, net.height);
    size_t count = static_cast<size_t>(net.width) * net.height;
    net.F.resize(count);
    net.N.resize(count);

    for (int n = 0; n < net.height; ++n)
        for (int m = 0; m < net.width; ++m) {
            Quaternion inv = phi1.at(m, n).inverse();
            Quaternion f = inv * M * phi2.at(m, n);
            Quaternion nq = -1.0 * (inv * Quaternion::k() * M * phi2.at(m, n));
            int idx = vertex_index(m, n, net.width);
            net.F[idx] = project_r4(f, 1e-10);
            net.N[idx] = project_r4(nq, 1e-10);
        }
    return net;
}

SphereNet scale_to_sphere(const NetS3& net) {
    double s = std::sin(2.0 * net.gamma1);
    if (s < 1e-12)
        throw Error("sphere radius overflow");
    SphereNet out;
    out.width = net.width;
    out.height = net.height;
    out.gamma1 = net.gamma1;
    out.kappa = s * s;
    out.radius = 1.0 / s;
    out.faces = net.faces;
    out.lattice_hash = net.lattice_hash;
    out.N = net.N;
    out.F.reserve(net.F.size());
    for (const Vec4& f : net.F)
        out.F.push_back(f * (1.0 / s));
    return out;
}

} // namespace lawson
