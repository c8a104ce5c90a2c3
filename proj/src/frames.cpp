#include "lawson/frames.hpp"

namespace lawson {

FrameField::FrameField(int width, int height, SpectralPoint s) : m_(width), n_(height), s_(s) {
    if (width < 1 || height < 1)
        throw Error("frame dimensions must be positive");
    phi_.assign(static_cast<size_t>(width) * height, Quaternion::one());
}

Quaternion& FrameField::at(int m, int n) {
    if (m < 0 || m >= m_ || n < 0 || n >= n_)
        throw Error("frame vertex index out of range");
    return phi_[static_cast<size_t>(n) * m_ + m];
}
const Quaternion& FrameField::at(int m, int n) const {
    return const_cast<FrameField*>(this)->at(m, n);
}

FrameField integrate_frame(const LatticeLax& lat, SpectralPoint s) {
    FrameField f(lat.width(), lat.height(), s);
    f.at(0, 0) = Quaternion::one();
    try {
        for (int n = 0; n + 1 < lat.height(); ++n)
            f.at(0, n + 1) = eval_V(lat.vertical(0, n), s) * f.at(0, n);
        for (int n = 0; n < lat.height(); ++n)
            for (int m = 0; m + 1 < lat.width(); ++m)
                f.at(m + 1, n) = eval_U(lat.horizontal(m, n), s) * f.at(m, n);
    } catch (const Error& e) {
        throw Error(std::string("frame integration: ") + e.what());
    }
    return f;
}

FrameWithDerivative integrate_frame_with_derivative(const LatticeLax& lat) {
    // Euclidean evaluation: reject edges with beta(1) = 0 up front.
    SpectralPoint s0(0.0);
    for (int n = 0; n + 1 < lat.height(); ++n)
        for (int m = 0; m < lat.width(); ++m) {
            const VEdgeData& e = lat.vertical(m, n);
            if (std::norm(e.b) - 2.0 + e.v * e.v + 1.0 / (e.v * e.v) <= 0.0)
                throw Error("Euclidean evaluation impossible on edge (" + std::to_string(m) + "," +
                            std::to_string(n) + ")");
        }

    FrameWithDerivative fd{integrate_frame(lat, s0), {}};
    int width = lat.width(), height = lat.height();
    fd.phidot.assign(static_cast<size_t>(width) * height, Quaternion::zero());
    auto dot = [&](int m, int n) -> Quaternion& {
        return fd.phidot[static_cast<size_t>(n) * width + m];
    };
    // Product rule along the same integration paths as the frame itself.
    for (int n = 0; n + 1 < height; ++n) {
        const VEdgeData& e = lat.vertical(0, n);
        dot(0, n + 1) = dV_dgamma(e) * fd.phi.at(0, n) + eval_V(e, s0) * dot(0, n);
    }
    for (int n = 0; n < height; ++n)
        for (int m = 0; m + 1 < width; ++m) {
            const UEdgeData& e = lat.horizontal(m, n);
            dot(m + 1, n) = dU_dgamma(e) * fd.phi.at(m, n) + eval_U(e, s0) * dot(m, n);
        }
    return fd;
}

FrameField gauge_psi(const FrameField& phi) {
    FrameField out = phi;
    Quaternion g = exp_k(-phi.spectral().gamma() / 2.0);
    for (int n = 0; n < phi.height(); ++n)
        for (int m = 0; m < phi.width(); ++m)
            out.at(m, n) = g * phi.at(m, n);
    return out;
}

} // namespace lawson
