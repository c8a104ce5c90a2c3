#ifndef LAWSON_FRAMES_HPP
#define LAWSON_FRAMES_HPP

#include "lawson/lax.hpp"

namespace lawson {

/// Vertex frame Phi integrated from a LatticeLax at one spectral point,
/// base gauge Phi(0,0) = 1.
class FrameField {
public:
    FrameField(int width, int height, SpectralPoint s);

    int width() const { return m_; }
    int height() const { return n_; }
    const SpectralPoint& spectral() const { return s_; }

    Quaternion& at(int m, int n);
    const Quaternion& at(int m, int n) const;

private:
    int m_, n_;
    SpectralPoint s_;
    std::vector<Quaternion> phi_;
};

/// Frame at gamma = 0 together with its gamma-derivative field,
/// Phidot(0,0) = 0.
struct FrameWithDerivative {
    FrameField phi;
    std::vector<Quaternion> phidot; // row-major, same layout as phi

    const Quaternion& dot_at(int m, int n) const {
        return phidot[static_cast<size_t>(n) * phi.width() + m];
    }
};

FrameField integrate_frame(const LatticeLax& lat, SpectralPoint s);

FrameWithDerivative integrate_frame_with_derivative(const LatticeLax& lat);

/// Left multiplication by exp(-gamma/2 k) = diag(e^{i gamma/2}, e^{-i gamma/2})
/// pointwise, gamma taken from the field's spectral point.
FrameField gauge_psi(const FrameField& phi);

} // namespace lawson

#endif
