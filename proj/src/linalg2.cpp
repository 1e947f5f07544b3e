#include "chibar/linalg2.hpp"

#include <cmath>

namespace chibar {

namespace {

constexpr double kDegeneracyTol = 1e-12;

// Flip so the first nonzero component is positive.
Vec2 canonical_sign(Vec2 v) {
    if (v.x != 0.0) return v.x > 0.0 ? v : -1.0 * v;
    return v.y >= 0.0 ? v : -1.0 * v;
}

}  // namespace

double norm(Vec2 v) { return std::hypot(v.x, v.y); }

Vec2 normalized(Vec2 v) {
    const double n = norm(v);
    if (n == 0.0) throw std::invalid_argument("cannot normalize the zero vector");
    return {v.x / n, v.y / n};
}

SymPD2::SymPD2(double a11, double a12, double a22) : a11_(a11), a12_(a12), a22_(a22) {
    if (!(std::isfinite(a11) && std::isfinite(a12) && std::isfinite(a22)))
        throw std::invalid_argument("SymPD2: entries must be finite");
    if (!(a11 > 0.0) || !(a22 > 0.0))
        throw std::invalid_argument("SymPD2: diagonal entries must be positive");
    if (!(a11 * a22 - a12 * a12 > kDegeneracyTol * a11 * a22))
        throw std::invalid_argument("SymPD2: matrix is not (safely) positive definite");
}

LinearMap2::LinearMap2(double m11, double m12, double m21, double m22)
    : m11_(m11), m12_(m12), m21_(m21), m22_(m22) {
    if (det() == 0.0) throw std::invalid_argument("LinearMap2: singular matrix");
}

LinearMap2 LinearMap2::inverse() const {
    const double d = det();
    return {m22_ / d, -m12_ / d, -m21_ / d, m11_ / d};
}

Vec2 LinearMap2::apply_inverse_transpose(Vec2 v) const {
    const double d = det();
    // (M^-1)' = [[m22, -m21], [-m12, m11]] / det
    return {(m22_ * v.x - m21_ * v.y) / d, (-m12_ * v.x + m11_ * v.y) / d};
}

SymPD2 invert_spd2(const SymPD2& m) {
    const double d = m.det();
    return {m.a22() / d, -m.a12() / d, m.a11() / d};
}

double correlation_from_information(const SymPD2& info) {
    return -info.a12() / std::sqrt(info.a11() * info.a22());
}

SpectralDecomp2 spectral_decomp(const SymPD2& m) {
    const double half_trace = 0.5 * (m.a11() + m.a22());
    const double half_diff = 0.5 * (m.a11() - m.a22());
    const double r = std::hypot(half_diff, m.a12());

    SpectralDecomp2 out;
    out.lambda1 = half_trace + r;
    out.lambda2 = half_trace - r;

    if (m.a12() == 0.0 && half_diff == 0.0) {
        out.v1 = {1.0, 0.0};
        out.v2 = {0.0, 1.0};
        return out;
    }

    // Two algebraically equivalent eigenvector candidates for lambda1;
    // pick the one with the larger norm to stay away from cancellation.
    const Vec2 cand1{m.a12(), out.lambda1 - m.a11()};
    const Vec2 cand2{out.lambda1 - m.a22(), m.a12()};
    Vec2 v1 = norm2(cand1) >= norm2(cand2) ? cand1 : cand2;
    v1 = canonical_sign(normalized(v1));
    out.v1 = v1;
    out.v2 = canonical_sign(Vec2{-v1.y, v1.x});
    return out;
}

LinearMap2 whitening_map(const SymPD2& info) {
    const SpectralDecomp2 d = spectral_decomp(info);
    const double s1 = std::sqrt(d.lambda1);
    const double s2 = std::sqrt(d.lambda2);
    // Rows are sqrt(lambda_i) * v_i'.
    return {s1 * d.v1.x, s1 * d.v1.y, s2 * d.v2.x, s2 * d.v2.y};
}

}  // namespace chibar
