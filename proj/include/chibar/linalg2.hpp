#pragma once

// Exact 2x2 symmetric positive-definite matrix algebra: inversion, closed-form
// spectral decomposition, and the whitening map built from an information
// matrix. Everything here is branch-light closed-form arithmetic so results
// are deterministic and cheap enough for inner Monte Carlo loops.

#include <stdexcept>

namespace chibar {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 v) { return {s * v.x, s * v.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
// z-component of the 3-d cross product; positive when b is counterclockwise of a.
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm2(Vec2 v) { return v.x * v.x + v.y * v.y; }
double norm(Vec2 v);
Vec2 normalized(Vec2 v);  // throws std::invalid_argument on the zero vector

// Symmetric positive-definite 2x2 matrix [[a11, a12], [a12, a22]].
// Construction rejects indefinite and near-degenerate input
// (det <= 1e-12 * a11 * a22); the statistical theory assumes a
// nonsingular information matrix, so borderline cases are an error,
// not something to regularize.
class SymPD2 {
  public:
    SymPD2(double a11, double a12, double a22);

    double a11() const { return a11_; }
    double a12() const { return a12_; }
    double a22() const { return a22_; }
    double det() const { return a11_ * a22_ - a12_ * a12_; }

    Vec2 apply(Vec2 v) const { return {a11_ * v.x + a12_ * v.y, a12_ * v.x + a22_ * v.y}; }
    // v' M v
    double quad(Vec2 v) const { return dot(v, apply(v)); }

  private:
    double a11_, a12_, a22_;
};

// Eigenvalues sorted descending, unit eigenvectors with a canonical sign
// (first nonzero component positive) so the decomposition is deterministic.
struct SpectralDecomp2 {
    double lambda1 = 0.0;  // largest
    double lambda2 = 0.0;
    Vec2 v1;
    Vec2 v2;
};

// General invertible 2x2 map [[m11, m12], [m21, m22]].
class LinearMap2 {
  public:
    LinearMap2(double m11, double m12, double m21, double m22);

    double m11() const { return m11_; }
    double m12() const { return m12_; }
    double m21() const { return m21_; }
    double m22() const { return m22_; }

    Vec2 apply(Vec2 v) const { return {m11_ * v.x + m12_ * v.y, m21_ * v.x + m22_ * v.y}; }
    double det() const { return m11_ * m22_ - m12_ * m21_; }
    LinearMap2 inverse() const;
    LinearMap2 transpose() const { return {m11_, m21_, m12_, m22_}; }
    // (M^-1)' v, the map normals transform under.
    Vec2 apply_inverse_transpose(Vec2 v) const;

  private:
    double m11_, m12_, m21_, m22_;
};

SymPD2 invert_spd2(const SymPD2& m);

// Correlation of Sigma = I^-1 read directly off the information matrix:
// rho = -I12 / sqrt(I11 * I22).
double correlation_from_information(const SymPD2& info);

// Closed-form (trace/determinant) eigendecomposition; P Lambda P' rebuilds m.
SpectralDecomp2 spectral_decomp(const SymPD2& m);

// Whitening map M = Lambda^(1/2) P' built from the decomposition of `info`.
// For Z with covariance info^-1, M Z has identity covariance.
LinearMap2 whitening_map(const SymPD2& info);

}  // namespace chibar
