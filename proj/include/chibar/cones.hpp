#pragma once

// Closed convex cones in the plane, Euclidean and metric projections, the
// limiting likelihood-ratio statistic as a difference of squared cone
// distances, and the region decompositions for the two boundary-parameter
// test geometries.
//
// Whitened geometries live in a canonical frame: the whitened image of the
// first parameter axis points along +x, and the image of the second
// (nuisance) axis sits in the upper half-plane at angle arccos(-rho). The
// statistic and all region probabilities are rotation invariant, so this
// fixes the orientation freedom of the whitening map without loss.

#include <array>
#include <string>

#include "chibar/linalg2.hpp"

namespace chibar {

enum class ConeKind { origin, ray, sector, half_plane, full_plane };

class Cone2 {
  public:
    static Cone2 origin();
    static Cone2 ray(Vec2 direction);
    // Counterclockwise from g1 to g2; the opening angle must be in (0, pi).
    static Cone2 sector(Vec2 g1, Vec2 g2);
    static Cone2 half_plane(Vec2 inward_normal);
    static Cone2 full_plane();

    ConeKind kind() const { return kind_; }
    Vec2 g1() const { return g1_; }
    Vec2 g2() const { return g2_; }
    Vec2 normal() const { return n_; }

    bool contains(Vec2 z) const;
    Vec2 project(Vec2 z) const;
    double dist2(Vec2 z) const;

  private:
    Cone2() = default;
    ConeKind kind_ = ConeKind::origin;
    Vec2 g1_, g2_, n_;
};

// Image of a cone under an invertible map: generators map directly, inward
// normals by the inverse transpose.
Cone2 map_cone(const LinearMap2& m, const Cone2& c);

enum class CaseId { case7, case8_correct, case8_selfliang };

std::string to_string(CaseId id);

struct RegionLabel {
    CaseId case_id;
    // case7: 0 denotes the full-sector region (printed "C"), 1..3 the rest;
    // case8: 1..6.
    int index;
};

std::string region_name(const RegionLabel& label);

struct CaseAngles {
    double alpha;
    double gamma;
    // Cleared when the whitened alternative cone's opening drops below a
    // right angle (negative correlation); the chi-bar weight formulas for
    // the nuisance case are only valid when it is set.
    bool alt_cone_obtuse;
};

class CaseGeometry {
  public:
    static CaseGeometry make(CaseId id, double rho);

    CaseId case_id() const { return case_id_; }
    double rho() const { return rho_; }
    bool whitened() const { return true; }
    const Cone2& null_cone() const { return null_; }
    const Cone2& alt_cone() const { return alt_; }
    bool null_in_alt() const { return null_in_alt_; }
    // Unit direction of the whitened null ray (case 8) and its clockwise
    // perpendicular; used by the region rules and closed-form statistics.
    Vec2 null_dir() const { return null_dir_; }
    Vec2 null_perp() const { return null_perp_; }

  private:
    CaseGeometry() = default;
    CaseId case_id_ = CaseId::case7;
    double rho_ = 0.0;
    Cone2 null_ = Cone2::origin();
    Cone2 alt_ = Cone2::origin();
    bool null_in_alt_ = true;
    Vec2 null_dir_, null_perp_;
};

// dist2(z, c0) - dist2(z, c1). Exact zeros when both projections coincide.
double lrs_euclid(const Cone2& c0, const Cone2& c1, Vec2 z);

// The limiting statistic in whitened coordinates. Nonnegative whenever the
// null cone is contained in the alternative cone (true for all built-in
// geometries); tiny negative rounding residue is snapped to zero for
// contained geometries.
double lrs_whitened(const CaseGeometry& geom, Vec2 z_tilde);

// The same statistic in original coordinates: difference of constrained
// minima of (z - t)' I (z - t) over the two cones. Agrees with
// lrs_euclid after whitening both cones and z (metric invariance).
double lrs_quadratic(const SymPD2& info, const Cone2& c0, const Cone2& c1, Vec2 z);

// Region decomposition of the canonical whitened plane. Boundaries are
// assigned to the lowest matching label so classification is total.
RegionLabel classify_region(const CaseGeometry& geom, Vec2 z);

// Closed-form per-region statistic under the half-plane (misidentified)
// alternative, resolved to the frame that reproduces the projection engine:
//   1: |z|^2   2,3: <z,u>^2   4: z1^2 - <z,v>^2   5,6: z1^2
// with v the null-ray direction and u its perpendicular. Defined for
// rho >= 0 (the geometry the published table describes).
double region_statistic_selfliang(const CaseGeometry& geom, Vec2 z, const RegionLabel& label);

// Closed-form statistic for the correct alternative cone, rho >= 0:
//   1: |z|^2   2: <z,u>^2   3,4,5: 0   6: z1^2
double region_statistic_correct(const CaseGeometry& geom, Vec2 z, const RegionLabel& label);

CaseAngles angles(const CaseGeometry& geom);

// The tangent cones in original (theta) coordinates for the two-parameter
// boundary problem: null is {0} (case 7) or the nonnegative second axis
// (case 8); the alternative is the nonnegative quadrant, or the half-plane
// theta2 >= 0 under the misidentified variant.
Cone2 null_cone_original(CaseId id);
Cone2 alt_cone_original(CaseId id);

}  // namespace chibar
