#include "chibar/cones.hpp"

#include <cmath>
#include <stdexcept>

namespace chibar {

namespace {

// Shared by ray and sector projections so that coinciding projections of the
// null and alternative cones are computed by the same expression and cancel
// to an exact zero in the statistic.
Vec2 ray_project(Vec2 g, Vec2 z) {
    const double t = dot(z, g);
    return t > 0.0 ? t * g : Vec2{0.0, 0.0};
}

bool same_point(Vec2 a, Vec2 b) { return a.x == b.x && a.y == b.y; }

// Metric projection of z onto the ray through g, as a point.
Vec2 metric_ray_project(const SymPD2& m, Vec2 g, Vec2 z) {
    const double t = dot(g, m.apply(z)) / m.quad(g);
    return t > 0.0 ? t * g : Vec2{0.0, 0.0};
}

bool cone_contains_cone(const Cone2& outer, const Cone2& inner) {
    switch (inner.kind()) {
        case ConeKind::origin: return true;
        case ConeKind::ray: return outer.contains(inner.g1());
        case ConeKind::sector: return outer.contains(inner.g1()) && outer.contains(inner.g2());
        case ConeKind::half_plane:
            return outer.kind() == ConeKind::full_plane ||
                   (outer.kind() == ConeKind::half_plane && same_point(outer.normal(), inner.normal()));
        case ConeKind::full_plane: return outer.kind() == ConeKind::full_plane;
    }
    return false;
}

}  // namespace

Cone2 Cone2::origin() { return Cone2{}; }

Cone2 Cone2::ray(Vec2 direction) {
    Cone2 c;
    c.kind_ = ConeKind::ray;
    c.g1_ = normalized(direction);
    return c;
}

Cone2 Cone2::sector(Vec2 g1, Vec2 g2) {
    Cone2 c;
    c.kind_ = ConeKind::sector;
    c.g1_ = normalized(g1);
    c.g2_ = normalized(g2);
    if (!(cross(c.g1_, c.g2_) > 0.0))
        throw std::invalid_argument("Cone2::sector: generators must span an angle in (0, pi), counterclockwise");
    return c;
}

Cone2 Cone2::half_plane(Vec2 inward_normal) {
    Cone2 c;
    c.kind_ = ConeKind::half_plane;
    c.n_ = normalized(inward_normal);
    return c;
}

Cone2 Cone2::full_plane() {
    Cone2 c;
    c.kind_ = ConeKind::full_plane;
    return c;
}

bool Cone2::contains(Vec2 z) const {
    switch (kind_) {
        case ConeKind::origin: return z.x == 0.0 && z.y == 0.0;
        case ConeKind::ray: return cross(g1_, z) == 0.0 && dot(g1_, z) >= 0.0;
        case ConeKind::sector: {
            const double d = cross(g1_, g2_);
            return cross(z, g2_) / d >= 0.0 && cross(g1_, z) / d >= 0.0;
        }
        case ConeKind::half_plane: return dot(n_, z) >= 0.0;
        case ConeKind::full_plane: return true;
    }
    return false;
}

Vec2 Cone2::project(Vec2 z) const {
    switch (kind_) {
        case ConeKind::origin: return {0.0, 0.0};
        case ConeKind::ray: return ray_project(g1_, z);
        case ConeKind::sector: {
            if (contains(z)) return z;
            const Vec2 p1 = ray_project(g1_, z);
            const Vec2 p2 = ray_project(g2_, z);
            return norm2(z - p1) <= norm2(z - p2) ? p1 : p2;
        }
        case ConeKind::half_plane: {
            const double s = dot(n_, z);
            return s >= 0.0 ? z : z - s * n_;
        }
        case ConeKind::full_plane: return z;
    }
    return {0.0, 0.0};
}

double Cone2::dist2(Vec2 z) const { return norm2(z - project(z)); }

Cone2 map_cone(const LinearMap2& m, const Cone2& c) {
    switch (c.kind()) {
        case ConeKind::origin: return Cone2::origin();
        case ConeKind::ray: return Cone2::ray(m.apply(c.g1()));
        case ConeKind::sector: {
            const Vec2 a = m.apply(c.g1());
            const Vec2 b = m.apply(c.g2());
            // An orientation-reversing map flips the counterclockwise order.
            return m.det() > 0.0 ? Cone2::sector(a, b) : Cone2::sector(b, a);
        }
        case ConeKind::half_plane: return Cone2::half_plane(m.apply_inverse_transpose(c.normal()));
        case ConeKind::full_plane: return Cone2::full_plane();
    }
    return Cone2::origin();
}

std::string to_string(CaseId id) {
    switch (id) {
        case CaseId::case7: return "case7";
        case CaseId::case8_correct: return "case8_correct";
        case CaseId::case8_selfliang: return "case8_selfliang";
    }
    return "?";
}

std::string region_name(const RegionLabel& label) {
    if (label.case_id == CaseId::case7 && label.index == 0) return "C";
    return std::to_string(label.index);
}

CaseGeometry CaseGeometry::make(CaseId id, double rho) {
    if (!(rho > -1.0 && rho < 1.0))
        throw std::invalid_argument("CaseGeometry: rho must lie in (-1, 1); the cones degenerate at +-1");
    CaseGeometry g;
    g.case_id_ = id;
    g.rho_ = rho;

    // Whitened images of the two parameter axes meet at arccos(-rho).
    const double opening = std::acos(-rho);
    const Vec2 e1{1.0, 0.0};
    const Vec2 axis2{std::cos(opening), std::sin(opening)};

    g.null_dir_ = axis2;
    g.null_perp_ = {axis2.y, -axis2.x};

    switch (id) {
        case CaseId::case7:
            g.null_ = Cone2::origin();
            g.alt_ = Cone2::sector(e1, axis2);
            break;
        case CaseId::case8_correct:
            g.null_ = Cone2::ray(axis2);
            g.alt_ = Cone2::sector(e1, axis2);
            break;
        case CaseId::case8_selfliang:
            g.null_ = Cone2::ray(axis2);
            g.alt_ = Cone2::half_plane({0.0, 1.0});
            break;
    }
    g.null_in_alt_ = cone_contains_cone(g.alt_, g.null_);
    return g;
}

double lrs_euclid(const Cone2& c0, const Cone2& c1, Vec2 z) {
    const Vec2 p0 = c0.project(z);
    const Vec2 p1 = c1.project(z);
    if (same_point(p0, p1)) return 0.0;
    return norm2(z - p0) - norm2(z - p1);
}

double lrs_whitened(const CaseGeometry& geom, Vec2 z_tilde) {
    double val = lrs_euclid(geom.null_cone(), geom.alt_cone(), z_tilde);
    if (val < 0.0 && geom.null_in_alt()) {
        const double tol = 1e-12 * (1.0 + norm2(z_tilde));
        if (val > -tol) return 0.0;
        if (geom.case_id() != CaseId::case8_selfliang)
            throw std::logic_error("lrs_whitened: negative statistic under a nested cone pair");
    }
    return val;
}

double lrs_quadratic(const SymPD2& info, const Cone2& c0, const Cone2& c1, Vec2 z) {
    auto project = [&](const Cone2& c) -> Vec2 {
        switch (c.kind()) {
            case ConeKind::origin: return {0.0, 0.0};
            case ConeKind::ray: return metric_ray_project(info, c.g1(), z);
            case ConeKind::sector: {
                if (c.contains(z)) return z;
                const Vec2 p1 = metric_ray_project(info, c.g1(), z);
                const Vec2 p2 = metric_ray_project(info, c.g2(), z);
                return info.quad(z - p1) <= info.quad(z - p2) ? p1 : p2;
            }
            case ConeKind::half_plane: {
                const Vec2 n = c.normal();
                if (dot(n, z) >= 0.0) return z;
                // Metric foot on the boundary line {x . n = 0}.
                const SymPD2 inv = invert_spd2(info);
                const double lambda = -dot(n, z) / inv.quad(n);
                return z + lambda * inv.apply(n);
            }
            case ConeKind::full_plane: return z;
        }
        return {0.0, 0.0};
    };

    const Vec2 p0 = project(c0);
    const Vec2 p1 = project(c1);
    if (same_point(p0, p1)) return 0.0;
    double val = info.quad(z - p0) - info.quad(z - p1);
    if (val < 0.0 && cone_contains_cone(c1, c0)) {
        const double tol = 1e-12 * (1.0 + info.quad(z));
        if (val > -tol) return 0.0;
        throw std::logic_error("lrs_quadratic: negative statistic under a nested cone pair");
    }
    return val;
}

RegionLabel classify_region(const CaseGeometry& geom, Vec2 z) {
    if (geom.case_id() == CaseId::case7) {
        const Vec2 g1 = geom.alt_cone().g1();
        const Vec2 g2 = geom.alt_cone().g2();
        // Test order 1, 2, 3, then the full sector, so shared boundaries go
        // to the lowest label.
        if (dot(z, g1) >= 0.0 && cross(g1, z) <= 0.0) return {CaseId::case7, 1};
        if (dot(z, g1) <= 0.0 && dot(z, g2) <= 0.0) return {CaseId::case7, 2};
        if (dot(z, g2) >= 0.0 && cross(g2, z) >= 0.0) return {CaseId::case7, 3};
        if (geom.alt_cone().contains(z)) return {CaseId::case7, 0};
        throw std::logic_error("classify_region: case 7 rules did not cover the point");
    }

    const Vec2 v = geom.null_dir();
    const Vec2 u = geom.null_perp();
    const double zv = dot(z, v);
    const double zu = dot(z, u);
    if (z.y >= 0.0 && z.x >= 0.0 && zv <= 0.0) return {geom.case_id(), 1};
    if (z.y >= 0.0 && zu >= 0.0 && zv >= 0.0) return {geom.case_id(), 2};
    if (z.y >= 0.0 && zu <= 0.0) return {geom.case_id(), 3};
    if (z.x <= 0.0 && z.y <= 0.0 && zv >= 0.0) return {geom.case_id(), 4};
    if (z.x <= 0.0 && z.y <= 0.0 && zv <= 0.0) return {geom.case_id(), 5};
    if (z.x >= 0.0 && z.y <= 0.0) return {geom.case_id(), 6};
    throw std::logic_error("classify_region: case 8 rules did not cover the point");
}

double region_statistic_selfliang(const CaseGeometry& geom, Vec2 z, const RegionLabel& label) {
    if (geom.case_id() != CaseId::case8_selfliang)
        throw std::invalid_argument("region_statistic_selfliang: wrong geometry");
    if (geom.rho() < 0.0)
        throw std::domain_error(
            "region_statistic_selfliang: the closed-form region table assumes nonnegative "
            "correlation; use the projection engine directly");
    const double zu = dot(z, geom.null_perp());
    const double zv = dot(z, geom.null_dir());
    switch (label.index) {
        case 1: return norm2(z);
        case 2:
        case 3: return zu * zu;
        case 4: return z.x * z.x - zv * zv;
        case 5:
        case 6: return z.x * z.x;
        default: throw std::invalid_argument("region_statistic_selfliang: bad region index");
    }
}

double region_statistic_correct(const CaseGeometry& geom, Vec2 z, const RegionLabel& label) {
    if (geom.case_id() != CaseId::case8_correct)
        throw std::invalid_argument("region_statistic_correct: wrong geometry");
    if (geom.rho() < 0.0)
        throw std::domain_error(
            "region_statistic_correct: the closed-form region table assumes nonnegative "
            "correlation; use the projection engine directly");
    const double zu = dot(z, geom.null_perp());
    switch (label.index) {
        case 1: return norm2(z);
        case 2: return zu * zu;
        case 3:
        case 4:
        case 5: return 0.0;
        case 6: return z.x * z.x;
        default: throw std::invalid_argument("region_statistic_correct: bad region index");
    }
}

CaseAngles angles(const CaseGeometry& geom) {
    CaseAngles a{};
    a.gamma = std::asin(geom.rho());
    if (geom.case_id() == CaseId::case7)
        a.alpha = std::acos(-geom.rho());
    else
        a.alpha = 0.5 * M_PI - a.gamma;
    a.alt_cone_obtuse = geom.rho() >= 0.0;
    return a;
}

Cone2 null_cone_original(CaseId id) {
    if (id == CaseId::case7) return Cone2::origin();
    return Cone2::ray({0.0, 1.0});
}

Cone2 alt_cone_original(CaseId id) {
    if (id == CaseId::case8_selfliang) return Cone2::half_plane({0.0, 1.0});
    return Cone2::sector({1.0, 0.0}, {0.0, 1.0});
}

}  // namespace chibar
