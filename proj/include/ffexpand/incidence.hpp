#pragma once

// Points of F_q^2, families of polynomial graphs y = a_n x^n + ... + a_0, and
// incidence counts between them.

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ffexpand/gf.hpp"
#include "ffexpand/rng.hpp"

namespace ffx {

struct Point {
    Raw x = 0, y = 0;
    auto operator<=>(const Point&) const = default;
};

/// A finite set of points, stored sorted by (x, y) without duplicates.
class PointSet {
public:
    /// Duplicates are dropped; coordinates must be reduced elements of the field.
    PointSet(FieldPtr field, std::vector<Point> points);

    const FieldCtx& field() const noexcept { return *field_; }
    const FieldPtr& field_ptr() const noexcept { return field_; }
    const std::vector<Point>& points() const noexcept { return points_; }
    std::size_t size() const noexcept { return points_.size(); }
    bool contains(Point p) const;

    bool operator==(const PointSet& o) const { return field_->same_field(*o.field_) && points_ == o.points_; }

private:
    FieldPtr field_;
    std::vector<Point> points_;
};

/// Graphs of polynomials of degree <= n. Each member is a coefficient vector
/// (a_n, ..., a_0); q > n makes the vector recoverable from the graph.
class CurveFamily {
public:
    /// Throws DomainError when q <= n; duplicates are dropped.
    CurveFamily(FieldPtr field, int degree, std::vector<std::vector<Raw>> coeffs);

    const FieldCtx& field() const noexcept { return *field_; }
    const FieldPtr& field_ptr() const noexcept { return field_; }
    int degree() const noexcept { return degree_; }
    const std::vector<std::vector<Raw>>& coeffs() const noexcept { return coeffs_; }
    std::size_t size() const noexcept { return coeffs_.size(); }

    /// Horner evaluation of member i at x.
    Raw eval(std::size_t i, Raw x) const noexcept;

    bool operator==(const CurveFamily& o) const {
        return field_->same_field(*o.field_) && degree_ == o.degree_ && coeffs_ == o.coeffs_;
    }

private:
    FieldPtr field_;
    int degree_;
    std::vector<std::vector<Raw>> coeffs_;
};

enum class CountMethod { Auto, Naive, Bucketed };

struct CountOptions {
    CountMethod method = CountMethod::Auto;
    /// 0 means worker_count().
    unsigned threads = 0;
};

/// Number of pairs (point, curve) with the point on the curve.
///
/// Naive runs the double loop with Horner evaluation. Bucketed groups the
/// points by abscissa and evaluates each curve once per occupied abscissa,
/// which wins when |P| exceeds q. Auto picks between them.
std::uint64_t count_incidences(const PointSet& points, const CurveFamily& curves, const CountOptions& opts = {});

/// Exact deviation |I - |P||Q|/q| and the bound q^{n/2} sqrt(|P||Q|).
struct VinhCheck {
    std::uint64_t incidences = 0;
    std::uint64_t num_points = 0;
    std::uint64_t num_curves = 0;
    std::uint32_t q = 0;
    int degree = 0;
    /// q*I - |P||Q|; the deviation is |numerator| / q.
    __int128 numerator = 0;
    bool satisfied = false;

    double deviation() const;
    double bound() const;
    /// deviation / bound, 0 when either set is empty.
    double ratio() const;
};

/// satisfied is decided in integers: (q I - |P||Q|)^2 <= q^{n+2} |P||Q|.
/// Throws CapExceeded if the squared comparison leaves 128-bit range.
VinhCheck vinh_deviation(const PointSet& points, const CurveFamily& curves, const CountOptions& opts = {});

/// Image under (x, y) -> (x, y - a_n x^n - ... - a_2 x^2); `high` is (a_n, ..., a_2).
PointSet shear(const PointSet& points, std::span<const Raw> high);
/// Inverse of shear with the same coefficients.
PointSet unshear(const PointSet& points, std::span<const Raw> high);

/// Members of `curves` whose coefficients (a_n, ..., a_2) equal `high`, as
/// lines y = a_1 x + a_0. Incidences with P equal those of the lines with shear(P, high).
CurveFamily sheared_lines(const CurveFamily& curves, std::span<const Raw> high);

/// Distinct values of (a_n, ..., a_2) present in the family, in sorted order.
std::vector<std::vector<Raw>> shear_classes(const CurveFamily& curves);

// Instance generators --------------------------------------------------------

/// Index i in [0, q^2) <-> point (i / q, i % q).
PointSet random_points(const FieldPtr& field, std::uint64_t count, Rng& rng);
/// Uniform distinct coefficient vectors; count is clipped to q^{n+1}.
CurveFamily random_curves(const FieldPtr& field, int degree, std::uint64_t count, Rng& rng);
PointSet all_points(const FieldPtr& field);
CurveFamily all_curves(const FieldPtr& field, int degree);
/// The q points of the graph of one curve.
PointSet points_on_curve(const FieldPtr& field, std::span<const Raw> coeffs);
/// Up to `count` distinct curves of degree <= n through p (a_n..a_1 random, a_0 solved).
CurveFamily curves_through_point(const FieldPtr& field, int degree, Point p, std::uint64_t count, Rng& rng);

}  // namespace ffx
