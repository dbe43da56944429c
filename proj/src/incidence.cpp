#include "ffexpand/incidence.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ffexpand/errors.hpp"
#include "ffexpand/parallel.hpp"

namespace ffx {
namespace {

void require_same(const FieldCtx& a, const FieldCtx& b) {
    if (!a.same_field(b)) throw ContextMismatch();
}

Raw eval_poly(const FieldCtx& f, std::span<const Raw> high_first, Raw x) {
    Raw acc = 0;
    for (Raw c : high_first) acc = f.add(f.mul(acc, x), c);
    return acc;
}

std::uint64_t checked_pow(std::uint64_t base, int e) {
    std::uint64_t r = 1;
    for (int i = 0; i < e; ++i) {
        if (__builtin_mul_overflow(r, base, &r)) throw CapExceeded("family size exceeds 64-bit range");
    }
    return r;
}

std::vector<Raw> decode_coeffs(std::uint64_t index, std::uint32_t q, int degree) {
    std::vector<Raw> c(static_cast<std::size_t>(degree) + 1);
    for (std::size_t i = c.size(); i-- > 0;) {
        c[i] = static_cast<Raw>(index % q);
        index /= q;
    }
    return c;
}

unsigned resolve_threads(unsigned requested) { return requested == 0 ? worker_count() : requested; }

}  // namespace

PointSet::PointSet(FieldPtr field, std::vector<Point> points) : field_(std::move(field)), points_(std::move(points)) {
    if (!field_) throw InvalidArgument("point set needs a field");
    for (const auto& p : points_) {
        if (p.x >= field_->order() || p.y >= field_->order()) throw InvalidArgument("point coordinate outside the field");
    }
    std::sort(points_.begin(), points_.end());
    points_.erase(std::unique(points_.begin(), points_.end()), points_.end());
}

bool PointSet::contains(Point p) const { return std::binary_search(points_.begin(), points_.end(), p); }

CurveFamily::CurveFamily(FieldPtr field, int degree, std::vector<std::vector<Raw>> coeffs)
    : field_(std::move(field)), degree_(degree), coeffs_(std::move(coeffs)) {
    if (!field_) throw InvalidArgument("curve family needs a field");
    if (degree_ < 1) throw InvalidArgument("curve degree must be at least 1");
    if (field_->order() <= static_cast<std::uint32_t>(degree_)) {
        throw DomainError("curve degree " + std::to_string(degree_) + " needs q > n, but q = " +
                          std::to_string(field_->order()));
    }
    for (const auto& c : coeffs_) {
        if (c.size() != static_cast<std::size_t>(degree_) + 1) {
            throw InvalidArgument("coefficient vector length " + std::to_string(c.size()) + " does not match degree " +
                                  std::to_string(degree_));
        }
        for (Raw v : c) {
            if (v >= field_->order()) throw InvalidArgument("curve coefficient outside the field");
        }
    }
    std::sort(coeffs_.begin(), coeffs_.end());
    coeffs_.erase(std::unique(coeffs_.begin(), coeffs_.end()), coeffs_.end());
}

Raw CurveFamily::eval(std::size_t i, Raw x) const noexcept { return eval_poly(*field_, coeffs_[i], x); }

std::uint64_t count_incidences(const PointSet& points, const CurveFamily& curves, const CountOptions& opts) {
    require_same(points.field(), curves.field());
    const auto& pts = points.points();
    const std::uint32_t q = points.field().order();
    CountMethod method = opts.method;
    if (method == CountMethod::Auto) method = pts.size() > q ? CountMethod::Bucketed : CountMethod::Naive;
    const unsigned workers = resolve_threads(opts.threads);
    std::vector<std::uint64_t> partial(workers, 0);

    if (method == CountMethod::Naive) {
        parallel_chunks(pts.size(), workers, [&](unsigned w, std::size_t begin, std::size_t end) {
            std::uint64_t local = 0;
            for (std::size_t i = begin; i < end; ++i) {
                for (std::size_t c = 0; c < curves.size(); ++c) local += curves.eval(c, pts[i].x) == pts[i].y;
            }
            partial[w] = local;
        });
    } else {
        // Points are sorted by x, so each abscissa owns a contiguous run; a
        // dense occupancy row per abscissa answers membership in O(1).
        std::vector<Raw> xs;
        std::vector<std::vector<bool>> occupied;
        for (const auto& p : pts) {
            if (xs.empty() || xs.back() != p.x) {
                xs.push_back(p.x);
                occupied.emplace_back(q, false);
            }
            occupied.back()[p.y] = true;
        }
        parallel_chunks(curves.size(), workers, [&](unsigned w, std::size_t begin, std::size_t end) {
            std::uint64_t local = 0;
            for (std::size_t c = begin; c < end; ++c) {
                for (std::size_t i = 0; i < xs.size(); ++i) local += occupied[i][curves.eval(c, xs[i])];
            }
            partial[w] = local;
        });
    }
    return std::accumulate(partial.begin(), partial.end(), std::uint64_t{0});
}

double VinhCheck::deviation() const {
    const double num = static_cast<double>(numerator < 0 ? -numerator : numerator);
    return q == 0 ? 0.0 : num / q;
}

double VinhCheck::bound() const {
    return std::pow(static_cast<double>(q), degree / 2.0) *
           std::sqrt(static_cast<double>(num_points) * static_cast<double>(num_curves));
}

double VinhCheck::ratio() const {
    const double b = bound();
    return b == 0 ? 0.0 : deviation() / b;
}

VinhCheck vinh_deviation(const PointSet& points, const CurveFamily& curves, const CountOptions& opts) {
    VinhCheck out;
    out.incidences = count_incidences(points, curves, opts);
    out.num_points = points.size();
    out.num_curves = curves.size();
    out.q = points.field().order();
    out.degree = curves.degree();

    using U = unsigned __int128;
    const U q = out.q;
    const U pq = U{out.num_points} * out.num_curves;
    out.numerator = static_cast<__int128>(q * out.incidences) - static_cast<__int128>(pq);
    const U mag = static_cast<U>(out.numerator < 0 ? -out.numerator : out.numerator);

    U lhs, rhs = pq;
    bool overflow = __builtin_mul_overflow(mag, mag, &lhs);
    for (int i = 0; i < out.degree + 2 && !overflow; ++i) overflow = __builtin_mul_overflow(rhs, q, &rhs);
    if (overflow) throw CapExceeded("incidence bound comparison exceeds 128-bit range");
    out.satisfied = lhs <= rhs;
    return out;
}

PointSet shear(const PointSet& points, std::span<const Raw> high) {
    const FieldCtx& f = points.field();
    // Append a_1 = a_0 = 0 so Horner gives sum_{i>=2} a_i x^i.
    std::vector<Raw> full(high.begin(), high.end());
    full.push_back(0);
    full.push_back(0);
    std::vector<Point> out;
    out.reserve(points.size());
    for (const auto& p : points.points()) out.push_back({p.x, f.sub(p.y, eval_poly(f, full, p.x))});
    return PointSet(points.field_ptr(), std::move(out));
}

PointSet unshear(const PointSet& points, std::span<const Raw> high) {
    const FieldCtx& f = points.field();
    std::vector<Raw> neg(high.begin(), high.end());
    for (auto& c : neg) c = f.neg(c);
    return shear(points, neg);
}

CurveFamily sheared_lines(const CurveFamily& curves, std::span<const Raw> high) {
    const std::size_t n = static_cast<std::size_t>(curves.degree());
    if (high.size() + 1 != n) {
        throw InvalidArgument("shear class needs " + std::to_string(n - 1) + " coefficients (a_n..a_2)");
    }
    std::vector<std::vector<Raw>> lines;
    for (const auto& c : curves.coeffs()) {
        if (std::equal(high.begin(), high.end(), c.begin())) lines.push_back({c[n - 1], c[n]});
    }
    return CurveFamily(curves.field_ptr(), 1, std::move(lines));
}

std::vector<std::vector<Raw>> shear_classes(const CurveFamily& curves) {
    std::vector<std::vector<Raw>> out;
    const std::size_t n = static_cast<std::size_t>(curves.degree());
    for (const auto& c : curves.coeffs()) {
        std::vector<Raw> h(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(n - 1));
        if (out.empty() || out.back() != h) out.push_back(std::move(h));
    }
    return out;
}

PointSet random_points(const FieldPtr& field, std::uint64_t count, Rng& rng) {
    const std::uint64_t q = field->order();
    std::vector<Point> pts;
    for (std::uint64_t i : rng.sample_distinct(q * q, count)) pts.push_back({static_cast<Raw>(i / q), static_cast<Raw>(i % q)});
    return PointSet(field, std::move(pts));
}

CurveFamily random_curves(const FieldPtr& field, int degree, std::uint64_t count, Rng& rng) {
    if (degree < 1) throw InvalidArgument("curve degree must be at least 1");
    const std::uint64_t total = checked_pow(field->order(), degree + 1);
    std::vector<std::vector<Raw>> coeffs;
    for (std::uint64_t i : rng.sample_distinct(total, count)) coeffs.push_back(decode_coeffs(i, field->order(), degree));
    return CurveFamily(field, degree, std::move(coeffs));
}

PointSet all_points(const FieldPtr& field) {
    const Raw q = field->order();
    std::vector<Point> pts;
    pts.reserve(std::size_t{q} * q);
    for (Raw x = 0; x < q; ++x) {
        for (Raw y = 0; y < q; ++y) pts.push_back({x, y});
    }
    return PointSet(field, std::move(pts));
}

CurveFamily all_curves(const FieldPtr& field, int degree) {
    if (degree < 1) throw InvalidArgument("curve degree must be at least 1");
    const std::uint64_t total = checked_pow(field->order(), degree + 1);
    if (total > (std::uint64_t{1} << 26)) throw CapExceeded("full curve family has " + std::to_string(total) + " members");
    std::vector<std::vector<Raw>> coeffs;
    coeffs.reserve(total);
    for (std::uint64_t i = 0; i < total; ++i) coeffs.push_back(decode_coeffs(i, field->order(), degree));
    return CurveFamily(field, degree, std::move(coeffs));
}

PointSet points_on_curve(const FieldPtr& field, std::span<const Raw> coeffs) {
    std::vector<Point> pts;
    for (Raw x = 0; x < field->order(); ++x) pts.push_back({x, eval_poly(*field, coeffs, x)});
    return PointSet(field, std::move(pts));
}

CurveFamily curves_through_point(const FieldPtr& field, int degree, Point p, std::uint64_t count, Rng& rng) {
    if (degree < 1) throw InvalidArgument("curve degree must be at least 1");
    const std::uint64_t total = checked_pow(field->order(), degree);
    std::vector<std::vector<Raw>> coeffs;
    for (std::uint64_t i : rng.sample_distinct(total, count)) {
        // Coefficients a_n..a_1 from the index, then a_0 = y - sum a_i x^i.
        std::vector<Raw> c = decode_coeffs(i, field->order(), degree - 1);
        c.push_back(0);
        c.back() = field->sub(p.y, eval_poly(*field, c, p.x));
        coeffs.push_back(std::move(c));
    }
    return CurveFamily(field, degree, std::move(coeffs));
}

}  // namespace ffx
