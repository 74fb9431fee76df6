#include "pvilab/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace pvi {

Segment Segment::line(cplx from, cplx to) {
    Segment s;
    s.kind = Kind::Line;
    s.z0 = from;
    s.z1 = to;
    return s;
}

Segment Segment::arc(cplx center, double radius, double theta0, double theta1) {
    Segment s;
    s.kind = Kind::Arc;
    s.center = center;
    s.radius = radius;
    s.theta0 = theta0;
    s.theta1 = theta1;
    return s;
}

cplx Segment::point(double s) const {
    if (kind == Kind::Line) return z0 + s * (z1 - z0);
    double th = theta0 + s * (theta1 - theta0);
    return center + radius * std::exp(cplx(0.0, th));
}

cplx Segment::velocity(double s) const {
    if (kind == Kind::Line) return z1 - z0;
    double th = theta0 + s * (theta1 - theta0);
    return cplx(0.0, theta1 - theta0) * radius * std::exp(cplx(0.0, th));
}

double Segment::length() const {
    if (kind == Kind::Line) return std::abs(z1 - z0);
    return radius * std::abs(theta1 - theta0);
}

double Segment::distance_to(cplx p) const {
    if (kind == Kind::Line) {
        cplx d = z1 - z0;
        double len2 = std::norm(d);
        if (len2 == 0.0) return std::abs(p - z0);
        double t = std::clamp(((p - z0) * std::conj(d)).real() / len2, 0.0, 1.0);
        return std::abs(p - (z0 + t * d));
    }
    // Arc: exact if the angle of p-center falls inside the swept sector.
    double lo = std::min(theta0, theta1), hi = std::max(theta0, theta1);
    double ang = std::arg(p - center);
    for (double a = ang - 4.0 * kPi; a <= ang + 4.0 * kPi + 1e-12; a += 2.0 * kPi) {
        if (a >= lo && a <= hi) return std::abs(std::abs(p - center) - radius);
    }
    return std::min(std::abs(p - start()), std::abs(p - end()));
}

Segment Segment::reversed() const {
    if (kind == Kind::Line) return line(z1, z0);
    return arc(center, radius, theta1, theta0);
}

Path::Path(std::vector<Segment> segments) : segments_(std::move(segments)) {
    for (size_t i = 1; i < segments_.size(); ++i) {
        double gap = std::abs(segments_[i].start() - segments_[i - 1].end());
        double scale = std::max(1.0, segments_[i].length());
        if (gap > 1e-9 * scale) throw GeometryError("path: segments are not endpoint-continuous");
    }
}

cplx Path::start() const {
    if (segments_.empty()) throw GeometryError("path: empty");
    return segments_.front().start();
}

cplx Path::end() const {
    if (segments_.empty()) throw GeometryError("path: empty");
    return segments_.back().end();
}

bool Path::is_closed(double tol) const {
    return !segments_.empty() && std::abs(start() - end()) <= tol * std::max(1.0, length());
}

double Path::length() const {
    double l = 0.0;
    for (const auto& s : segments_) l += s.length();
    return l;
}

double Path::distance_to(cplx p) const {
    double d = std::numeric_limits<double>::infinity();
    for (const auto& s : segments_) d = std::min(d, s.distance_to(p));
    return d;
}

Path Path::reversed() const {
    std::vector<Segment> rev;
    rev.reserve(segments_.size());
    for (auto it = segments_.rbegin(); it != segments_.rend(); ++it)
        rev.push_back(it->reversed());
    return Path(std::move(rev));
}

Path& Path::append(const Segment& seg) {
    if (!segments_.empty()) {
        double gap = std::abs(seg.start() - segments_.back().end());
        if (gap > 1e-9 * std::max(1.0, seg.length()))
            throw GeometryError("path: appended segment does not continue the path");
    }
    segments_.push_back(seg);
    return *this;
}

Path& Path::append(const Path& other) {
    for (const auto& s : other.segments()) append(s);
    return *this;
}

int Path::winding_number(cplx p) const {
    double total = 0.0;
    for (const auto& seg : segments_) {
        int n = 16;
        double accum;
        for (;;) {
            accum = 0.0;
            bool ok = true;
            cplx prev = seg.point(0.0) - p;
            for (int k = 1; k <= n; ++k) {
                cplx cur = seg.point(static_cast<double>(k) / n) - p;
                double dphi = std::arg(cur / prev);
                if (std::abs(dphi) > 0.5 * kPi) {
                    ok = false;
                    break;
                }
                accum += dphi;
                prev = cur;
            }
            if (ok) break;
            n *= 2;
            if (n > (1 << 16)) throw GeometryError("winding: path passes through the point");
        }
        total += accum;
    }
    double w = total / (2.0 * kPi);
    double nearest = std::round(w);
    if (std::abs(w - nearest) > 1e-6) throw GeometryError("winding: non-integer argument sum (open path?)");
    return static_cast<int>(nearest);
}

void Path::check_clearance(const std::vector<cplx>& punctures, double radius) const {
    for (cplx q : punctures) {
        if (distance_to(q) < radius * (1.0 - 1e-9))
            throw GeometryError("path: segment enters the exclusion disk of a puncture");
    }
}

Path concat(const Path& a, const Path& b) {
    Path p = a;
    p.append(b);
    return p;
}

Loop Loop::traversed_twice() const {
    Loop l;
    l.path = concat(path, path);
    l.basepoint = basepoint;
    l.winding.reserve(winding.size());
    for (int w : winding) l.winding.push_back(2 * w);
    return l;
}

Path segment_with_detours(cplx from, cplx to, const std::vector<cplx>& avoid,
                          double clearance) {
    struct Hit {
        double t;       // projection parameter of the point onto the line
        double span;    // half-chord in parameter units
        cplx q;
        double r;       // detour radius for this point
        double side;    // sign of the perpendicular offset (+ = left of travel)
    };
    cplx d = to - from;
    double len = std::abs(d);
    if (len == 0.0) throw GeometryError("segment_with_detours: zero-length segment");
    cplx u = d / len;

    std::vector<Hit> hits;
    for (cplx q : avoid) {
        cplx rel = (q - from) / u;  // rotate so travel is along +x
        double t = rel.real() / len;
        double off = rel.imag();
        if (std::abs(off) >= clearance || t <= 0.0 || t >= 1.0) continue;
        // Detour radius: as generous as the endpoints and the other avoided
        // points allow; a sliver of room still works (adaptive quadrature
        // absorbs tight arcs), truly no room is a geometry error.
        double hi = 0.45 * std::min(std::abs(from - q), std::abs(to - q));
        for (cplx other : avoid)
            if (std::abs(other - q) > 0.0) hi = std::min(hi, 0.3 * std::abs(other - q));
        if (hi <= std::abs(off) || hi < 0.02 * clearance)
            throw GeometryError("segment_with_detours: no room to pass the point");
        double r = hi;
        double span = std::sqrt(r * r - off * off) / len;
        if (t + span <= 0.0 || t - span >= 1.0) continue;
        if (t - span < 0.0 || t + span > 1.0)
            throw GeometryError("segment_with_detours: endpoint inside a clearance disk");
        double side = off > 0.0 ? 1.0 : (off < 0.0 ? -1.0 : 1.0);
        hits.push_back({t, span, q, r, side});
    }
    std::sort(hits.begin(), hits.end(), [](const Hit& a, const Hit& b) { return a.t < b.t; });
    for (size_t i = 1; i < hits.size(); ++i)
        if (hits[i].t - hits[i].span < hits[i - 1].t + hits[i - 1].span)
            throw GeometryError("segment_with_detours: overlapping clearance disks");

    Path path;
    cplx cursor = from;
    for (const Hit& h : hits) {
        cplx p_in = from + (h.t - h.span) * d;
        cplx p_out = from + (h.t + h.span) * d;
        if (std::abs(p_in - cursor) > 0.0) path.append(Segment::line(cursor, p_in));
        // Bump around q on the side opposite its offset (right of travel on a tie):
        // of the two arcs joining p_in to p_out, take the one whose midpoint
        // lies across the travel line from q.
        double a_in = std::arg(p_in - h.q);
        double a_out = std::arg(p_out - h.q);
        double c1 = std::remainder(a_out - a_in, 2.0 * kPi);
        double c2 = c1 > 0.0 ? c1 - 2.0 * kPi : c1 + 2.0 * kPi;
        auto mid_offset = [&](double c) {
            cplx mid = h.q + h.r * std::exp(cplx(0.0, a_in + 0.5 * c));
            return (std::conj(u) * (mid - from)).imag();
        };
        double delta = (mid_offset(c1) * h.side < 0.0) ? c1 : c2;
        path.append(Segment::arc(h.q, h.r, a_in, a_in + delta));
        cursor = p_out;
    }
    if (std::abs(to - cursor) > 0.0 || path.empty()) path.append(Segment::line(cursor, to));
    return path;
}

Loop build_puncture_loop(const std::vector<cplx>& punctures, int index, cplx basepoint,
                         double radius) {
    if (index < 0 || index >= static_cast<int>(punctures.size()))
        throw GeometryError("build_puncture_loop: bad puncture index");
    if (punctures.size() >= 2) {
        double minpair = min_pairwise_distance(punctures);
        if (!(radius < 0.5 * minpair))
            throw GeometryError("build_puncture_loop: radius too large for puncture layout");
    }
    for (cplx q : punctures)
        if (std::abs(basepoint - q) <= radius)
            throw GeometryError("build_puncture_loop: basepoint inside an exclusion disk");

    cplx target = punctures[index];
    std::vector<cplx> others;
    for (int i = 0; i < static_cast<int>(punctures.size()); ++i)
        if (i != index) others.push_back(punctures[i]);

    cplx dir = (basepoint - target) / std::abs(basepoint - target);
    cplx entry = target + radius * dir;
    Path spoke = segment_with_detours(basepoint, entry, others, radius);

    double th = std::arg(dir);
    Path circle;
    for (int q = 0; q < 4; ++q)
        circle.append(Segment::arc(target, radius, th + q * kPi / 2.0, th + (q + 1) * kPi / 2.0));

    Loop loop;
    loop.path = spoke;
    loop.path.append(circle);
    loop.path.append(spoke.reversed());
    loop.basepoint = basepoint;
    for (int i = 0; i < static_cast<int>(punctures.size()); ++i) {
        int w = loop.path.winding_number(punctures[i]);
        int expect = (i == index) ? 1 : 0;
        if (w != expect) throw GeometryError("build_puncture_loop: winding check failed");
        loop.winding.push_back(w);
    }
    return loop;
}

Loop compose_loops(const Loop& first, const Loop& second) {
    if (std::abs(first.basepoint - second.basepoint) > 1e-12)
        throw GeometryError("compose_loops: basepoints differ");
    Loop l;
    l.path = concat(first.path, second.path);
    l.basepoint = first.basepoint;
    l.winding.resize(std::max(first.winding.size(), second.winding.size()), 0);
    for (size_t i = 0; i < first.winding.size(); ++i) l.winding[i] += first.winding[i];
    for (size_t i = 0; i < second.winding.size(); ++i) l.winding[i] += second.winding[i];
    return l;
}

Loop reverse_loop(const Loop& loop) {
    Loop l;
    l.path = loop.path.reversed();
    l.basepoint = loop.basepoint;
    l.winding.reserve(loop.winding.size());
    for (int w : loop.winding) l.winding.push_back(-w);
    return l;
}

double min_pairwise_distance(const std::vector<cplx>& points) {
    double d = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < points.size(); ++i)
        for (size_t j = i + 1; j < points.size(); ++j)
            d = std::min(d, std::abs(points[i] - points[j]));
    return d;
}

}  // namespace pvi
