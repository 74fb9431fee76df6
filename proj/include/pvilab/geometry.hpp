#pragma once

#include <map>
#include <vector>

#include "pvilab/linalg.hpp"

namespace pvi {

// One smooth oriented arc, parametrized over s in [0,1].
struct Segment {
    enum class Kind { Line, Arc };
    Kind kind = Kind::Line;

    // Line: z0 -> z1.
    cplx z0, z1;
    // Arc: center + radius * exp(i theta(s)), theta = theta0 + s*(theta1-theta0).
    cplx center;
    double radius = 0.0;
    double theta0 = 0.0, theta1 = 0.0;

    static Segment line(cplx from, cplx to);
    static Segment arc(cplx center, double radius, double theta0, double theta1);

    cplx point(double s) const;
    cplx velocity(double s) const;  // d(point)/ds
    cplx start() const { return point(0.0); }
    cplx end() const { return point(1.0); }
    double length() const;
    double distance_to(cplx p) const;
    Segment reversed() const;
};

// Piecewise-smooth oriented curve; consecutive segments are endpoint-continuous.
class Path {
  public:
    Path() = default;
    explicit Path(std::vector<Segment> segments);

    const std::vector<Segment>& segments() const { return segments_; }
    bool empty() const { return segments_.empty(); }
    cplx start() const;
    cplx end() const;
    bool is_closed(double tol = 1e-9) const;
    double length() const;
    double distance_to(cplx p) const;

    Path reversed() const;
    Path& append(const Segment& seg);
    Path& append(const Path& other);

    // Winding number about a point, by discrete argument summation.
    int winding_number(cplx p) const;

    // Throws GeometryError if any segment comes within `radius` of a puncture.
    void check_clearance(const std::vector<cplx>& punctures, double radius) const;

  private:
    std::vector<Segment> segments_;
};

Path concat(const Path& a, const Path& b);

struct Loop {
    Path path;
    cplx basepoint;
    std::vector<int> winding;  // one entry per declared puncture

    Loop traversed_twice() const;
};

// Straight run from `from` to `to`, bumping around any listed point that lies
// closer than `clearance` to the line (arc detour at radius `clearance`).
Path segment_with_detours(cplx from, cplx to, const std::vector<cplx>& avoid,
                          double clearance);

// Keyhole loop: spoke from the basepoint to a circle of radius `radius` around
// punctures[index], one positive (counterclockwise) turn, spoke back.
Loop build_puncture_loop(const std::vector<cplx>& punctures, int index, cplx basepoint,
                         double radius);

// Concatenation of loops sharing a basepoint: lhs traversed first.
Loop compose_loops(const Loop& first, const Loop& second);
Loop reverse_loop(const Loop& loop);

double min_pairwise_distance(const std::vector<cplx>& points);

}  // namespace pvi
