#pragma once

#include "treeprod/metric_space.hpp"

#include <array>
#include <optional>
#include <vector>

namespace treeprod {

// Open interval (lo, hi). On the circle, lo in [0,1) and hi may exceed 1 (unwrapped arc).
struct Interval {
    Rational lo, hi;
};

using Point2 = std::array<Rational, 2>;

// Geometric certificate: a finite union of open intervals, arcs or sup-metric boxes.
class Region {
   public:
    enum class Kind { whole, line, circle, plane };

    static Region whole();
    static Region line(std::vector<Interval> pieces);
    static Region circle(std::vector<Interval> arcs);
    static Region plane(std::vector<std::array<Interval, 2>> boxes);
    // Open ball of the given radius around an ambient point.
    static Region ball(AmbientKind ambient, const Point2& center, const Rational& radius);

    Kind kind() const { return kind_; }
    bool full() const { return kind_ == Kind::whole || full_circle_; }
    const std::vector<Interval>& pieces() const { return pieces_; }
    const std::vector<std::array<Interval, 2>>& boxes() const { return boxes_; }

    bool contains_point(const Point2& p) const;
    // Exact for line and circle (pieces are merged); on the plane each box must sit inside one box.
    bool contains(const Region& other) const;
    bool disjoint(const Region& other) const;
    // Ambient diameter; not defined for the whole space.
    Rational diameter() const;
    // Distance from p to the complement; nullopt when the complement is empty.
    std::optional<Rational> distance_to_complement(const Point2& p) const;

   private:
    Kind kind_ = Kind::whole;
    bool full_circle_ = false;
    std::vector<Interval> pieces_;
    std::vector<std::array<Interval, 2>> boxes_;
};

}  // namespace treeprod
