#pragma once

#include "treeprod/metric_space.hpp"
#include "treeprod/region.hpp"

#include <boost/dynamic_bitset.hpp>

#include <vector>

namespace treeprod {

using PointSet = boost::dynamic_bitset<>;

// certified: ball relations decided from center distances and ambient certificates.
// pointwise: ball relations decided on the sample points themselves.
enum class BallSemantics { certified, pointwise };

std::string to_string(BallSemantics s);
BallSemantics parse_semantics(const std::string& s);

// The balls B(z) of radius 2r^k around sample points, for levels k0..J+1.
class BallSystem {
   public:
    BallSystem(const FiniteMetricSpace& space, const ScaleParams& scale, BallSemantics semantics);

    const FiniteMetricSpace& space() const { return *space_; }
    const ScaleParams& scale() const { return scale_; }
    BallSemantics semantics() const { return semantics_; }

    const Rational& radius(int k) const { return radius_.at(static_cast<std::size_t>(k - scale_.k0)); }
    const Rational& scale_at(int k) const { return scale_at_.at(static_cast<std::size_t>(k - scale_.k0)); }
    // Sample points strictly inside B(z) at level k.
    const PointSet& members(int k, PointId z) const;
    // Certificate of B(z) at level k; needs an ambient space.
    Region region(int k, PointId z) const;
    Point2 coords(PointId z) const;

    // Closed balls at level k meet.
    bool closed_meet(int k, PointId a, PointId b) const;
    // B(upper) at level k+1 is inside B(lower) at level k.
    bool nested(int k, PointId upper, PointId lower) const;
    // B(inner) at level ki is inside B(outer) at level ko.
    bool contained(int ki, PointId inner, int ko, PointId outer) const;
    // Open balls at levels ka, kb meet.
    bool open_meet(int ka, PointId a, int kb, PointId b) const;

   private:
    const FiniteMetricSpace* space_;
    ScaleParams scale_;
    BallSemantics semantics_;
    std::vector<Rational> radius_, scale_at_;
    std::vector<std::vector<PointSet>> members_;
};

}  // namespace treeprod
