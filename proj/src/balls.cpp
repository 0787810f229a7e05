#include "treeprod/balls.hpp"

#include <stdexcept>

namespace treeprod {

std::string to_string(BallSemantics s) { return s == BallSemantics::certified ? "certified" : "pointwise"; }

BallSemantics parse_semantics(const std::string& s) {
    if (s == "certified") return BallSemantics::certified;
    if (s == "pointwise") return BallSemantics::pointwise;
    throw std::invalid_argument("unknown ball semantics: " + s);
}

BallSystem::BallSystem(const FiniteMetricSpace& space, const ScaleParams& scale, BallSemantics semantics)
    : space_(&space), scale_(scale), semantics_(semantics) {
    const int levels = scale.max_level - scale.k0 + 2;
    const std::size_t n = space.size();
    for (int i = 0; i < levels; ++i) {
        int k = scale.k0 + i;
        scale_at_.push_back(power(scale.r, k));
        radius_.push_back(2 * scale_at_.back());
        std::vector<PointSet> level(n, PointSet(n));
        for (PointId z = 0; z < n; ++z)
            for (PointId y = 0; y < n; ++y)
                if (space.distance(z, y) < radius_.back()) level[z].set(y);
        members_.push_back(std::move(level));
    }
}

const PointSet& BallSystem::members(int k, PointId z) const {
    return members_.at(static_cast<std::size_t>(k - scale_.k0)).at(z);
}

Point2 BallSystem::coords(PointId z) const {
    const auto& amb = space_->ambient();
    if (amb.kind == AmbientKind::none) throw std::logic_error("space has no ambient coordinates");
    return amb.coords.at(z);
}

Region BallSystem::region(int k, PointId z) const { return Region::ball(space_->ambient().kind, coords(z), radius(k)); }

bool BallSystem::closed_meet(int k, PointId a, PointId b) const {
    if (semantics_ == BallSemantics::certified) return space_->distance(a, b) <= 2 * radius(k);
    const Rational& rho = radius(k);
    for (PointId z = 0; z < space_->size(); ++z)
        if (space_->distance(z, a) <= rho && space_->distance(z, b) <= rho) return true;
    return false;
}

bool BallSystem::nested(int k, PointId upper, PointId lower) const {
    if (semantics_ == BallSemantics::certified) return space_->distance(upper, lower) + radius(k + 1) <= radius(k);
    return members(k + 1, upper).is_subset_of(members(k, lower));
}

bool BallSystem::contained(int ki, PointId inner, int ko, PointId outer) const {
    if (semantics_ == BallSemantics::certified) return space_->distance(inner, outer) + radius(ki) <= radius(ko);
    return members(ki, inner).is_subset_of(members(ko, outer));
}

bool BallSystem::open_meet(int ka, PointId a, int kb, PointId b) const {
    if (semantics_ == BallSemantics::certified) return space_->distance(a, b) < radius(ka) + radius(kb);
    return members(ka, a).intersects(members(kb, b));
}

}  // namespace treeprod
