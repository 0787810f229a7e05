#include "treeprod/region.hpp"

#include <algorithm>
#include <stdexcept>

namespace treeprod {

namespace {

Rational frac(const Rational& x) {
    Rational f = x - Rational(boost::multiprecision::numerator(x) / boost::multiprecision::denominator(x));
    if (f < 0) f += 1;
    if (f >= 1) f -= 1;
    return f;
}

Rational circle_gap(const Rational& a, const Rational& b) {
    Rational g = frac(a - b);
    return std::min(g, 1 - g);
}

bool overlap_open(const Interval& a, const Interval& b) { return a.lo < b.hi && b.lo < a.hi; }

std::vector<Interval> merge_line(std::vector<Interval> v) {
    std::sort(v.begin(), v.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    std::vector<Interval> out;
    for (auto& iv : v) {
        if (!out.empty() && iv.lo < out.back().hi)
            out.back().hi = std::max(out.back().hi, iv.hi);
        else
            out.push_back(iv);
    }
    return out;
}

bool arcs_overlap(const Interval& a, const Interval& b) {
    for (int t = -1; t <= 1; ++t)
        if (overlap_open(Interval{a.lo + t, a.hi + t}, b)) return true;
    return false;
}

bool arc_inside(const Interval& inner, const Interval& outer) {
    for (int t = -1; t <= 1; ++t)
        if (outer.lo <= inner.lo + t && inner.hi + t <= outer.hi) return true;
    return false;
}

bool closures_meet(const Interval& a, const Interval& b) {
    for (int t = -1; t <= 1; ++t)
        if (a.lo + t <= b.hi && b.lo <= a.hi + t) return true;
    return false;
}

Rational arc_distance(const Interval& a, const Interval& b) {
    if (closures_meet(a, b)) return 0;
    Rational best = 1;
    for (const Rational& x : {a.lo, a.hi})
        for (const Rational& y : {b.lo, b.hi}) best = std::min(best, circle_gap(x, y));
    return best;
}

bool box_inside(const std::array<Interval, 2>& in, const std::array<Interval, 2>& out) {
    return out[0].lo <= in[0].lo && in[0].hi <= out[0].hi && out[1].lo <= in[1].lo && in[1].hi <= out[1].hi;
}

bool box_overlap(const std::array<Interval, 2>& a, const std::array<Interval, 2>& b) {
    return overlap_open(a[0], b[0]) && overlap_open(a[1], b[1]);
}

}  // namespace

Region Region::whole() { return Region{}; }

Region Region::line(std::vector<Interval> pieces) {
    for (auto& p : pieces)
        if (!(p.lo < p.hi)) throw std::invalid_argument("empty interval in certificate");
    Region r;
    r.kind_ = Kind::line;
    r.pieces_ = merge_line(std::move(pieces));
    return r;
}

Region Region::circle(std::vector<Interval> arcs) {
    Region r;
    r.kind_ = Kind::circle;
    for (auto& a : arcs) {
        if (!(a.lo < a.hi)) throw std::invalid_argument("empty arc in certificate");
        Rational len = a.hi - a.lo;
        if (len > 1) {
            r.full_circle_ = true;
            r.pieces_.clear();
            return r;
        }
        Rational lo = frac(a.lo);
        r.pieces_.push_back(Interval{lo, lo + len});
    }
    // Merge strictly overlapping arcs until stable.
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < r.pieces_.size() && !changed; ++i)
            for (std::size_t j = i + 1; j < r.pieces_.size() && !changed; ++j) {
                const Interval a = r.pieces_[i], b = r.pieces_[j];
                if (!arcs_overlap(a, b)) continue;
                // Place b next to a, then take the hull.
                Interval bb = b;
                for (int t = -1; t <= 1; ++t)
                    if (overlap_open(a, Interval{b.lo + t, b.hi + t})) {
                        bb = Interval{b.lo + t, b.hi + t};
                        break;
                    }
                Interval u{std::min(a.lo, bb.lo), std::max(a.hi, bb.hi)};
                r.pieces_.erase(r.pieces_.begin() + static_cast<std::ptrdiff_t>(j));
                if (u.hi - u.lo >= 1) {
                    // The two arcs wrap around; only a gap shorter than a point could remain.
                    r.full_circle_ = true;
                    r.pieces_.clear();
                    return r;
                }
                Rational lo = frac(u.lo);
                r.pieces_[i] = Interval{lo, lo + (u.hi - u.lo)};
                changed = true;
            }
    }
    std::sort(r.pieces_.begin(), r.pieces_.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    return r;
}

Region Region::plane(std::vector<std::array<Interval, 2>> boxes) {
    for (auto& b : boxes)
        if (!(b[0].lo < b[0].hi) || !(b[1].lo < b[1].hi)) throw std::invalid_argument("empty box in certificate");
    Region r;
    r.kind_ = Kind::plane;
    r.boxes_ = std::move(boxes);
    return r;
}

Region Region::ball(AmbientKind ambient, const Point2& c, const Rational& radius) {
    switch (ambient) {
        case AmbientKind::line: return line({Interval{c[0] - radius, c[0] + radius}});
        case AmbientKind::circle: return circle({Interval{c[0] - radius, c[0] + radius}});
        case AmbientKind::plane:
            return plane({{Interval{c[0] - radius, c[0] + radius}, Interval{c[1] - radius, c[1] + radius}}});
        case AmbientKind::none: break;
    }
    throw std::logic_error("ball regions need an ambient space");
}

bool Region::contains_point(const Point2& p) const {
    if (full()) return true;
    switch (kind_) {
        case Kind::line:
            return std::any_of(pieces_.begin(), pieces_.end(), [&](const Interval& iv) { return iv.lo < p[0] && p[0] < iv.hi; });
        case Kind::circle:
            for (const auto& iv : pieces_)
                for (int t = 0; t <= 1; ++t)
                    if (iv.lo < p[0] + t && p[0] + t < iv.hi) return true;
            return false;
        case Kind::plane:
            return std::any_of(boxes_.begin(), boxes_.end(), [&](const auto& b) {
                return b[0].lo < p[0] && p[0] < b[0].hi && b[1].lo < p[1] && p[1] < b[1].hi;
            });
        case Kind::whole: return true;
    }
    return false;
}

bool Region::contains(const Region& other) const {
    if (full()) return true;
    if (other.kind_ == Kind::whole) return false;
    if (other.kind_ != kind_) throw std::logic_error("regions live in different ambient spaces");
    if (other.full_circle_) return false;
    switch (kind_) {
        case Kind::line:
            return std::all_of(other.pieces_.begin(), other.pieces_.end(), [&](const Interval& in) {
                return std::any_of(pieces_.begin(), pieces_.end(),
                                   [&](const Interval& out) { return out.lo <= in.lo && in.hi <= out.hi; });
            });
        case Kind::circle:
            return std::all_of(other.pieces_.begin(), other.pieces_.end(), [&](const Interval& in) {
                return std::any_of(pieces_.begin(), pieces_.end(), [&](const Interval& out) { return arc_inside(in, out); });
            });
        case Kind::plane:
            return std::all_of(other.boxes_.begin(), other.boxes_.end(), [&](const auto& in) {
                return std::any_of(boxes_.begin(), boxes_.end(), [&](const auto& out) { return box_inside(in, out); });
            });
        case Kind::whole: return true;
    }
    return false;
}

bool Region::disjoint(const Region& other) const {
    if (kind_ == Kind::whole || other.kind_ == Kind::whole) return false;
    if (other.kind_ != kind_) throw std::logic_error("regions live in different ambient spaces");
    if (full_circle_ || other.full_circle_) return false;
    switch (kind_) {
        case Kind::line:
            for (const auto& a : pieces_)
                for (const auto& b : other.pieces_)
                    if (overlap_open(a, b)) return false;
            return true;
        case Kind::circle:
            for (const auto& a : pieces_)
                for (const auto& b : other.pieces_)
                    if (arcs_overlap(a, b)) return false;
            return true;
        case Kind::plane:
            for (const auto& a : boxes_)
                for (const auto& b : other.boxes_)
                    if (box_overlap(a, b)) return false;
            return true;
        case Kind::whole: return false;
    }
    return false;
}

Rational Region::diameter() const {
    if (kind_ == Kind::whole) throw std::logic_error("diameter of the whole space is the space's diameter");
    if (full_circle_) return Rational(1, 2);
    switch (kind_) {
        case Kind::line: {
            Rational lo = pieces_.front().lo, hi = pieces_.front().hi;
            for (const auto& p : pieces_) {
                lo = std::min(lo, p.lo);
                hi = std::max(hi, p.hi);
            }
            return hi - lo;
        }
        case Kind::circle: {
            Rational best = 0;
            for (std::size_t i = 0; i < pieces_.size(); ++i)
                for (std::size_t j = i; j < pieces_.size(); ++j) {
                    Rational d;
                    if (i == j) {
                        d = std::min(pieces_[i].hi - pieces_[i].lo, Rational(1, 2));
                    } else {
                        Interval shifted{pieces_[i].lo + Rational(1, 2), pieces_[i].hi + Rational(1, 2)};
                        shifted.lo = frac(shifted.lo);
                        shifted.hi = shifted.lo + (pieces_[i].hi - pieces_[i].lo);
                        d = Rational(1, 2) - arc_distance(shifted, pieces_[j]);
                    }
                    best = std::max(best, d);
                }
            return best;
        }
        case Kind::plane: {
            Rational x0 = boxes_.front()[0].lo, x1 = boxes_.front()[0].hi;
            Rational y0 = boxes_.front()[1].lo, y1 = boxes_.front()[1].hi;
            for (const auto& b : boxes_) {
                x0 = std::min(x0, b[0].lo);
                x1 = std::max(x1, b[0].hi);
                y0 = std::min(y0, b[1].lo);
                y1 = std::max(y1, b[1].hi);
            }
            return std::max(x1 - x0, y1 - y0);
        }
        case Kind::whole: break;
    }
    return 0;
}

std::optional<Rational> Region::distance_to_complement(const Point2& p) const {
    if (full()) return std::nullopt;
    Rational best = 0;
    switch (kind_) {
        case Kind::line:
            for (const auto& iv : pieces_)
                if (iv.lo < p[0] && p[0] < iv.hi) best = std::max(best, std::min(p[0] - iv.lo, iv.hi - p[0]));
            break;
        case Kind::circle:
            for (const auto& iv : pieces_)
                for (int t = 0; t <= 1; ++t) {
                    Rational x = p[0] + t;
                    if (iv.lo < x && x < iv.hi) best = std::max(best, std::min(x - iv.lo, iv.hi - x));
                }
            break;
        case Kind::plane:
            for (const auto& b : boxes_)
                if (b[0].lo < p[0] && p[0] < b[0].hi && b[1].lo < p[1] && p[1] < b[1].hi)
                    best = std::max(best, std::min({p[0] - b[0].lo, b[0].hi - p[0], p[1] - b[1].lo, b[1].hi - p[1]}));
            break;
        case Kind::whole: return std::nullopt;
    }
    return best;
}

}  // namespace treeprod
