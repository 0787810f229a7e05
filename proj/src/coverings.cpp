#include "treeprod/coverings.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace treeprod {

void CoveringGeometry::attach(CoveringElement& u) const {
    const auto& space = balls_->space();
    u.members = PointSet(space.size());
    const bool whole = u.certificate.kind() == Region::Kind::whole;
    for (PointId z = 0; z < space.size(); ++z)
        if (whole || u.certificate.contains_point(balls_->coords(z))) u.members.set(z);
}

CoveringElement CoveringGeometry::make(std::string id, int color, int level, Region certificate) const {
    CoveringElement u{std::move(id), color, level, std::move(certificate), {}};
    attach(u);
    return u;
}

Ball CoveringGeometry::ball(int k, PointId z) const {
    Ball b{k, z, std::nullopt};
    if (balls_->semantics() == BallSemantics::certified) b.region = balls_->region(k, z);
    return b;
}

bool CoveringGeometry::ball_inside(const Ball& b, const CoveringElement& u) const {
    if (u.certificate.kind() == Region::Kind::whole) return true;
    if (b.region) return u.certificate.contains(*b.region);
    return balls_->members(b.k, b.z).is_subset_of(u.members);
}

bool CoveringGeometry::ball_meets(const Ball& b, const CoveringElement& u) const {
    if (u.certificate.kind() == Region::Kind::whole) return true;
    if (b.region) return !u.certificate.disjoint(*b.region);
    return balls_->members(b.k, b.z).intersects(u.members);
}

bool CoveringGeometry::inside(const CoveringElement& inner, const CoveringElement& outer) const {
    if (balls_->semantics() == BallSemantics::certified) return outer.certificate.contains(inner.certificate);
    return inner.members.is_subset_of(outer.members);
}

bool CoveringGeometry::disjoint(const CoveringElement& a, const CoveringElement& b) const {
    if (balls_->semantics() == BallSemantics::certified) return a.certificate.disjoint(b.certificate);
    return !a.members.intersects(b.members);
}

bool CoveringGeometry::contains_point(const CoveringElement& u, PointId z) const { return u.members.test(z); }

Rational CoveringGeometry::diameter(const CoveringElement& u) const {
    const auto& space = balls_->space();
    if (balls_->semantics() == BallSemantics::certified) {
        if (u.certificate.kind() == Region::Kind::whole) return space.diameter();
        return u.certificate.diameter();
    }
    Rational best = 0;
    for (auto a = u.members.find_first(); a != PointSet::npos; a = u.members.find_next(a))
        for (auto b = u.members.find_next(a); b != PointSet::npos; b = u.members.find_next(b))
            best = std::max(best, space.distance(a, b));
    return best;
}

std::optional<Rational> CoveringGeometry::distance_to_complement(const CoveringElement& u, PointId z) const {
    if (u.certificate.kind() == Region::Kind::whole) return std::nullopt;
    if (balls_->semantics() == BallSemantics::certified) return u.certificate.distance_to_complement(balls_->coords(z));
    std::optional<Rational> best;
    if (!u.members.test(z)) return Rational(0);
    for (PointId y = 0; y < balls_->space().size(); ++y)
        if (!u.members.test(y)) {
            const Rational& d = balls_->space().distance(z, y);
            if (!best || d < *best) best = d;
        }
    return best;
}

Rational mesh(const std::vector<const CoveringElement*>& family, const CoveringGeometry& geo) {
    if (family.empty()) throw CoveringError("mesh of an empty family");
    Rational best = 0;
    for (const auto* u : family) best = std::max(best, geo.diameter(*u));
    return best;
}

Rational lebesgue_number(const std::vector<const CoveringElement*>& covering, const CoveringGeometry& geo) {
    const Rational m = mesh(covering, geo);
    Rational best = m;
    for (PointId z = 0; z < geo.balls().space().size(); ++z) {
        bool covered = false, unbounded = false;
        Rational here = 0;
        for (const auto* u : covering) {
            if (!geo.contains_point(*u, z)) continue;
            covered = true;
            auto d = geo.distance_to_complement(*u, z);
            if (!d)
                unbounded = true;
            else
                here = std::max(here, *d);
        }
        if (!covered) throw CoveringError("point " + std::to_string(z) + " is covered by no element");
        if (!unbounded) best = std::min(best, here);
    }
    return best;
}

std::vector<const CoveringElement*> level_elements(const CoveringSequence& seq, int j) {
    std::vector<const CoveringElement*> out;
    for (const auto& fam : seq.families.at(static_cast<std::size_t>(j)))
        for (const auto& u : fam) out.push_back(&u);
    return out;
}

bool CoveringReport::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.ok(); });
}

std::string CoveringReport::first_violation() const {
    for (const auto& c : checks)
        if (!c.ok()) return c.id + ": " + c.first_violation;
    return {};
}

int required_covering_levels(const ApproxGraph& g) { return std::max(g.max_level(), 1); }

CoveringReport validate_covering_sequence(const CoveringSequence& seq, const ApproxGraph& g, const CoveringGeometry& geo,
                                          int only_level) {
    if (g.k0() > 0) throw CoveringError("the graph has no level 0 (k0 > 0)");
    if (only_level < 0 && seq.top_level() + 1 != required_covering_levels(g))
        throw CoveringError("covering levels 0.." + std::to_string(seq.top_level()) + " do not match graph levels (need 0.." +
                            std::to_string(required_covering_levels(g) - 1) + ")");
    for (const auto& level : seq.families)
        if (static_cast<int>(level.size()) != seq.colors) throw CoveringError("a level lacks a family for some color");

    CoveringReport rep;
    CheckResult root("covering.root_family"), mesh_check("covering.mesh"), cover("covering.covers"),
        nonempty("covering.nonempty"), disjoint("covering.same_color_disjoint"), contain("covering.ball_containment"),
        unique("covering.unique_witness"), separation("covering.separation");
    const auto& space = g.space();
    const int first = only_level < 0 ? 0 : only_level;
    const int last = only_level < 0 ? seq.top_level() : only_level;

    for (int j = first; j <= last; ++j) {
        auto all = level_elements(seq, j);
        if (j == 0) {
            for (int c = 0; c < seq.colors; ++c) {
                const auto& fam = seq.family(0, c);
                bool ok = fam.size() == 1 && fam[0].members.count() == space.size() &&
                          (g.balls().semantics() == BallSemantics::pointwise || fam[0].certificate.full());
                root.record(ok, "color " + std::to_string(c) + " level 0 is not {Z}");
            }
        } else if (!all.empty()) {
            Rational m = mesh(all, geo);
            mesh_check.record(m < power(seq.r, j),
                              "level " + std::to_string(j) + " mesh " + to_string(m) + " >= r^" + std::to_string(j));
        }
        for (const auto* u : all) nonempty.record(u->members.any(), "element " + u->id + " holds no sample point");
        for (PointId z = 0; z < space.size(); ++z)
            cover.record(std::any_of(all.begin(), all.end(), [&](const auto* u) { return geo.contains_point(*u, z); }),
                         "point " + std::to_string(z) + " uncovered at level " + std::to_string(j));
        for (int c = 0; c < seq.colors; ++c) {
            const auto& fam = seq.family(j, c);
            for (std::size_t a = 0; a < fam.size(); ++a)
                for (std::size_t b = a + 1; b < fam.size(); ++b)
                    disjoint.record(geo.disjoint(fam[a], fam[b]), fam[a].id + " meets " + fam[b].id);
        }
        bool all_cover = std::all_of(all.begin(), all.end(), [](const auto* u) { return u->members.any(); });
        if (all_cover && !all.empty()) {
            try {
                rep.lebesgue.push_back(lebesgue_number(all, geo));
            } catch (const CoveringError&) {
                rep.lebesgue.push_back(0);
            }
            rep.mesh.push_back(mesh(all, geo));
        }

        if (j + 1 > g.max_level()) continue;
        std::vector<Ball> next;
        for (VertexId v : g.level_vertices(j + 1)) next.push_back(geo.ball(j + 1, g.center(v)));

        for (const auto& b : next) {
            int found = 0;
            for (int c = 0; c < seq.colors; ++c) {
                int per_color = 0;
                for (const auto& u : seq.family(j, c))
                    if (geo.ball_inside(b, u)) ++per_color;
                unique.record(per_color <= 1, "ball " + std::to_string(j + 1) + ":" + std::to_string(b.z) +
                                                  " lies in two elements of color " + std::to_string(c));
                found += per_color;
            }
            contain.record(found > 0, "ball " + std::to_string(j + 1) + ":" + std::to_string(b.z) +
                                          " lies in no level-" + std::to_string(j) + " element");
        }

        for (int c = 0; c < seq.colors; ++c)
            for (const auto& u : seq.family(j, c)) {
                std::vector<const Ball*> near;
                for (const auto& b : next)
                    if (geo.ball_meets(b, u)) near.push_back(&b);
                if (near.empty()) continue;
                for (int jj = 0; jj <= j; ++jj)
                    for (const auto& other : seq.family(jj, c)) {
                        if (&other == &u) continue;
                        bool in = std::all_of(near.begin(), near.end(), [&](const Ball* b) { return geo.ball_inside(*b, other); });
                        bool out = in ? false : std::none_of(near.begin(), near.end(), [&](const Ball* b) { return geo.ball_meets(*b, other); });
                        separation.record(in || out, "B(" + u.id + ") straddles " + other.id);
                    }
            }
    }
    rep.checks = {root, mesh_check, cover, nonempty, disjoint, contain, unique, separation};
    return rep;
}

std::string to_string(CoveringKind k) {
    switch (k) {
        case CoveringKind::ultrametric: return "ultrametric";
        case CoveringKind::shifted_arcs: return "shifted_arcs";
        case CoveringKind::shifted_cubes: return "shifted_cubes";
    }
    return "?";
}

CoveringKind parse_covering_kind(const std::string& s) {
    if (s == "ultrametric") return CoveringKind::ultrametric;
    if (s == "shifted_arcs") return CoveringKind::shifted_arcs;
    if (s == "shifted_cubes") return CoveringKind::shifted_cubes;
    throw std::invalid_argument("unknown covering kind: " + s);
}

namespace {

std::string elem_id(int j, int c, std::size_t i) {
    return "L" + std::to_string(j) + ".c" + std::to_string(c) + "." + std::to_string(i);
}

std::vector<std::vector<CoveringElement>> root_level(int colors, const CoveringGeometry& geo) {
    std::vector<std::vector<CoveringElement>> lvl(static_cast<std::size_t>(colors));
    for (int c = 0; c < colors; ++c) lvl[static_cast<std::size_t>(c)].push_back(geo.make("Z.c" + std::to_string(c), c, 0, Region::whole()));
    return lvl;
}

// Single-linkage clusters of the sorted line sample, cut at every gap >= threshold.
std::vector<std::pair<Rational, Rational>> line_clusters(const std::vector<Rational>& xs, const Rational& threshold) {
    std::vector<std::pair<Rational, Rational>> out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i == 0 || xs[i] - xs[i - 1] >= threshold)
            out.emplace_back(xs[i], xs[i]);
        else
            out.back().second = xs[i];
    }
    return out;
}

CoveringSequence ultrametric(const ApproxGraph& g, const CoveringGeometry& geo, int colors) {
    if (g.space().ambient().kind != AmbientKind::line) throw CoveringError("ultrametric coverings need a line sample");
    if (colors != 1) throw CoveringError("ultrametric coverings use a single color");
    std::vector<Rational> xs;
    for (const auto& p : g.space().ambient().coords) xs.push_back(p[0]);
    std::sort(xs.begin(), xs.end());
    std::set<Rational> gaps;
    for (std::size_t i = 1; i < xs.size(); ++i) gaps.insert(xs[i] - xs[i - 1]);

    CoveringSequence seq{g.scale().r, 1, {}, {}};
    seq.families.push_back(root_level(1, geo));
    std::optional<Rational> prev;  // previous threshold; none means a single cluster
    for (int j = 1; j < required_covering_levels(g); ++j) {
        const Rational margin = g.balls().radius(j + 1);
        const Rational rj = power(g.scale().r, j);
        // Coarsest admissible clustering: largest threshold not above the previous one.
        std::vector<Rational> candidates;
        if (prev) candidates.push_back(*prev);
        for (auto it = gaps.rbegin(); it != gaps.rend(); ++it)
            if (!prev || *it < *prev) candidates.push_back(*it);
        std::optional<Rational> chosen;
        for (const auto& t : candidates) {
            if (t < 2 * margin) break;
            auto cl = line_clusters(xs, t);
            if (std::all_of(cl.begin(), cl.end(), [&](const auto& ab) { return ab.second - ab.first + 2 * margin < rj; })) {
                chosen = t;
                break;
            }
        }
        // Fall back to singletons; the validator reports what goes wrong.
        Rational t = chosen ? *chosen : (gaps.empty() ? Rational(1) : *gaps.begin());
        std::vector<std::vector<CoveringElement>> lvl(1);
        std::size_t i = 0;
        for (const auto& [a, b] : line_clusters(xs, t))
            lvl[0].push_back(geo.make(elem_id(j, 0, i++), 0, j, Region::line({Interval{a - margin, b + margin}})));
        seq.families.push_back(std::move(lvl));
        prev = t;
    }
    return seq;
}

std::vector<LatticeParams> lattice_candidates(CoveringKind kind, int j, int colors, const Rational& r) {
    const Rational rj = power(r, j);
    // Cell counts per unit: enough cells for the side bound, not wildly more.
    const Rational inv = 1 / rj;
    int lo = std::max(1, static_cast<int>(boost::multiprecision::numerator(inv) / boost::multiprecision::denominator(inv)) / std::max(1, colors));
    int hi = 4 * static_cast<int>(boost::multiprecision::numerator(inv) / boost::multiprecision::denominator(inv)) + 4;
    std::vector<LatticeParams> out;
    for (int m = lo; m <= hi; ++m) {
        const Rational period(1, m);
        for (int t = 0; t <= 16; ++t) {
            Rational side = rj * Rational(24 - t, 24);
            if (side > period) continue;
            for (int shift_variant = 0; shift_variant < 5; ++shift_variant) {
                static const int numer[5] = {0, -1, 1, -2, 2};
                Rational step = period / colors + period * Rational(numer[shift_variant], 24);
                for (int b = 0; b < 12; ++b) {
                    LatticeParams p;
                    p.count = m;
                    p.side = side;
                    p.base = period * Rational(b, 12);
                    for (int c = 0; c < colors; ++c) p.shifts.push_back(step * c);
                    out.push_back(std::move(p));
                }
                if (colors == 1) break;
            }
        }
    }
    (void)kind;
    return out;
}

}  // namespace

std::vector<std::vector<CoveringElement>> lattice_level(CoveringKind kind, int j, const LatticeParams& p,
                                                        const CoveringGeometry& geo) {
    const int colors = static_cast<int>(p.shifts.size());
    std::vector<std::vector<CoveringElement>> lvl(static_cast<std::size_t>(colors));
    const Rational period(1, p.count);
    for (int c = 0; c < colors; ++c) {
        std::size_t idx = 0;
        const Rational off = p.base + p.shifts[static_cast<std::size_t>(c)];
        if (kind == CoveringKind::shifted_arcs) {
            for (int i = 0; i < p.count; ++i) {
                Rational lo = off + period * i;
                auto u = geo.make(elem_id(j, c, idx), c, j, Region::circle({Interval{lo, lo + p.side}}));
                if (u.members.any()) {
                    lvl[static_cast<std::size_t>(c)].push_back(std::move(u));
                    ++idx;
                }
            }
        } else {
            // Cells cover [-1, 2]^2 generously; empty ones are dropped.
            for (int ix = -p.count; ix < 2 * p.count; ++ix)
                for (int iy = -p.count; iy < 2 * p.count; ++iy) {
                    Rational x = off + period * ix, y = off + period * iy;
                    if (x + p.side <= -1 || y + p.side <= -1 || x >= 2 || y >= 2) continue;
                    auto u = geo.make(elem_id(j, c, idx), c, j,
                                      Region::plane({{Interval{x, x + p.side}, Interval{y, y + p.side}}}));
                    if (u.members.any()) {
                        lvl[static_cast<std::size_t>(c)].push_back(std::move(u));
                        ++idx;
                    }
                }
        }
    }
    return lvl;
}

CoveringSequence generate_covering_sequence(CoveringKind kind, const ApproxGraph& g, const CoveringGeometry& geo,
                                            const GeneratorOptions& opts) {
    CoveringSequence seq;
    if (kind == CoveringKind::ultrametric) {
        seq = ultrametric(g, geo, opts.colors);
    } else {
        const AmbientKind need = kind == CoveringKind::shifted_arcs ? AmbientKind::circle : AmbientKind::plane;
        if (g.space().ambient().kind != need) throw CoveringError(to_string(kind) + " does not match the space");
        seq = CoveringSequence{g.scale().r, opts.colors, {}, {}};
        seq.families.push_back(root_level(opts.colors, geo));
        for (int j = 1; j < required_covering_levels(g); ++j) {
            const auto idx = static_cast<std::size_t>(j - 1);
            if (idx < opts.lattice.size() && opts.lattice[idx]) {
                if (static_cast<int>(opts.lattice[idx]->shifts.size()) != opts.colors)
                    throw CoveringError("lattice shifts do not match the color count");
                seq.families.push_back(lattice_level(kind, j, *opts.lattice[idx], geo));
                seq.lattice.push_back(opts.lattice[idx]);
                continue;
            }
            bool found = false;
            std::size_t tried = 0;
            for (const auto& cand : lattice_candidates(kind, j, opts.colors, g.scale().r)) {
                if (tried++ >= opts.search_limit) break;
                seq.families.push_back(lattice_level(kind, j, cand, geo));
                if (validate_covering_sequence(seq, g, geo, j).passed()) {
                    seq.lattice.push_back(cand);
                    found = true;
                    break;
                }
                seq.families.pop_back();
            }
            if (!found) {
                // Keep the natural candidate so the validator can name a violation.
                LatticeParams p;
                p.count = 1;
                const Rational rj = power(g.scale().r, j);
                while (Rational(1, p.count) > rj) ++p.count;
                p.side = Rational(1, p.count) * Rational(23, 24);
                p.base = 0;
                for (int c = 0; c < opts.colors; ++c) p.shifts.push_back(Rational(c, p.count * opts.colors));
                seq.families.push_back(lattice_level(kind, j, p, geo));
                seq.lattice.push_back(p);
            }
        }
    }
    if (opts.validate) {
        auto rep = validate_covering_sequence(seq, g, geo);
        if (!rep.passed()) throw CoveringError("covering validation failed: " + rep.first_violation());
    }
    return seq;
}

}  // namespace treeprod
