#include "treeprod/tree_embed.hpp"

#include "treeprod/parallel.hpp"

#include <algorithm>
#include <limits>
#include <ostream>

namespace treeprod {

int Stage1::tree_distance(int c, VertexId a, VertexId b) const {
    return trees[static_cast<std::size_t>(c)].tree.distance(image_of(c, a), image_of(c, b));
}

Stage1 build_stage1(const ApproxGraph& g, const CoveringSequence& seq, const CoveringGeometry& geo) {
    Stage1 e;
    e.graph = &g;
    e.seq = &seq;
    e.geo = &geo;
    for (int c = 0; c < seq.colors; ++c) e.trees.push_back(build_color_tree(seq, c, geo));
    e.image.assign(static_cast<std::size_t>(seq.colors), std::vector<int>(g.size(), 0));
    for (int c = 0; c < seq.colors; ++c) {
        const ColorTree& ct = e.trees[static_cast<std::size_t>(c)];
        for (VertexId v = 0; v < g.size(); ++v) {
            const int j = g.level(v);
            if (v == g.root() || j <= 0) continue;
            const Ball b = geo.ball(j, g.center(v));
            int found = -1;
            for (int jj = std::min(j - 1, seq.top_level()); jj >= 0 && found < 0; --jj)
                for (int u : ct.by_level[static_cast<std::size_t>(jj)])
                    if (geo.ball_inside(b, *ct.elements[static_cast<std::size_t>(u)])) {
                        found = u;
                        break;
                    }
            if (found < 0) throw TreeError("no element of color " + std::to_string(c) + " contains the ball of " + vertex_name(g, v));
            e.image[static_cast<std::size_t>(c)][v] = found;
        }
    }
    return e;
}

int product_distance(const Stage1& e, VertexId a, VertexId b) {
    int sum = 0;
    for (int c = 0; c < e.colors(); ++c) sum += e.tree_distance(c, a, b);
    return sum;
}

std::string to_string(PairKind k) {
    switch (k) {
        case PairKind::identical: return "identical";
        case PairKind::close: return "close";
        case PairKind::distinct: return "distinct";
        case PairKind::unclassified: return "unclassified";
    }
    return "?";
}

int critical_level(const Rational& d, const Rational& r) {
    if (d <= 0) throw std::invalid_argument("critical level needs a positive distance");
    int l = 0;
    while (power(r, l) > d) ++l;
    while (power(r, l - 1) <= d) --l;
    return l;
}

PairClassification classify_pair(const ApproxGraph& g, VertexId a, VertexId b) {
    if (a == b) return {PairKind::identical, 0};
    const int la = g.level(a), lb = g.level(b);
    if (la < 0 || lb < 0) return {PairKind::unclassified, 0};
    const Rational& d = g.space().distance(g.center(a), g.center(b));
    const Rational& r = g.scale().r;
    if (d < power(r, std::min(la, lb))) return {PairKind::close, 0};
    return {PairKind::distinct, critical_level(d, r)};
}

std::string vertex_name(const ApproxGraph& g, VertexId v) {
    return std::to_string(g.level(v)) + ":" + std::to_string(g.center(v));
}

namespace {

// Conditions of the distinct-pair bound with v the higher-level end; returns tree distance to the
// lowest path vertex, or -1 if the color fails.
int distinct_color_depth(const Stage1& e, int c, VertexId v, VertexId w, int dist, int l) {
    const auto& t = e.trees[static_cast<std::size_t>(c)].tree;
    const int fv = e.image_of(c, v), fw = e.image_of(c, w);
    const int low = t.common_ancestor(fv, fw);
    const int depth = t.distance(fv, low);
    const int k = e.colors();
    const bool levels_ok = std::max(t.level(fv), t.level(fw)) - l + 1 <= k * (depth + 1);
    const bool dist_ok = dist <= 2 * k * depth + 2 * k + 1;
    return levels_ok && dist_ok ? depth : -1;
}

}  // namespace

PairRecord examine_pair(const Stage1& e, const DistanceTable& d, VertexId a, VertexId b) {
    const ApproxGraph& g = *e.graph;
    PairRecord rec;
    rec.v = g.level(a) >= g.level(b) ? a : b;
    rec.w = rec.v == a ? b : a;
    rec.dist = d(a, b);
    rec.cls = classify_pair(g, a, b);
    const int k = e.colors();
    for (int c = 0; c < k; ++c) {
        const int lc = e.tree_distance(c, a, b);
        rec.tree_sum += lc;
        if (lc > 2 * rec.dist) rec.lipschitz_ok = false;
    }
    rec.bound_rhs = 2 * k * rec.tree_sum + 2 * k + 1;
    rec.global_ok = rec.dist <= rec.bound_rhs;

    if (rec.cls.kind == PairKind::close) {
        int best = -1;
        for (int c = 0; c < k; ++c) {
            const auto& t = e.trees[static_cast<std::size_t>(c)].tree;
            const int fv = e.image_of(c, rec.v), fw = e.image_of(c, rec.w);
            const int low = t.common_ancestor(fv, fw);
            if (low != fv && low != fw) rec.radial_ok = false;
            if (best < 0 || e.tree_distance(c, a, b) > e.tree_distance(best, a, b)) best = c;
        }
        rec.best_color = best;
        rec.bound_rhs = k * e.tree_distance(best, a, b) + k + 1;
        rec.bound_ok = rec.dist <= rec.bound_rhs;
    } else if (rec.cls.kind == PairKind::distinct) {
        // Equal levels admit both orientations, and the bound must hold for each.
        std::vector<std::pair<VertexId, VertexId>> orient{{rec.v, rec.w}};
        if (g.level(rec.v) == g.level(rec.w)) orient.emplace_back(rec.w, rec.v);
        for (auto [x, y] : orient) {
            int best = -1, best_depth = -1;
            for (int c = 0; c < k; ++c) {
                const int depth = distinct_color_depth(e, c, x, y, rec.dist, rec.cls.critical_level);
                if (depth > best_depth) {
                    best = c;
                    best_depth = depth;
                }
            }
            if (best < 0) {
                rec.bound_ok = false;
                rec.best_color = -1;
                rec.bound_rhs = 2 * k * 0 + 2 * k + 1;
                break;
            }
            if (x == rec.v) {
                rec.best_color = best;
                rec.bound_rhs = 2 * k * best_depth + 2 * k + 1;
            }
        }
    }
    return rec;
}

bool Stage1Report::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.ok(); });
}

namespace {

std::vector<std::pair<VertexId, VertexId>> all_pairs(std::size_t n) {
    std::vector<std::pair<VertexId, VertexId>> out;
    out.reserve(n * (n - 1) / 2);
    for (VertexId a = 0; a < n; ++a)
        for (VertexId b = a + 1; b < n; ++b) out.emplace_back(a, b);
    return out;
}

std::string pair_name(const ApproxGraph& g, VertexId a, VertexId b) {
    return "(" + vertex_name(g, a) + ", " + vertex_name(g, b) + ")";
}

}  // namespace

Stage1Report stage1_report(const Stage1& e, const DistanceTable& d, unsigned jobs) {
    const ApproxGraph& g = *e.graph;
    const auto pairs = all_pairs(g.size());
    struct Acc {
        CheckResult lip{"stage1.lipschitz"}, close{"stage1.close_pairs"}, distinct{"stage1.distinct_pairs"},
            global{"stage1.global"};
        std::size_t n_close = 0, n_distinct = 0;
        double worst_lip = 0, worst_global = 0;
    };
    std::vector<Acc> acc(std::max(1u, jobs));
    const int k = e.colors();
    parallel_chunks(pairs.size(), jobs, [&](unsigned wkr, std::size_t begin, std::size_t end) {
        Acc& a = acc[wkr];
        for (std::size_t i = begin; i < end; ++i) {
            const auto [x, y] = pairs[i];
            const PairRecord rec = examine_pair(e, d, x, y);
            const std::string name = pair_name(g, rec.v, rec.w);
            a.lip.record(rec.lipschitz_ok, name);
            a.global.record(rec.global_ok, name);
            for (int c = 0; c < k && rec.dist > 0; ++c)
                a.worst_lip = std::max(a.worst_lip, static_cast<double>(e.tree_distance(c, x, y)) / rec.dist);
            a.worst_global = std::max(a.worst_global, static_cast<double>(rec.dist) / (2 * k * rec.tree_sum + 2 * k + 1));
            if (rec.cls.kind == PairKind::close) {
                ++a.n_close;
                a.close.record(rec.radial_ok && rec.bound_ok, name);
            } else if (rec.cls.kind == PairKind::distinct) {
                ++a.n_distinct;
                a.distinct.record(rec.bound_ok, name + " l=" + std::to_string(rec.cls.critical_level));
            }
        }
    });
    Stage1Report rep;
    Acc total;
    for (const auto& a : acc) {
        total.lip.merge(a.lip);
        total.close.merge(a.close);
        total.distinct.merge(a.distinct);
        total.global.merge(a.global);
        total.n_close += a.n_close;
        total.n_distinct += a.n_distinct;
        total.worst_lip = std::max(total.worst_lip, a.worst_lip);
        total.worst_global = std::max(total.worst_global, a.worst_global);
    }
    rep.checks = {total.lip, total.close, total.distinct, total.global};
    rep.pairs = pairs.size();
    rep.close_pairs = total.n_close;
    rep.distinct_pairs = total.n_distinct;
    rep.worst_lipschitz = total.worst_lip;
    rep.worst_global = total.worst_global;
    return rep;
}

std::vector<CheckResult> stage1_lemma_checks(const Stage1& e, const DistanceTable& d, unsigned jobs) {
    const ApproxGraph& g = *e.graph;
    const CoveringGeometry& geo = *e.geo;
    const int k = e.colors();

    CheckResult image("stage1.image");
    for (int c = 0; c < k; ++c) {
        const ColorTree& ct = e.trees[static_cast<std::size_t>(c)];
        for (VertexId v = 0; v < g.size(); ++v) {
            const int f = e.image_of(c, v);
            const int j = g.level(v);
            if (v == g.root() || j <= 0) {
                image.record(f == 0, vertex_name(g, v) + " not sent to the root");
                continue;
            }
            const Ball b = geo.ball(j, g.center(v));
            bool ok = ct.tree.level(f) <= j - 1 && geo.ball_inside(b, *ct.elements[static_cast<std::size_t>(f)]);
            for (int jj = ct.tree.level(f) + 1; ok && jj <= std::min(j - 1, e.seq->top_level()); ++jj)
                for (int u : ct.by_level[static_cast<std::size_t>(jj)])
                    if (geo.ball_inside(b, *ct.elements[static_cast<std::size_t>(u)])) ok = false;
            image.record(ok, vertex_name(g, v) + " color " + std::to_string(c));
        }
    }

    CheckResult tree_levels("trees.generation_bound");
    for (const auto& ct : e.trees)
        for (std::size_t u = 0; u < ct.tree.size(); ++u)
            tree_levels.record(ct.tree.depth(static_cast<int>(u)) <= ct.tree.level(static_cast<int>(u)) - g.k0(),
                               ct.tree.label(static_cast<int>(u)));

    const auto pairs = all_pairs(g.size());
    struct Acc {
        CheckResult radial_close{"stage1.radial_close"}, crit_dist{"stage1.critical_level_distance"},
            crit_range{"stage1.critical_level_range"}, crit_tree{"stage1.critical_level_tree"};
    };
    std::vector<Acc> acc(std::max(1u, jobs));
    parallel_chunks(pairs.size(), jobs, [&](unsigned wkr, std::size_t begin, std::size_t end) {
        Acc& a = acc[wkr];
        for (std::size_t i = begin; i < end; ++i) {
            auto [x, y] = pairs[i];
            const auto cls = classify_pair(g, x, y);
            if (g.level(x) < g.level(y)) std::swap(x, y);
            const int lx = g.level(x), ly = g.level(y);
            const std::string name = pair_name(g, x, y);
            if (cls.kind == PairKind::close) {
                const bool ok = lx != ly && g.balls().contained(lx, g.center(x), ly, g.center(y)) && d(x, y) <= lx - ly + 1;
                a.radial_close.record(ok, name);
            } else if (cls.kind == PairKind::distinct) {
                const int l = cls.critical_level;
                a.crit_range.record(g.k0() < l && l <= std::min(lx, ly), name);
                a.crit_dist.record(d(x, y) <= lx + ly - 2 * l + 3, name);
                for (int c = 0; c < k; ++c) {
                    const ColorTree& ct = e.trees[static_cast<std::size_t>(c)];
                    std::vector<int> ux, uy;
                    for (std::size_t u = 0; u < ct.tree.size(); ++u) {
                        if (geo.contains_point(*ct.elements[u], g.center(x))) ux.push_back(static_cast<int>(u));
                        if (geo.contains_point(*ct.elements[u], g.center(y))) uy.push_back(static_cast<int>(u));
                    }
                    for (int u : ux)
                        for (int w : uy) {
                            const int low = ct.tree.common_ancestor(u, w);
                            auto below = [&](int end_vertex) {
                                int n = 0;
                                for (int z = end_vertex;; z = ct.tree.parent(z)) {
                                    n += ct.tree.level(z) < l ? 1 : 0;
                                    if (z == low) break;
                                }
                                return n;
                            };
                            const bool ok = ct.tree.level(low) < l && below(u) <= 3 && below(w) <= 3;
                            a.crit_tree.record(ok, name + " color " + std::to_string(c) + " " + ct.tree.label(u) + "," +
                                                       ct.tree.label(w));
                        }
                }
            }
        }
    });
    Acc total;
    for (const auto& a : acc) {
        total.radial_close.merge(a.radial_close);
        total.crit_dist.merge(a.crit_dist);
        total.crit_range.merge(a.crit_range);
        total.crit_tree.merge(a.crit_tree);
    }

    // Depth below a level: for v in V_{j+1} and i <= j some color keeps f_c(v) far from level i.
    CheckResult depth("stage1.radial_depth");
    const int top = e.seq->top_level();
    for (VertexId v = 0; v < g.size(); ++v) {
        const int j = g.level(v) - 1;
        if (j < 0 || j > top) continue;
        for (int i = 0; i <= j; ++i) {
            const int need = (j - i + 1 + k - 1) / k - 1;
            bool some = false;
            for (int c = 0; c < k && !some; ++c) {
                const ColorTree& ct = e.trees[static_cast<std::size_t>(c)];
                const int f = e.image_of(c, v);
                int to_level = std::numeric_limits<int>::max();
                for (int y : ct.by_level[static_cast<std::size_t>(i)]) to_level = std::min(to_level, ct.tree.distance(f, y));
                bool ok = to_level >= need;
                for (int w = f; ok && w != -1; w = ct.tree.parent(w))
                    if (ct.tree.level(w) <= i && ct.tree.distance(f, w) < need) ok = false;
                some = ok;
            }
            depth.record(some, vertex_name(g, v) + " i=" + std::to_string(i));
        }
    }
    return {image, tree_levels, total.radial_close, total.crit_range, total.crit_dist, total.crit_tree, depth};
}

void write_pairs_csv(std::ostream& os, const Stage1& e, const DistanceTable& d) {
    const ApproxGraph& g = *e.graph;
    os << "v,v',|vv'|,class,l,sum_tree_dist,best_color,bound_rhs,violation\n";
    for (const auto& [a, b] : all_pairs(g.size())) {
        const PairRecord rec = examine_pair(e, d, a, b);
        os << vertex_name(g, rec.v) << ',' << vertex_name(g, rec.w) << ',' << rec.dist << ',' << to_string(rec.cls.kind)
           << ',';
        if (rec.cls.kind == PairKind::distinct) os << rec.cls.critical_level;
        os << ',' << rec.tree_sum << ',';
        if (rec.best_color >= 0) os << rec.best_color;
        os << ',' << rec.bound_rhs << ',' << (rec.ok() ? 0 : 1) << '\n';
    }
}

}  // namespace treeprod
