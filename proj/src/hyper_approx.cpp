#include "treeprod/hyper_approx.hpp"

#include "treeprod/parallel.hpp"

#include <algorithm>
#include <deque>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>

namespace treeprod {

const std::vector<VertexId>& ApproxGraph::level_vertices(int k) const {
    static const std::vector<VertexId> none;
    if (k < k0() || k > max_level()) return none;
    return by_level_[static_cast<std::size_t>(k - k0())];
}

std::optional<VertexId> ApproxGraph::find(int level, PointId center) const {
    if (level < k0() || level > max_level() || center >= space().size()) return std::nullopt;
    auto idx = index_[static_cast<std::size_t>(level - k0())][center];
    if (idx < 0) return std::nullopt;
    return static_cast<VertexId>(idx);
}

std::size_t ApproxGraph::edge_count(EdgeKind kind) const {
    return static_cast<std::size_t>(std::count_if(edges_.begin(), edges_.end(), [&](const ApproxEdge& e) { return e.kind == kind; }));
}

ApproxGraph build_approximation(std::shared_ptr<const BallSystem> balls) {
    ApproxGraph g;
    g.balls_ = std::move(balls);
    const auto& space = g.space();
    const auto& scale = g.scale();
    if (scale.max_level < scale.k0) throw std::invalid_argument("J < k0");
    const std::size_t n = space.size();

    for (int k = scale.k0; k <= scale.max_level; ++k) {
        auto net = maximal_separated_net(space, g.balls().scale_at(k));
        std::vector<VertexId> ids;
        std::vector<std::int32_t> idx(n, -1);
        for (PointId c : net) {
            idx[c] = static_cast<std::int32_t>(g.vertices_.size());
            ids.push_back(g.vertices_.size());
            g.vertices_.push_back(ApproxVertex{k, c});
        }
        g.by_level_.push_back(std::move(ids));
        g.index_.push_back(std::move(idx));
    }
    if (g.by_level_.front().size() != 1) throw std::logic_error("level k0 must hold a single vertex");

    g.adjacency_.assign(g.vertices_.size(), {});
    auto add = [&](VertexId a, VertexId b, EdgeKind kind) {
        g.edges_.push_back(ApproxEdge{a, b, kind});
        g.adjacency_[a].emplace_back(b, kind);
        g.adjacency_[b].emplace_back(a, kind);
    };
    const bool certified = g.balls().semantics() == BallSemantics::certified;
    for (int k = scale.k0; k <= scale.max_level; ++k) {
        const auto& here = g.level_vertices(k);
        for (std::size_t i = 0; i < here.size(); ++i)
            for (std::size_t j = i + 1; j < here.size(); ++j) {
                PointId a = g.center(here[i]), b = g.center(here[j]);
                if (g.balls().closed_meet(k, a, b)) add(here[i], here[j], EdgeKind::horizontal);
                if (certified && space.distance(a, b) == 2 * g.balls().radius(k)) ++g.horizontal_ties;
            }
        if (k == scale.max_level) continue;
        for (VertexId up : g.level_vertices(k + 1))
            for (VertexId low : here) {
                PointId a = g.center(up), b = g.center(low);
                if (g.balls().nested(k, a, b)) add(low, up, EdgeKind::radial);
                if (certified && space.distance(a, b) + g.balls().radius(k + 1) == g.balls().radius(k)) ++g.radial_ties;
            }
    }
    return g;
}

ApproxGraph build_approximation(const FiniteMetricSpace& space, const ScaleParams& scale, BallSemantics semantics) {
    return build_approximation(std::make_shared<const BallSystem>(space, scale, semantics));
}

std::vector<int> bfs_distances(const ApproxGraph& g, VertexId source) {
    std::vector<int> dist(g.size(), -1);
    std::deque<VertexId> queue{source};
    dist[source] = 0;
    while (!queue.empty()) {
        VertexId x = queue.front();
        queue.pop_front();
        for (auto [y, kind] : g.neighbors(x)) {
            (void)kind;
            if (dist[y] < 0) {
                dist[y] = dist[x] + 1;
                queue.push_back(y);
            }
        }
    }
    return dist;
}

int graph_distance(const ApproxGraph& g, VertexId a, VertexId b) { return bfs_distances(g, a)[b]; }

DistanceTable all_pairs_distances(const ApproxGraph& g, unsigned jobs) {
    DistanceTable t(g.size());
    parallel_chunks(g.size(), jobs, [&](unsigned, std::size_t b, std::size_t e) {
        for (VertexId s = b; s < e; ++s) {
            auto row = bfs_distances(g, s);
            for (VertexId x = 0; x < g.size(); ++x) t.at(s, x) = row[x];
        }
    });
    return t;
}

std::string to_string(HalfInt h) {
    if (h.twice % 2 == 0) return std::to_string(h.twice / 2);
    return std::to_string(h.twice) + "/2";
}

HalfInt gromov_product(const DistanceTable& d, VertexId o, VertexId x, VertexId y) {
    return HalfInt{static_cast<long>(d(o, x)) + d(o, y) - d(x, y)};
}

DeltaEstimate estimate_delta(const ApproxGraph& g, const DistanceTable& d, std::optional<VertexId> base,
                             std::size_t exhaustive_limit, std::uint64_t samples, unsigned seed, unsigned jobs) {
    const VertexId o = base.value_or(g.root());
    const std::size_t n = g.size();
    DeltaEstimate est;
    auto excess = [&](VertexId x, VertexId y, VertexId z) {
        long xy = gromov_product(d, o, x, y).twice;
        long yz = gromov_product(d, o, y, z).twice;
        long xz = gromov_product(d, o, x, z).twice;
        return std::max({std::min(xy, yz) - xz, std::min(xy, xz) - yz, std::min(xz, yz) - xy, 0L});
    };
    if (n <= exhaustive_limit) {
        std::vector<long> best(std::max(1u, jobs), 0);
        std::vector<std::uint64_t> counts(best.size(), 0);
        parallel_chunks(n, jobs, [&](unsigned w, std::size_t b, std::size_t e) {
            for (VertexId x = b; x < e; ++x)
                for (VertexId y = x; y < n; ++y)
                    for (VertexId z = y; z < n; ++z) {
                        best[w] = std::max(best[w], excess(x, y, z));
                        ++counts[w];
                    }
        });
        est.delta.twice = *std::max_element(best.begin(), best.end());
        for (auto c : counts) est.triples += c;
        est.exhaustive = true;
    } else {
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<std::size_t> pick(0, n - 1);
        long best = 0;
        for (std::uint64_t i = 0; i < samples; ++i) best = std::max(best, excess(pick(rng), pick(rng), pick(rng)));
        est.delta.twice = best;
        est.triples = samples;
        est.exhaustive = false;
    }
    return est;
}

VisualConstants visual_metric_constants(const ApproxGraph& g, const DistanceTable& d) {
    const auto& deep = g.level_vertices(g.max_level());
    if (deep.size() < 2) throw std::invalid_argument("visual constants need two vertices at the deepest level");
    const double a = 1.0 / to_double(g.scale().r);
    VisualConstants vc;
    bool first = true;
    for (std::size_t i = 0; i < deep.size(); ++i)
        for (std::size_t j = i + 1; j < deep.size(); ++j) {
            HalfInt gp = gromov_product(d, g.root(), deep[i], deep[j]);
            double val = to_double(g.space().distance(g.center(deep[i]), g.center(deep[j]))) * std::pow(a, gp.value());
            if (first) {
                vc.c1 = vc.c2 = val;
                first = false;
            }
            vc.c1 = std::min(vc.c1, val);
            vc.c2 = std::max(vc.c2, val);
            ++vc.pairs;
        }
    return vc;
}

VertexId central_ancestor(const ApproxGraph& g, VertexId v) {
    const int k = g.level(v);
    if (k == g.k0()) throw std::invalid_argument("the root has no central ancestor");
    for (VertexId w : g.level_vertices(k - 1))
        if (g.space().distance(g.center(v), g.center(w)) <= g.balls().scale_at(k - 1)) return w;
    throw std::logic_error("no central ancestor: the net at level " + std::to_string(k - 1) + " is not maximal");
}

namespace {

std::string vname(const ApproxGraph& g, VertexId v) {
    return std::to_string(g.level(v)) + ":" + std::to_string(g.center(v));
}

bool adjacent(const ApproxGraph& g, VertexId a, VertexId b, EdgeKind kind) {
    for (auto [y, k] : g.neighbors(a))
        if (y == b && k == kind) return true;
    return false;
}

}  // namespace

CheckResult check_connected(const ApproxGraph& g, const DistanceTable& d) {
    CheckResult r{"approx.connected"};
    for (VertexId v = 0; v < g.size(); ++v) r.record(d(g.root(), v) >= 0, "vertex " + vname(g, v) + " unreachable from the root");
    return r;
}

CheckResult check_central_ancestors(const ApproxGraph& g) {
    CheckResult r{"approx.central_ancestor"};
    for (VertexId v = 1; v < g.size(); ++v) {
        VertexId w;
        try {
            w = central_ancestor(g, v);
        } catch (const std::exception& e) {
            r.record(false, e.what());
            continue;
        }
        bool ok = adjacent(g, v, w, EdgeKind::radial);
        for (auto [u, kind] : g.neighbors(v))
            if (kind == EdgeKind::horizontal) ok = ok && adjacent(g, u, w, EdgeKind::radial);
        r.record(ok, "central ancestor " + vname(g, w) + " of " + vname(g, v) + " misses a radial edge");
    }
    return r;
}

CheckResult check_balls_intersect_bound(const ApproxGraph& g, const DistanceTable& d) {
    CheckResult r{"approx.balls_intersect_bound"};
    for (VertexId a = 0; a < g.size(); ++a)
        for (VertexId b = a + 1; b < g.size(); ++b) {
            if (!g.balls().open_meet(g.level(a), g.center(a), g.level(b), g.center(b))) continue;
            int bound = std::abs(g.level(a) - g.level(b)) + 1;
            r.record(d(a, b) <= bound, vname(g, a) + " " + vname(g, b) + " at distance " + std::to_string(d(a, b)));
        }
    return r;
}

CheckResult check_horizontal_descent(const ApproxGraph& g, const DistanceTable& d) {
    CheckResult r{"approx.horizontal_descent"};
    auto lower = [&](VertexId v) {
        std::vector<VertexId> out;
        for (auto [u, kind] : g.neighbors(v))
            if (g.level(u) == g.level(v) - 1) out.push_back(u);
        return out;
    };
    for (int k = g.k0() + 1; k <= g.max_level(); ++k) {
        const auto& here = g.level_vertices(k);
        for (std::size_t i = 0; i < here.size(); ++i)
            for (std::size_t j = i; j < here.size(); ++j) {
                if (d(here[i], here[j]) > 1) continue;
                for (VertexId w : lower(here[i]))
                    for (VertexId w2 : lower(here[j]))
                        r.record(d(w, w2) <= 1, vname(g, w) + " " + vname(g, w2) + " below " + vname(g, here[i]) + " " +
                                                    vname(g, here[j]));
            }
    }
    return r;
}

CheckResult check_geodesic_shape(const ApproxGraph& g, const DistanceTable& d, unsigned jobs) {
    // Per source, a dynamic program over the shortest-path DAG tracks, for every vertex x,
    // which (horizontal edges used, lowest level) combinations some geodesic to x realizes.
    // A state with one horizontal edge is kept only while that edge sits at the lowest level.
    const std::size_t n = g.size();
    const int levels = g.max_level() - g.k0() + 1;
    if (levels > 63) throw std::invalid_argument("too many levels for the geodesic check");
    std::vector<CheckResult> parts(std::max(1u, jobs), CheckResult{"approx.geodesic_shape"});
    parallel_chunks(n, jobs, [&](unsigned w, std::size_t b, std::size_t e) {
        std::vector<std::uint64_t> none(n), one(n);
        std::vector<VertexId> order(n);
        for (VertexId s = b; s < e; ++s) {
            std::fill(none.begin(), none.end(), 0);
            std::fill(one.begin(), one.end(), 0);
            for (VertexId x = 0; x < n; ++x) order[x] = x;
            std::sort(order.begin(), order.end(), [&](VertexId x, VertexId y) { return d(s, x) < d(s, y); });
            none[s] = std::uint64_t{1} << (g.level(s) - g.k0());
            for (VertexId x : order) {
                if (d(s, x) < 0) continue;
                for (auto [y, kind] : g.neighbors(x)) {
                    if (d(s, y) != d(s, x) + 1) continue;
                    const int ly = g.level(y) - g.k0();
                    const std::uint64_t up_to = (std::uint64_t{2} << ly) - 1;  // levels <= ly
                    if (kind == EdgeKind::radial) {
                        none[y] |= none[x] & up_to;
                        if (none[x] & ~up_to) none[y] |= std::uint64_t{1} << ly;
                        one[y] |= one[x] & up_to;
                    } else if (none[x] & ~((std::uint64_t{1} << ly) - 1)) {
                        one[y] |= std::uint64_t{1} << ly;
                    }
                }
            }
            for (VertexId t = 0; t < n; ++t) {
                if (t == s) continue;
                parts[w].record(none[t] || one[t], "no admissible geodesic between " + vname(g, s) + " and " + vname(g, t));
            }
        }
    });
    CheckResult out{"approx.geodesic_shape"};
    for (auto& p : parts) out.merge(p);
    return out;
}

CheckResult check_visual_band(const ApproxGraph& g, const DistanceTable& d, const VisualConstants& vc) {
    CheckResult r{"approx.visual_band"};
    const auto& deep = g.level_vertices(g.max_level());
    struct P {
        long gp;
        double dist;
    };
    std::vector<P> pairs;
    for (std::size_t i = 0; i < deep.size(); ++i)
        for (std::size_t j = i + 1; j < deep.size(); ++j)
            pairs.push_back(P{gromov_product(d, g.root(), deep[i], deep[j]).twice,
                              to_double(g.space().distance(g.center(deep[i]), g.center(deep[j])))});
    // Larger products must not come with distances beyond the c2/c1 band.
    std::sort(pairs.begin(), pairs.end(), [](const P& a, const P& b) { return a.gp < b.gp; });
    const double band = vc.c2 / vc.c1 * (1 + 1e-12);
    double min_dist_so_far = 0;
    bool have = false;
    for (std::size_t i = 0; i < pairs.size();) {
        std::size_t j = i;
        while (j < pairs.size() && pairs[j].gp == pairs[i].gp) ++j;
        for (std::size_t t = i; t < j; ++t)
            if (have) r.record(pairs[t].dist <= band * min_dist_so_far, "deepest pair with product " + std::to_string(pairs[t].gp) + "/2 is too far apart");
        for (std::size_t t = i; t < j; ++t) {
            min_dist_so_far = have ? std::min(min_dist_so_far, pairs[t].dist) : pairs[t].dist;
            have = true;
        }
        i = j;
    }
    return r;
}

void write_edges(std::ostream& os, const ApproxGraph& g) {
    for (const auto& e : g.edges())
        os << vname(g, e.a) << ' ' << vname(g, e.b) << ' ' << (e.kind == EdgeKind::horizontal ? 'H' : 'R') << '\n';
}

}  // namespace treeprod
