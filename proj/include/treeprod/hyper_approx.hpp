#pragma once

#include "treeprod/balls.hpp"
#include "treeprod/checks.hpp"

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

namespace treeprod {

using VertexId = std::size_t;

struct ApproxVertex {
    int level;
    PointId center;
};

enum class EdgeKind : std::uint8_t { horizontal, radial };

struct ApproxEdge {
    VertexId a, b;
    EdgeKind kind;
};

class ApproxGraph {
   public:
    const BallSystem& balls() const { return *balls_; }
    std::shared_ptr<const BallSystem> balls_ptr() const { return balls_; }
    const FiniteMetricSpace& space() const { return balls_->space(); }
    const ScaleParams& scale() const { return balls_->scale(); }
    int k0() const { return scale().k0; }
    int max_level() const { return scale().max_level; }

    std::size_t size() const { return vertices_.size(); }
    const ApproxVertex& vertex(VertexId v) const { return vertices_[v]; }
    int level(VertexId v) const { return vertices_[v].level; }
    PointId center(VertexId v) const { return vertices_[v].center; }
    VertexId root() const { return 0; }

    // Vertices of level k in ascending center order.
    const std::vector<VertexId>& level_vertices(int k) const;
    std::optional<VertexId> find(int level, PointId center) const;
    const std::vector<std::pair<VertexId, EdgeKind>>& neighbors(VertexId v) const { return adjacency_[v]; }
    const std::vector<ApproxEdge>& edges() const { return edges_; }
    std::size_t edge_count(EdgeKind kind) const;

    // Certified comparisons that hit their threshold exactly (open/closed boundary cases).
    std::size_t horizontal_ties = 0, radial_ties = 0;

    friend ApproxGraph build_approximation(std::shared_ptr<const BallSystem> balls);

   private:
    std::shared_ptr<const BallSystem> balls_;
    std::vector<ApproxVertex> vertices_;
    std::vector<std::vector<VertexId>> by_level_;
    std::vector<std::vector<std::int32_t>> index_;
    std::vector<std::vector<std::pair<VertexId, EdgeKind>>> adjacency_;
    std::vector<ApproxEdge> edges_;
};

ApproxGraph build_approximation(std::shared_ptr<const BallSystem> balls);
ApproxGraph build_approximation(const FiniteMetricSpace& space, const ScaleParams& scale,
                                BallSemantics semantics = BallSemantics::certified);

// All-pairs BFS distances; -1 marks unreachable pairs.
class DistanceTable {
   public:
    DistanceTable() = default;
    explicit DistanceTable(std::size_t n) : n_(n), d_(n * n, -1) {}
    int operator()(VertexId a, VertexId b) const { return d_[a * n_ + b]; }
    int& at(VertexId a, VertexId b) { return d_[a * n_ + b]; }
    std::size_t size() const { return n_; }

   private:
    std::size_t n_ = 0;
    std::vector<int> d_;
};

std::vector<int> bfs_distances(const ApproxGraph& g, VertexId source);
int graph_distance(const ApproxGraph& g, VertexId a, VertexId b);
DistanceTable all_pairs_distances(const ApproxGraph& g, unsigned jobs = 1);

// Exact half-integers, stored doubled.
struct HalfInt {
    long twice = 0;
    double value() const { return static_cast<double>(twice) / 2.0; }
    friend bool operator==(HalfInt a, HalfInt b) { return a.twice == b.twice; }
    friend auto operator<=>(HalfInt a, HalfInt b) { return a.twice <=> b.twice; }
};

std::string to_string(HalfInt h);

HalfInt gromov_product(const DistanceTable& d, VertexId o, VertexId x, VertexId y);

struct DeltaEstimate {
    HalfInt delta;
    bool exhaustive = true;
    std::uint64_t triples = 0;
};

DeltaEstimate estimate_delta(const ApproxGraph& g, const DistanceTable& d, std::optional<VertexId> base = std::nullopt,
                             std::size_t exhaustive_limit = 300, std::uint64_t samples = 2'000'000,
                             unsigned seed = 7, unsigned jobs = 1);

struct VisualConstants {
    double c1 = 0, c2 = 0;
    std::size_t pairs = 0;
};

VisualConstants visual_metric_constants(const ApproxGraph& g, const DistanceTable& d);

VertexId central_ancestor(const ApproxGraph& g, VertexId v);

// Property checks over the whole graph.
CheckResult check_connected(const ApproxGraph& g, const DistanceTable& d);
CheckResult check_central_ancestors(const ApproxGraph& g);
CheckResult check_balls_intersect_bound(const ApproxGraph& g, const DistanceTable& d);
CheckResult check_horizontal_descent(const ApproxGraph& g, const DistanceTable& d);
// Some shortest path between every pair has at most one horizontal edge, lying at the path's lowest level.
CheckResult check_geodesic_shape(const ApproxGraph& g, const DistanceTable& d, unsigned jobs = 1);
CheckResult check_visual_band(const ApproxGraph& g, const DistanceTable& d, const VisualConstants& vc);

void write_edges(std::ostream& os, const ApproxGraph& g);

}  // namespace treeprod
