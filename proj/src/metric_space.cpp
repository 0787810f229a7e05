#include "treeprod/metric_space.hpp"

#include <algorithm>
#include <istream>
#include <random>
#include <set>
#include <sstream>

namespace treeprod {

std::string MetricViolation::describe() const {
    std::ostringstream os;
    switch (kind) {
        case Kind::shape: os << "distance matrix is not square at row " << i; break;
        case Kind::asymmetric: os << "d(" << i << "," << j << ") != d(" << j << "," << i << ")"; break;
        case Kind::nonzero_diagonal: os << "d(" << i << "," << i << ") != 0"; break;
        case Kind::zero_off_diagonal: os << "d(" << i << "," << j << ") = 0 for distinct points"; break;
        case Kind::negative: os << "d(" << i << "," << j << ") < 0"; break;
        case Kind::triangle:
            os << "triangle inequality fails: d(" << i << "," << k << ") > d(" << i << "," << j << ") + d(" << j << ","
               << k << ")";
            break;
    }
    return os.str();
}

std::optional<MetricViolation> validate_metric(const std::vector<std::vector<Rational>>& d) {
    using K = MetricViolation::Kind;
    const std::size_t n = d.size();
    for (std::size_t i = 0; i < n; ++i)
        if (d[i].size() != n) return MetricViolation{K::shape, i};
    for (std::size_t i = 0; i < n; ++i) {
        if (d[i][i] != 0) return MetricViolation{K::nonzero_diagonal, i, i};
        for (std::size_t j = 0; j < n; ++j) {
            if (d[i][j] < 0) return MetricViolation{K::negative, i, j};
            if (i != j && d[i][j] == 0) return MetricViolation{K::zero_off_diagonal, i, j};
            if (d[i][j] != d[j][i]) return MetricViolation{K::asymmetric, i, j};
        }
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                if (d[i][k] > d[i][j] + d[j][k]) return MetricViolation{K::triangle, i, j, k};
    return std::nullopt;
}

FiniteMetricSpace::FiniteMetricSpace(std::string name, std::vector<std::vector<Rational>> distances, Ambient ambient)
    : name_(std::move(name)), d_(std::move(distances)), ambient_(std::move(ambient)) {
    if (d_.size() < 2) throw MetricError("a space needs at least two points (trivial space)");
    if (auto bad = validate_metric(d_)) throw MetricError("not a metric: " + bad->describe());
    if (ambient_.kind != AmbientKind::none && ambient_.coords.size() != d_.size())
        throw MetricError("ambient coordinates do not match the point count");
    diameter_ = 0;
    min_distance_ = d_[0][1];
    for (std::size_t i = 0; i < d_.size(); ++i)
        for (std::size_t j = i + 1; j < d_.size(); ++j) {
            diameter_ = std::max(diameter_, d_[i][j]);
            min_distance_ = std::min(min_distance_, d_[i][j]);
        }
}

FiniteMetricSpace generate_cantor(int depth) {
    if (depth < 1) throw MetricError("cantor depth must be >= 1");
    if (depth > 16) throw MetricError("cantor depth too large");
    const std::size_t n = std::size_t{1} << depth;
    Ambient amb{AmbientKind::line, {}};
    amb.coords.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        Rational x = 0;
        Rational third = Rational(1, 3);
        for (int b = depth - 1; b >= 0; --b) {
            if ((i >> b) & 1u) x += 2 * third;
            third /= 3;
        }
        amb.coords[i] = {x, 0};
    }
    std::vector<std::vector<Rational>> d(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) d[i][j] = abs(amb.coords[i][0] - amb.coords[j][0]);
    return FiniteMetricSpace("cantor(" + std::to_string(depth) + ")", std::move(d), std::move(amb));
}

FiniteMetricSpace generate_circle(int n) {
    if (n < 2) throw MetricError("circle needs n >= 2");
    Ambient amb{AmbientKind::circle, {}};
    amb.coords.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) amb.coords[static_cast<std::size_t>(i)] = {Rational(i, n), 0};
    std::vector<std::vector<Rational>> d(static_cast<std::size_t>(n), std::vector<Rational>(static_cast<std::size_t>(n)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            int gap = std::abs(i - j);
            d[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = Rational(std::min(gap, n - gap), n);
        }
    return FiniteMetricSpace("circle(" + std::to_string(n) + ")", std::move(d), std::move(amb));
}

FiniteMetricSpace generate_grid(int n) {
    if (n < 2) throw MetricError("grid needs n >= 2");
    const std::size_t m = static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
    Ambient amb{AmbientKind::plane, {}};
    amb.coords.resize(m);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            amb.coords[static_cast<std::size_t>(i * n + j)] = {Rational(i, n - 1), Rational(j, n - 1)};
    std::vector<std::vector<Rational>> d(m, std::vector<Rational>(m));
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b)
            d[a][b] = std::max(abs(amb.coords[a][0] - amb.coords[b][0]), abs(amb.coords[a][1] - amb.coords[b][1]));
    return FiniteMetricSpace("grid(" + std::to_string(n) + ")", std::move(d), std::move(amb));
}

FiniteMetricSpace load_space_csv(std::istream& in, std::string name) {
    std::string line;
    if (!std::getline(in, line)) throw MetricError("empty space file");
    std::size_t n = 0;
    try {
        n = std::stoul(line);
    } catch (const std::exception&) {
        throw MetricError("first line must hold the point count");
    }
    std::vector<std::vector<Rational>> d;
    d.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::getline(in, line)) throw MetricError("space file ends after " + std::to_string(i) + " rows");
        std::vector<Rational> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            try {
                row.push_back(parse_rational(cell));
            } catch (const std::exception& e) {
                throw MetricError("row " + std::to_string(i) + ": " + e.what());
            }
        }
        if (row.size() != n) throw MetricError("row " + std::to_string(i) + " has " + std::to_string(row.size()) + " entries");
        d.push_back(std::move(row));
    }
    return FiniteMetricSpace(std::move(name), std::move(d));
}

int compute_k0(const Rational& diam, const Rational& r) {
    if (diam <= 0) throw MetricError("diameter must be positive (trivial space)");
    if (r <= 0 || r >= 1) throw MetricError("r must lie in (0,1)");
    // r^k grows as k decreases, so scan down from the first k with r^k <= diam.
    int k = 0;
    while (power(r, k) > diam) ++k;
    while (!(diam < power(r, k))) --k;
    return k;
}

std::vector<PointId> maximal_separated_net(const FiniteMetricSpace& space, const Rational& separation,
                                           const std::vector<PointId>& order) {
    if (separation <= 0) throw MetricError("net separation must be positive");
    std::vector<PointId> ids = order;
    if (ids.empty()) {
        ids.resize(space.size());
        for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = i;
    }
    std::vector<PointId> net;
    for (PointId p : ids) {
        bool far = std::all_of(net.begin(), net.end(), [&](PointId q) { return space.distance(p, q) >= separation; });
        if (far) net.push_back(p);
    }
    return net;
}

int doubling_estimate(const FiniteMetricSpace& space, std::size_t max_centers, unsigned seed) {
    const std::size_t n = space.size();
    std::set<Rational> radii;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) radii.insert(space.distance(i, j));

    std::vector<PointId> centers(n);
    for (std::size_t i = 0; i < n; ++i) centers[i] = i;
    if (n > max_centers) {
        std::mt19937 rng(seed);
        std::shuffle(centers.begin(), centers.end(), rng);
        centers.resize(max_centers);
        std::sort(centers.begin(), centers.end());
    }

    int best = 1;
    std::vector<PointId> ball;
    std::vector<char> covered;
    for (PointId z : centers) {
        for (const Rational& rho : radii) {
            ball.clear();
            for (PointId y = 0; y < n; ++y)
                if (space.distance(z, y) < rho) ball.push_back(y);
            covered.assign(ball.size(), 0);
            const Rational half = rho / 2;
            int count = 0;
            for (std::size_t a = 0; a < ball.size(); ++a) {
                if (covered[a]) continue;
                ++count;
                for (std::size_t b = a; b < ball.size(); ++b)
                    if (space.distance(ball[a], ball[b]) < half) covered[b] = 1;
            }
            best = std::max(best, count);
        }
    }
    return best;
}

ScaleParams make_scale(const FiniteMetricSpace& space, const Rational& r, std::optional<int> max_level, int level_cap) {
    if (r <= 0 || r > Rational(1, 6)) throw MetricError("r must lie in (0, 1/6], got " + to_string(r));
    ScaleParams s;
    s.r = r;
    s.k0 = compute_k0(space.diameter(), r);
    if (max_level) {
        if (*max_level < s.k0) throw MetricError("max level J is below k0");
        s.max_level = *max_level;
    } else {
        int J = s.k0;
        while (power(r, J) > space.min_distance() && J < level_cap) ++J;
        s.max_level = std::max(J, s.k0);
    }
    return s;
}

}  // namespace treeprod
