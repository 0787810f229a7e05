#pragma once

#include "treeprod/rational.hpp"

#include <array>
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace treeprod {

using PointId = std::size_t;

// Where the sample lives, if anywhere; certificates are drawn in this ambient space.
enum class AmbientKind { none, line, circle, plane };

struct Ambient {
    AmbientKind kind = AmbientKind::none;
    // line: x in coords[i][0]; circle: position in [0,1) of a unit-circumference circle; plane: (x, y), sup metric
    std::vector<std::array<Rational, 2>> coords;
};

class MetricError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

struct MetricViolation {
    enum class Kind { shape, asymmetric, nonzero_diagonal, zero_off_diagonal, negative, triangle } kind;
    std::size_t i = 0, j = 0, k = 0;
    std::string describe() const;
};

std::optional<MetricViolation> validate_metric(const std::vector<std::vector<Rational>>& d);

class FiniteMetricSpace {
   public:
    FiniteMetricSpace(std::string name, std::vector<std::vector<Rational>> distances, Ambient ambient = {});

    std::size_t size() const { return d_.size(); }
    const Rational& distance(PointId a, PointId b) const { return d_[a][b]; }
    const Rational& diameter() const { return diameter_; }
    const Rational& min_distance() const { return min_distance_; }
    const Ambient& ambient() const { return ambient_; }
    const std::string& name() const { return name_; }

   private:
    std::string name_;
    std::vector<std::vector<Rational>> d_;
    Ambient ambient_;
    Rational diameter_;
    Rational min_distance_;
};

// Left endpoints of the 2^depth triadic intervals of the middle-thirds construction.
FiniteMetricSpace generate_cantor(int depth);
// n equally spaced points on a circle of circumference 1 with arc-length metric.
FiniteMetricSpace generate_circle(int n);
// n x n grid on [0,1]^2 with the sup metric.
FiniteMetricSpace generate_grid(int n);

FiniteMetricSpace load_space_csv(std::istream& in, std::string name = "file");

// Largest k with diam < r^k.
int compute_k0(const Rational& diam, const Rational& r);

// Greedy maximal separated net; order lists candidate ids (defaults to ascending ids).
std::vector<PointId> maximal_separated_net(const FiniteMetricSpace& space, const Rational& separation,
                                           const std::vector<PointId>& order = {});

int doubling_estimate(const FiniteMetricSpace& space, std::size_t max_centers = 256, unsigned seed = 1);

struct ScaleParams {
    Rational r;
    int k0 = 0;
    int max_level = 0;  // J

    Rational scale(int k) const { return power(r, k); }
    Rational ball_radius(int k) const { return 2 * power(r, k); }
};

// Validates r in (0, 1/6]; J defaults to the first level whose net is all of Z, then capped.
ScaleParams make_scale(const FiniteMetricSpace& space, const Rational& r, std::optional<int> max_level = std::nullopt,
                       int level_cap = 12);

}  // namespace treeprod
