#pragma once

#include "treeprod/hyper_approx.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace treeprod {

struct CoveringElement {
    std::string id;
    int color = 0;
    int level = 0;
    Region certificate;
    PointSet members;
};

// Lattice family at one level: count cells per unit period, cell side, base offset,
// and one extra shift per color (diagonal shift on the plane).
struct LatticeParams {
    int count = 1;
    Rational side;
    Rational base;
    std::vector<Rational> shifts;
};

// Levels 0..top; families[j][c] is the disjoint family of color c at level j.
struct CoveringSequence {
    Rational r;
    int colors = 1;
    std::vector<std::vector<std::vector<CoveringElement>>> families;
    // Lattice parameters used for levels 1..top, when lattice-generated.
    std::vector<std::optional<LatticeParams>> lattice;

    int top_level() const { return static_cast<int>(families.size()) - 1; }
    const std::vector<CoveringElement>& family(int j, int c) const {
        return families.at(static_cast<std::size_t>(j)).at(static_cast<std::size_t>(c));
    }
};

class CoveringError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

// A ball B(z) at level k, with its certificate precomputed under certified semantics.
struct Ball {
    int k = 0;
    PointId z = 0;
    std::optional<Region> region;
};

// Relations between balls and covering elements under the chosen ball semantics.
class CoveringGeometry {
   public:
    explicit CoveringGeometry(const BallSystem& balls) : balls_(&balls) {}

    const BallSystem& balls() const { return *balls_; }
    // Fills members from the certificate.
    void attach(CoveringElement& u) const;
    CoveringElement make(std::string id, int color, int level, Region certificate) const;

    Ball ball(int k, PointId z) const;
    bool ball_inside(const Ball& b, const CoveringElement& u) const;
    bool ball_meets(const Ball& b, const CoveringElement& u) const;
    bool inside(const CoveringElement& inner, const CoveringElement& outer) const;
    bool disjoint(const CoveringElement& a, const CoveringElement& b) const;
    bool contains_point(const CoveringElement& u, PointId z) const;
    Rational diameter(const CoveringElement& u) const;
    std::optional<Rational> distance_to_complement(const CoveringElement& u, PointId z) const;

   private:
    const BallSystem* balls_;
};

Rational mesh(const std::vector<const CoveringElement*>& family, const CoveringGeometry& geo);
Rational lebesgue_number(const std::vector<const CoveringElement*>& covering, const CoveringGeometry& geo);
// All elements of one level, every color.
std::vector<const CoveringElement*> level_elements(const CoveringSequence& seq, int j);

struct CoveringReport {
    std::vector<CheckResult> checks;
    std::vector<Rational> mesh;       // by level
    std::vector<Rational> lebesgue;   // by level
    bool passed() const;
    std::string first_violation() const;
};

// Number of sequence levels the graph needs: 0..max(J,1)-1.
int required_covering_levels(const ApproxGraph& g);

CoveringReport validate_covering_sequence(const CoveringSequence& seq, const ApproxGraph& g, const CoveringGeometry& geo,
                                          int only_level = -1);

enum class CoveringKind { ultrametric, shifted_arcs, shifted_cubes };
std::string to_string(CoveringKind k);
CoveringKind parse_covering_kind(const std::string& s);

struct GeneratorOptions {
    int colors = 1;
    // Per level 1..top; missing entries are searched for.
    std::vector<std::optional<LatticeParams>> lattice;
    bool validate = true;
    // Lattice candidates tried per level before giving up.
    std::size_t search_limit = 4000;
};

CoveringSequence generate_covering_sequence(CoveringKind kind, const ApproxGraph& g, const CoveringGeometry& geo,
                                            const GeneratorOptions& opts);

// Lattice elements for one level, empty cells dropped.
std::vector<std::vector<CoveringElement>> lattice_level(CoveringKind kind, int j, const LatticeParams& p,
                                                        const CoveringGeometry& geo);

}  // namespace treeprod
