#include "treeprod/io.hpp"

#include <ostream>

namespace treeprod {

namespace {

Json interval_json(const Interval& iv) { return Json::array({to_string(iv.lo), to_string(iv.hi)}); }

Interval interval_from(const Json& j) {
    if (!j.is_array() || j.size() != 2) throw std::invalid_argument("interval must be a pair [lo, hi]");
    return Interval{parse_rational(j[0].get<std::string>()), parse_rational(j[1].get<std::string>())};
}

Json element_json(const CoveringElement& u) {
    Json e;
    e["id"] = u.id;
    const Region& reg = u.certificate;
    if (reg.kind() == Region::Kind::whole) {
        e["whole"] = true;
        e["intervals"] = Json::array();
    } else if (reg.kind() == Region::Kind::plane) {
        Json boxes = Json::array();
        for (const auto& b : reg.boxes()) boxes.push_back(Json::array({interval_json(b[0]), interval_json(b[1])}));
        e["intervals"] = boxes;
    } else {
        Json pieces = Json::array();
        for (const auto& iv : reg.pieces()) pieces.push_back(interval_json(iv));
        e["intervals"] = pieces;
    }
    return e;
}

Region region_from(const Json& e, AmbientKind ambient) {
    if (e.value("whole", false)) return Region::whole();
    const Json& ivs = e.at("intervals");
    switch (ambient) {
        case AmbientKind::line:
        case AmbientKind::circle: {
            std::vector<Interval> pieces;
            for (const auto& iv : ivs) pieces.push_back(interval_from(iv));
            return ambient == AmbientKind::line ? Region::line(std::move(pieces)) : Region::circle(std::move(pieces));
        }
        case AmbientKind::plane: {
            std::vector<std::array<Interval, 2>> boxes;
            for (const auto& b : ivs) {
                if (!b.is_array() || b.size() != 2) throw std::invalid_argument("plane element needs [[xlo,xhi],[ylo,yhi]] boxes");
                boxes.push_back({interval_from(b[0]), interval_from(b[1])});
            }
            return Region::plane(std::move(boxes));
        }
        case AmbientKind::none: break;
    }
    throw std::invalid_argument("space has no ambient coordinates; only whole-space elements can be loaded");
}

}  // namespace

Json covering_to_json(const CoveringSequence& seq) {
    Json j;
    j["r"] = to_string(seq.r);
    j["colors"] = seq.colors;
    Json levels = Json::array();
    for (int lv = 0; lv <= seq.top_level(); ++lv) {
        Json fams = Json::object();
        for (int c = 0; c < seq.colors; ++c) {
            Json list = Json::array();
            for (const auto& u : seq.family(lv, c)) list.push_back(element_json(u));
            fams[std::to_string(c)] = list;
        }
        levels.push_back(Json{{"j", lv}, {"families", fams}});
    }
    j["levels"] = levels;
    return j;
}

CoveringSequence covering_from_json(const Json& j, const CoveringGeometry& geo) {
    CoveringSequence seq;
    seq.r = parse_rational(j.at("r").get<std::string>());
    seq.colors = j.at("colors").get<int>();
    if (seq.colors < 1) throw CoveringError("covering needs at least one color");
    const AmbientKind ambient = geo.balls().space().ambient().kind;
    const Json& levels = j.at("levels");
    for (std::size_t i = 0; i < levels.size(); ++i) {
        const Json& lvj = levels[i];
        const int lv = lvj.at("j").get<int>();
        if (lv != static_cast<int>(i)) throw CoveringError("levels must be listed as 0, 1, 2, ...");
        std::vector<std::vector<CoveringElement>> fams(static_cast<std::size_t>(seq.colors));
        for (const auto& [key, list] : lvj.at("families").items()) {
            const int c = std::stoi(key);
            if (c < 0 || c >= seq.colors) throw CoveringError("color " + key + " out of range");
            for (const auto& e : list)
                fams[static_cast<std::size_t>(c)].push_back(geo.make(e.at("id").get<std::string>(), c, lv, region_from(e, ambient)));
        }
        seq.families.push_back(std::move(fams));
        if (lv > 0) seq.lattice.emplace_back();
    }
    return seq;
}

Json graph_summary(const ApproxGraph& g, const DeltaEstimate& delta, const VisualConstants& vc) {
    Json levels = Json::array();
    for (int k = g.k0(); k <= g.max_level(); ++k)
        levels.push_back(Json{{"k", k}, {"vertices", g.level_vertices(k).size()}});
    Json j;
    j["levels"] = levels;
    j["vertexCount"] = g.size();
    j["edgeCounts"] = Json{{"H", g.edge_count(EdgeKind::horizontal)}, {"R", g.edge_count(EdgeKind::radial)}};
    j["delta"] = to_string(delta.delta);
    j["deltaExhaustive"] = delta.exhaustive;
    j["c1"] = vc.c1;
    j["c2"] = vc.c2;
    return j;
}

Json embedding_json(const Stage2& s, const BinaryStage& b) {
    const Labelling& lab = *s.labelling;
    const Stage1& e = *lab.stage1;
    const ApproxGraph& g = *e.graph;
    const Lexicon& lex = lab.alphabet.lexicon();
    Json pages = Json::array();
    for (const auto& p : b.pages) pages.push_back(format(p, lex));
    Json vertices = Json::array();
    for (VertexId v = 0; v < g.size(); ++v) {
        Json colors = Json::array();
        for (int c = 0; c < s.colors(); ++c) {
            const int u = e.image_of(c, v);
            Json ps = Json::array();
            for (const auto& p : s.eta(c, v)) ps.push_back(format(p, lex));
            std::string bits;
            for (auto x : b.codes[static_cast<std::size_t>(c)][static_cast<std::size_t>(u)]) bits += static_cast<char>('0' + x);
            colors.push_back(Json{{"color", c}, {"element", e.trees[static_cast<std::size_t>(c)].tree.label(u)}, {"pages", ps}, {"binary", bits}});
        }
        vertices.push_back(Json{{"vertex", vertex_name(g, v)}, {"colors", colors}});
    }
    return Json{{"kappa", s.kappa}, {"pageAlphabet", pages}, {"binaryWidth", b.width}, {"vertices", vertices}};
}

Json check_json(const CheckResult& c) {
    Json j;
    j["id"] = c.id;
    j["status"] = to_string(c.status());
    j["checked"] = c.checked;
    j["violations"] = c.violations;
    j["inconclusive"] = c.inconclusive;
    if (!c.first_violation.empty()) j["firstViolation"] = c.first_violation;
    return j;
}

void write_json(std::ostream& os, const Json& j) { os << j.dump(2) << '\n'; }

}  // namespace treeprod
