#include "treeprod/labelling.hpp"

#include "treeprod/morse_thue.hpp"
#include "treeprod/parallel.hpp"

#include <algorithm>
#include <limits>

namespace treeprod {

bool conflicting(const ApproxGraph& g, VertexId a, VertexId b) {
    const int k = g.level(a);
    return a != b && k == g.level(b) && g.space().distance(g.center(a), g.center(b)) < 2 * power(g.scale().r, k - 2);
}

NetColoring color_nets(const ApproxGraph& g) {
    NetColoring col;
    col.mu.assign(g.size(), -1);
    for (int k = g.k0(); k <= g.max_level(); ++k) {
        const auto& level = g.level_vertices(k);
        int used = 0, degree = 0;
        for (std::size_t i = 0; i < level.size(); ++i) {
            std::vector<char> taken;
            int deg = 0;
            for (std::size_t j = 0; j < level.size(); ++j) {
                if (!conflicting(g, level[i], level[j])) continue;
                ++deg;
                const int m = col.mu[level[j]];
                if (m < 0) continue;
                if (static_cast<std::size_t>(m) >= taken.size()) taken.resize(static_cast<std::size_t>(m) + 1, 0);
                taken[static_cast<std::size_t>(m)] = 1;
            }
            int c = 0;
            while (static_cast<std::size_t>(c) < taken.size() && taken[static_cast<std::size_t>(c)]) ++c;
            col.mu[level[i]] = c;
            used = std::max(used, c + 1);
            degree = std::max(degree, deg);
        }
        col.used_per_level.push_back(used);
        col.max_degree.push_back(degree);
        col.palette = std::max(col.palette, used);
    }
    return col;
}

CheckResult check_coloring(const ApproxGraph& g, const NetColoring& col) {
    CheckResult res("labelling.coloring");
    for (int k = g.k0(); k <= g.max_level(); ++k) {
        const auto& level = g.level_vertices(k);
        for (std::size_t i = 0; i < level.size(); ++i)
            for (std::size_t j = i + 1; j < level.size(); ++j)
                if (conflicting(g, level[i], level[j]))
                    res.record(col.color(level[i]) != col.color(level[j]),
                               vertex_name(g, level[i]) + " and " + vertex_name(g, level[j]) + " share a color");
        const auto idx = static_cast<std::size_t>(k - g.k0());
        res.record(col.used_per_level[idx] <= col.max_degree[idx] + 1, "level " + std::to_string(k) + " exceeds the greedy bound");
    }
    return res;
}

std::string format_subset(const std::vector<int>& subset) {
    std::string out = "{";
    for (std::size_t i = 0; i < subset.size(); ++i) out += (i ? "," : "") + std::to_string(subset[i]);
    return out + "}";
}

std::uint32_t SubsetAlphabet::intern(const std::vector<int>& subset) {
    if (subset.empty()) throw std::invalid_argument("letters are nonempty color subsets");
    auto it = ids_.find(subset);
    if (it != ids_.end()) return it->second;
    const auto id = lexicon_.intern(format_subset(subset));
    subsets_.push_back(subset);
    ids_[subset] = id;
    return id;
}

Letter edge_letter(const Stage1& e, const NetColoring& col, SubsetAlphabet& alphabet, const ColorTree& ct, int u, int k) {
    const ApproxGraph& g = *e.graph;
    const CoveringElement& el = *ct.elements[static_cast<std::size_t>(u)];
    std::vector<int> subset;
    for (VertexId v : g.level_vertices(k + 1))
        if (e.geo->ball_meets(e.geo->ball(k + 1, g.center(v)), el)) subset.push_back(col.color(v));
    std::sort(subset.begin(), subset.end());
    subset.erase(std::unique(subset.begin(), subset.end()), subset.end());
    return Letter{alphabet.intern(subset), static_cast<std::int8_t>(mt_bit(static_cast<std::size_t>(k)))};
}

Labelling build_labelling(const Stage1& e) {
    Labelling lab;
    lab.stage1 = &e;
    lab.coloring = color_nets(*e.graph);
    for (const auto& ct : e.trees) {
        const auto n = ct.tree.size();
        std::vector<Word> words(n);
        std::vector<Sentence> sentences(n);
        for (std::size_t u = 1; u < n; ++u) {
            const int p = ct.tree.parent(static_cast<int>(u));
            const int top = ct.tree.level(static_cast<int>(u));
            for (int k = ct.tree.level(p) + 1; k <= top; ++k) words[u].push_back(edge_letter(e, lab.coloring, lab.alphabet, ct, static_cast<int>(u), k));
            sentences[u] = sentences[static_cast<std::size_t>(p)];
            sentences[u].insert(sentences[u].end(), words[u].begin(), words[u].end());
            sentences[u].push_back(stop_sign(mt_bit(static_cast<std::size_t>(top))));
        }
        lab.edge_words.push_back(std::move(words));
        lab.sentences.push_back(std::move(sentences));
    }
    return lab;
}

std::vector<CheckResult> labelling_checks(const Labelling& lab) {
    const Stage1& e = *lab.stage1;
    CheckResult coloring = check_coloring(*e.graph, lab.coloring);
    CheckResult words("labelling.edge_words"), sentences("labelling.sentences"), bits("labelling.decoration");
    for (int c = 0; c < e.colors(); ++c) {
        const ColorTree& ct = e.trees[static_cast<std::size_t>(c)];
        for (std::size_t u = 1; u < ct.tree.size(); ++u) {
            const int ui = static_cast<int>(u);
            const Word& w = lab.edge_words[static_cast<std::size_t>(c)][u];
            const std::string name = "color " + std::to_string(c) + " " + ct.tree.label(ui);
            words.record(!w.empty() && static_cast<int>(w.size()) == ct.tree.level(ui) - ct.tree.level(ct.tree.parent(ui)), name);
            const Sentence& s = lab.sentence_of(c, ui);
            const auto split = split_words(s);
            const bool no_empty = std::none_of(split.begin(), split.end(), [](const Word& x) { return x.empty(); });
            const auto m = static_cast<int>(split.size());
            sentences.record(no_empty && m == ct.tree.depth(ui) && m <= ct.tree.level(ui) &&
                                 sentence_length(s) == ct.tree.level(ui),
                             name);
            bits.record(is_decorated(s), name);
        }
        sentences.record(lab.sentence_of(c, 0).empty(), "root sentence of color " + std::to_string(c) + " is not empty");
    }
    return {coloring, words, sentences, bits};
}

std::optional<CriticalLetters> critical_letters(const Sentence& s, const Sentence& s2, int l) {
    auto find = [l](const Sentence& x) -> std::optional<std::pair<Letter, std::size_t>> {
        int level = 0;
        std::size_t stops = 0;
        for (const auto& a : x) {
            if (a.is_stop()) {
                ++stops;
                continue;
            }
            if (++level == l) return std::make_pair(a, stops);
        }
        return std::nullopt;
    };
    if (l < 1) return std::nullopt;
    const auto a = find(s), b = find(s2);
    if (!a || !b) return std::nullopt;
    return CriticalLetters{a->first, b->first, a->second, b->second};
}

CheckResult critical_letters_check(const Labelling& lab, unsigned jobs) {
    const Stage1& e = *lab.stage1;
    const ApproxGraph& g = *e.graph;
    // Elements containing each net point, per color.
    std::vector<std::vector<std::vector<int>>> holders(static_cast<std::size_t>(e.colors()));
    for (int c = 0; c < e.colors(); ++c) {
        const ColorTree& ct = e.trees[static_cast<std::size_t>(c)];
        auto& h = holders[static_cast<std::size_t>(c)];
        h.resize(g.size());
        for (VertexId v = 0; v < g.size(); ++v)
            for (std::size_t u = 0; u < ct.tree.size(); ++u)
                if (e.geo->contains_point(*ct.elements[u], g.center(v))) h[v].push_back(static_cast<int>(u));
    }
    std::vector<std::pair<VertexId, VertexId>> pairs;
    for (VertexId a = 0; a < g.size(); ++a)
        for (VertexId b = a + 1; b < g.size(); ++b)
            if (classify_pair(g, a, b).kind == PairKind::distinct) pairs.emplace_back(a, b);

    std::vector<CheckResult> acc(std::max(1u, jobs), CheckResult("labelling.critical_letters"));
    parallel_chunks(pairs.size(), jobs, [&](unsigned w, std::size_t begin, std::size_t end) {
        CheckResult& res = acc[w];
        for (std::size_t i = begin; i < end; ++i) {
            const auto [x, y] = pairs[i];
            const int l = classify_pair(g, x, y).critical_level;
            if (l < 1) {
                ++res.inconclusive;
                continue;
            }
            for (int c = 0; c < e.colors(); ++c) {
                const ColorTree& ct = e.trees[static_cast<std::size_t>(c)];
                for (int u : holders[static_cast<std::size_t>(c)][x])
                    for (int u2 : holders[static_cast<std::size_t>(c)][y]) {
                        if (ct.tree.level(u) < l + 1 || ct.tree.level(u2) < l + 1 || u == u2) {
                            ++res.inconclusive;
                            continue;
                        }
                        const auto cl = critical_letters(lab.sentence_of(c, u), lab.sentence_of(c, u2), l);
                        const bool ok = cl && cl->a != cl->b && (cl->m > cl->m2 ? cl->m - cl->m2 : cl->m2 - cl->m) <= 2;
                        res.record(ok, vertex_name(g, x) + ", " + vertex_name(g, y) + " color " + std::to_string(c) + " " +
                                           ct.tree.label(u) + " vs " + ct.tree.label(u2));
                    }
            }
        }
    });
    CheckResult total("labelling.critical_letters");
    for (const auto& r : acc) total.merge(r);
    return total;
}

int min_kappa(int colors) { return 15 * colors + 1; }

int sigma_absorbed(int colors) { return std::max(3 * colors + 1, 15 * colors * colors + 4 * colors + 1); }

const Diary& Stage2::eta(int c, VertexId v) const {
    return diaries[static_cast<std::size_t>(c)][static_cast<std::size_t>(labelling->stage1->image_of(c, v))];
}

int Stage2::eta_distance(int c, VertexId a, VertexId b) const { return word_distance(eta(c, a), eta(c, b)); }

int Stage2::eta_l1(VertexId a, VertexId b) const {
    int sum = 0;
    for (int c = 0; c < colors(); ++c) sum += eta_distance(c, a, b);
    return sum;
}

Stage2 build_stage2(const Labelling& lab, int kappa, bool research) {
    const int colors = lab.stage1->colors();
    if (kappa < 1) throw KappaError("diary constant must be at least 1");
    if (kappa < min_kappa(colors) && !research)
        throw KappaError("diary constant " + std::to_string(kappa) + " is below 15|C|+1 = " + std::to_string(min_kappa(colors)));
    Stage2 s;
    s.labelling = &lab;
    s.kappa = kappa;
    for (const auto& sentences : lab.sentences) {
        std::vector<Diary> d;
        d.reserve(sentences.size());
        for (const auto& x : sentences) d.push_back(encode(x, kappa));
        s.diaries.push_back(std::move(d));
    }
    return s;
}

bool QiReport::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.ok(); });
}

QiReport qi_report(const Stage2& s, const DistanceTable& d, unsigned jobs) {
    const Stage1& e = *s.labelling->stage1;
    const ApproxGraph& g = *e.graph;
    const int k = s.colors();
    QiReport rep;
    rep.sigma = sigma_absorbed(k);

    CheckResult radial("stage2.radial");
    for (int c = 0; c < k; ++c) {
        const ColorTree& ct = e.trees[static_cast<std::size_t>(c)];
        const auto& ds = s.diaries[static_cast<std::size_t>(c)];
        for (std::size_t u = 0; u < ct.tree.size(); ++u) {
            const int ui = static_cast<int>(u);
            bool ok = static_cast<int>(ds[u].size()) == ct.tree.depth(ui);
            if (u > 0) {
                const Diary& up = ds[static_cast<std::size_t>(ct.tree.parent(ui))];
                ok = ok && up.size() <= ds[u].size() && std::equal(up.begin(), up.end(), ds[u].begin());
            }
            radial.record(ok, "color " + std::to_string(c) + " " + ct.tree.label(ui));
        }
    }

    std::vector<std::pair<VertexId, VertexId>> pairs;
    for (VertexId a = 0; a < g.size(); ++a)
        for (VertexId b = a + 1; b < g.size(); ++b) pairs.emplace_back(a, b);
    rep.pairs = pairs.size();

    struct Acc {
        CheckResult lip{"stage2.lipschitz"}, upper{"stage2.upper"}, lower{"stage2.lower"};
        double upper_worst = 0, lambda_fit = std::numeric_limits<double>::infinity(), sigma_fit = 0;
        long lower_worst = std::numeric_limits<long>::min();
        std::vector<std::string> violations;
    };
    std::vector<Acc> acc(std::max(1u, jobs));
    constexpr std::size_t max_listed = 20;
    parallel_chunks(pairs.size(), jobs, [&](unsigned w, std::size_t begin, std::size_t end) {
        Acc& a = acc[w];
        for (std::size_t i = begin; i < end; ++i) {
            const auto [x, y] = pairs[i];
            const int dist = d(x, y);
            int sum = 0;
            bool lip = true;
            for (int c = 0; c < k; ++c) {
                const int ec = s.eta_distance(c, x, y);
                lip = lip && ec <= 2 * dist;
                sum += ec;
            }
            const std::string name = "(" + vertex_name(g, x) + ", " + vertex_name(g, y) + ")";
            const bool up = sum <= 2 * k * dist;
            const bool low = dist <= 2 * k * sum + rep.sigma;
            a.lip.record(lip, name);
            a.upper.record(up, name);
            a.lower.record(low, name);
            if ((!lip || !up || !low) && a.violations.size() < max_listed)
                a.violations.push_back(name + " |vv'|=" + std::to_string(dist) + " |eta|=" + std::to_string(sum));
            if (dist > 0) {
                a.upper_worst = std::max(a.upper_worst, static_cast<double>(sum) / dist);
                a.lambda_fit = std::min(a.lambda_fit, (sum + 5.0) / dist);
            }
            a.lower_worst = std::max(a.lower_worst, static_cast<long>(dist) - 2L * k * sum);
            a.sigma_fit = std::max(a.sigma_fit, static_cast<double>(dist) / (2.0 * k) - sum);
        }
    });
    Acc total;
    for (auto& a : acc) {
        total.lip.merge(a.lip);
        total.upper.merge(a.upper);
        total.lower.merge(a.lower);
        total.upper_worst = std::max(total.upper_worst, a.upper_worst);
        total.lambda_fit = std::min(total.lambda_fit, a.lambda_fit);
        total.sigma_fit = std::max(total.sigma_fit, a.sigma_fit);
        total.lower_worst = std::max(total.lower_worst, a.lower_worst);
        for (auto& v : a.violations)
            if (total.violations.size() < max_listed) total.violations.push_back(std::move(v));
    }
    rep.upper_worst = total.upper_worst;
    rep.lower_worst = pairs.empty() ? 0 : total.lower_worst;
    rep.lambda_fit = pairs.empty() ? 0 : total.lambda_fit;
    rep.sigma_fit = total.sigma_fit;
    rep.violations = std::move(total.violations);
    rep.checks = {radial, total.lip, total.upper, total.lower};
    return rep;
}

CheckResult composition_check(const Stage2& s) {
    CheckResult res("stage2.composition");
    const Labelling& lab = *s.labelling;
    for (int c = 0; c < s.colors(); ++c) {
        const auto& ds = s.diaries[static_cast<std::size_t>(c)];
        for (std::size_t u = 0; u < ds.size(); ++u) {
            bool ok = false;
            try {
                ok = membership(reconstruct(ds[u], s.kappa), lab.sentence_of(c, static_cast<int>(u)));
            } catch (const DiaryError&) {
                ok = false;
            }
            res.record(ok, "color " + std::to_string(c) + " vertex " + std::to_string(u));
        }
    }
    return res;
}

int BinaryStage::page_id(const Page& p) const {
    const auto it = std::lower_bound(pages.begin(), pages.end(), p);
    if (it == pages.end() || *it != p) throw std::out_of_range("page does not occur");
    return static_cast<int>(it - pages.begin()) + 1;
}

BinaryStage build_binary_stage(const Stage2& s) {
    BinaryStage b;
    for (const auto& ds : s.diaries)
        for (const auto& d : ds) b.pages.insert(b.pages.end(), d.begin(), d.end());
    std::sort(b.pages.begin(), b.pages.end());
    b.pages.erase(std::unique(b.pages.begin(), b.pages.end()), b.pages.end());
    const int n = std::max<int>(1, static_cast<int>(b.pages.size()));
    b.width = binary_width(n);
    for (const auto& ds : s.diaries) {
        std::vector<std::vector<std::uint8_t>> codes;
        for (const auto& d : ds) {
            std::vector<int> word;
            for (const auto& p : d) word.push_back(b.page_id(p));
            codes.push_back(binary_embed(word, n));
        }
        b.codes.push_back(std::move(codes));
    }
    return b;
}

CheckResult binary_sandwich_check(const Stage2& s, const BinaryStage& b) {
    CheckResult res("binary.sandwich");
    // Distinct occurring page words with their codes.
    std::map<Diary, std::vector<std::uint8_t>> words;
    for (std::size_t c = 0; c < s.diaries.size(); ++c)
        for (std::size_t u = 0; u < s.diaries[c].size(); ++u) words.emplace(s.diaries[c][u], b.codes[c][u]);
    const int lambda = b.width;
    for (auto i = words.begin(); i != words.end(); ++i)
        for (auto j = i; j != words.end(); ++j) {
            const int l = word_distance(i->first, j->first);
            const int lb = word_distance(i->second, j->second);
            const bool ok = lambda * (l - 2) + 2 <= lb && lb <= lambda * l;
            res.record(ok, "page words at distance " + std::to_string(l) + " map to " + std::to_string(lb));
        }
    return res;
}

}  // namespace treeprod
