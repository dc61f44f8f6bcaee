#include "bdnsat/backdoor.hpp"

#include "bdnsat/error.hpp"

#include <algorithm>
#include <cstdint>

namespace bdn {

bool HeadGraph::covered_by(const AtomSet& cover) const {
    return std::all_of(edges.begin(), edges.end(),
                       [&](const auto& e) { return cover.contains(e.first) || cover.contains(e.second); });
}

HeadGraph head_dependency_graph(const Program& p) {
    HeadGraph g;
    g.universe = p.universe();
    g.vertices = p.atoms().ids();
    for (const auto& r : p.rules())
        for (std::size_t i = 0; i < r.head.size(); ++i)
            for (std::size_t j = i + 1; j < r.head.size(); ++j)
                if (r.head[i] != r.head[j]) g.edges.emplace_back(std::min(r.head[i], r.head[j]), std::max(r.head[i], r.head[j]));
    std::sort(g.edges.begin(), g.edges.end());
    g.edges.erase(std::unique(g.edges.begin(), g.edges.end()), g.edges.end());
    return g;
}

namespace {

using Edge = std::pair<AtomId, AtomId>;

bool search(std::vector<Edge> edges, std::size_t budget, AtomSet& cover, std::size_t universe) {
    // Kernel: a vertex of degree > budget must be in every cover within budget.
    for (;;) {
        if (edges.empty()) return true;
        std::vector<std::size_t> degree(universe, 0);
        for (const auto& [u, v] : edges) ++degree[u], ++degree[v];
        auto forced = std::find_if(degree.begin(), degree.end(), [&](std::size_t d) { return d > budget; });
        if (forced == degree.end()) break;
        if (budget == 0) return false;
        const auto f = static_cast<AtomId>(forced - degree.begin());
        cover.insert(f);
        --budget;
        std::erase_if(edges, [&](const Edge& e) { return e.first == f || e.second == f; });
    }
    if (budget == 0 || edges.size() > budget * budget) return false;

    const Edge pick = edges.front();
    for (AtomId v : {pick.first, pick.second}) {
        std::vector<Edge> rest;
        rest.reserve(edges.size());
        for (const auto& e : edges)
            if (e.first != v && e.second != v) rest.push_back(e);
        AtomSet trial = cover;
        trial.insert(v);
        if (search(std::move(rest), budget - 1, trial, universe)) {
            cover = std::move(trial);
            return true;
        }
    }
    return false;
}

} // namespace

std::optional<AtomSet> vertex_cover_bounded(const HeadGraph& g, std::size_t k) {
    AtomSet cover(g.universe);
    if (!search(g.edges, k, cover, g.universe)) return std::nullopt;
    return cover;
}

TruthAssignment::TruthAssignment(AtomSet domain, AtomSet true_atoms)
    : domain_(std::move(domain)), true_(std::move(true_atoms)) {
    if (!true_.is_subset_of(domain_)) throw Error("truth assignment: true atoms outside the domain");
}

Program delete_atoms(const Program& p, const AtomSet& x) {
    std::vector<Rule> out;
    out.reserve(p.rules().size());
    auto strip = [&](const std::vector<AtomId>& v) {
        std::vector<AtomId> kept;
        for (auto a : v)
            if (!x.contains(a)) kept.push_back(a);
        return kept;
    };
    for (const auto& r : p.rules()) out.push_back(Rule{strip(r.head), strip(r.pos), strip(r.neg)});
    return p.with_rules(std::move(out));
}

Program assignment_reduct(const Program& p, const TruthAssignment& tau) {
    const AtomSet& x = tau.domain();
    const AtomSet& ones = tau.true_atoms();
    const AtomSet zeros = tau.false_atoms();
    auto any_in = [](const std::vector<AtomId>& v, const AtomSet& s) {
        return std::any_of(v.begin(), v.end(), [&](AtomId a) { return s.contains(a); });
    };
    auto strip = [&](const std::vector<AtomId>& v) {
        std::vector<AtomId> kept;
        for (auto a : v)
            if (!x.contains(a)) kept.push_back(a);
        return kept;
    };

    std::vector<Rule> out;
    for (const auto& r : p.rules()) {
        if (any_in(r.head, ones)) continue;                                                       // (i)
        if (std::all_of(r.head.begin(), r.head.end(), [&](AtomId a) { return x.contains(a); })) continue; // (ii)
        if (any_in(r.pos, zeros)) continue;                                                       // (iii)
        if (any_in(r.neg, ones)) continue;                                                        // (iv)
        out.push_back(Rule{strip(r.head), strip(r.pos), strip(r.neg)});
    }
    return p.with_rules(std::move(out));
}

bool verify_strong_backdoor(const Program& p, const AtomSet& x, bool exhaustive) {
    const bool deletion = delete_atoms(p, x).flags().normal;
    if (!exhaustive) return deletion;

    const auto ids = x.ids();
    if (ids.size() > 20) throw GuardError("verify_strong_backdoor: exhaustive check limited to 20 atoms");
    bool strong = true;
    for (std::uint64_t mask = 0; strong && mask < (std::uint64_t{1} << ids.size()); ++mask) {
        AtomSet ones(p.universe());
        for (std::size_t j = 0; j < ids.size(); ++j)
            if ((mask >> j) & 1u) ones.insert(ids[j]);
        strong = assignment_reduct(p, TruthAssignment(x, ones)).flags().normal;
    }
    if (strong != deletion) throw Error("verify_strong_backdoor: strong and deletion checks disagree");
    return deletion;
}

std::optional<Backdoor> find_backdoor(const Program& p, std::size_t max_k) {
    const HeadGraph g = head_dependency_graph(p);
    for (std::size_t k = 0; k <= max_k; ++k) {
        if (auto cover = vertex_cover_bounded(g, k)) {
            if (!verify_strong_backdoor(p, *cover)) throw Error("find_backdoor: cover is not a backdoor");
            return Backdoor{std::move(*cover), BackdoorKind::strong, true};
        }
    }
    return std::nullopt;
}

std::string format_backdoor(const Program& p, const AtomSet& x) {
    std::vector<std::string> names;
    x.for_each([&](AtomId a) { names.push_back(p.table().name(a)); });
    std::sort(names.begin(), names.end());
    std::string out;
    for (const auto& n : names) out += n + "\n";
    return out;
}

AtomSet parse_atom_list(const Program& p, const std::string& text) {
    std::vector<std::string> names;
    std::string cur;
    for (char c : text) {
        if (c == ',' || c == ' ' || c == '\t' || c == '\n' || c == '\r') {
            if (!cur.empty()) names.push_back(std::move(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) names.push_back(std::move(cur));
    return p.set_of(names);
}

} // namespace bdn
