#include "normord/graph.hpp"

#include "normord/error.hpp"

#include <json.hpp>

#include <map>

namespace normord {

std::vector<BuildingBlock> blocks_from(const NormalForm& nf) {
    if (nf.empty()) throw RangeError("blocks_from: empty normal form");
    std::vector<BuildingBlock> out;
    for (const auto& [key, c] : nf.terms()) out.push_back({key.dag, key.ann, c});
    return out;
}

std::vector<GraphLevelState> enumerate_step(const std::vector<GraphLevelState>& states,
                                            const std::vector<BuildingBlock>& blocks) {
    NormalForm merged;
    for (const auto& st : states)
        for (const auto& b : blocks) {
            const unsigned long j_max = std::min(st.white, b.in_lines);
            for (unsigned long j = 0; j <= j_max; ++j) {
                const BigInt ways = binomial(b.in_lines, j) * falling_factorial(BigInt(st.white), j);
                merged.add(st.white - j + b.out_lines, st.gray + b.in_lines - j,
                           st.multiplicity * b.weight * BigRat(ways));
            }
        }
    std::vector<GraphLevelState> out;
    for (const auto& [key, c] : merged.terms()) out.push_back({key.dag, key.ann, c});
    return out;
}

CoeffTable enumerate(const NormalForm& nf, unsigned n) {
    const auto blocks = blocks_from(nf);
    std::vector<GraphLevelState> states{{0, 0, 1}};
    for (unsigned i = 0; i < n; ++i) states = enumerate_step(states, blocks);
    CoeffTable t{n, {}};
    for (const auto& st : states) t.table.add(st.white, st.gray, st.multiplicity);
    return t;
}

std::string coeff_table_to_json(const CoeffTable& t) {
    nlohmann::json j = nlohmann::json::parse(nf_to_json(t.table));
    j["total_weight"] = to_string(t.total_weight());
    j["vertices"] = t.n;
    return j.dump();
}

namespace {

struct Partial {
    ExplicitGraph graph;
    // Free outgoing lines as (vertex, line index).
    std::vector<std::pair<std::size_t, unsigned long>> free_out;
};

// All ways to attach some incoming lines of a new vertex to distinct free
// outgoing lines: each incoming line either stays free or picks an unused one.
void attach(const Partial& base, const BuildingBlock& block, std::size_t block_index, unsigned long line,
            std::vector<bool>& used, std::vector<std::pair<unsigned long, std::size_t>>& joins,
            std::vector<Partial>& out) {
    if (line == block.in_lines) {
        Partial next = base;
        const std::size_t v = next.graph.blocks.size();
        next.graph.blocks.push_back(block_index);
        next.graph.joins.push_back(joins);
        next.free_out.clear();
        for (std::size_t i = 0; i < base.free_out.size(); ++i)
            if (!used[i]) next.free_out.push_back(base.free_out[i]);
        for (unsigned long o = 0; o < block.out_lines; ++o) next.free_out.emplace_back(v, o);
        next.graph.white = next.free_out.size();
        next.graph.gray = base.graph.gray + block.in_lines - joins.size();
        next.graph.weight = base.graph.weight * block.weight;
        out.push_back(std::move(next));
        return;
    }
    attach(base, block, block_index, line + 1, used, joins, out);
    for (std::size_t i = 0; i < base.free_out.size(); ++i) {
        if (used[i]) continue;
        used[i] = true;
        joins.emplace_back(line, base.free_out[i].first);
        attach(base, block, block_index, line + 1, used, joins, out);
        joins.pop_back();
        used[i] = false;
    }
}

}  // namespace

std::vector<ExplicitGraph> enumerate_explicit(const NormalForm& nf, unsigned n) {
    if (n > 3) throw RangeError("explicit graph listing is limited to n <= 3");
    const auto blocks = blocks_from(nf);
    std::vector<Partial> level{Partial{{{}, {}, 0, 0, 1}, {}}};
    for (unsigned i = 0; i < n; ++i) {
        std::vector<Partial> next;
        for (const auto& p : level)
            for (std::size_t b = 0; b < blocks.size(); ++b) {
                std::vector<bool> used(p.free_out.size(), false);
                std::vector<std::pair<unsigned long, std::size_t>> joins;
                attach(p, blocks[b], b, 0, used, joins, next);
            }
        level = std::move(next);
    }
    std::vector<ExplicitGraph> out;
    for (auto& p : level) out.push_back(std::move(p.graph));
    return out;
}

std::string describe(const ExplicitGraph& g) {
    std::string s;
    for (std::size_t v = 0; v < g.blocks.size(); ++v) {
        if (v > 0) s += ' ';
        s += "v" + std::to_string(v) + ":b" + std::to_string(g.blocks[v]);
        for (const auto& [line, src] : g.joins[v]) s += " in" + std::to_string(line) + "<-v" + std::to_string(src);
    }
    s += " | white " + std::to_string(g.white) + " gray " + std::to_string(g.gray) + " weight " + to_string(g.weight);
    return s;
}

}  // namespace normord
