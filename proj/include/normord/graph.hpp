#pragma once

#include "normord/arith.hpp"
#include "normord/boson.hpp"

#include <string>
#include <vector>

namespace normord {

// One-vertex graph for a term alpha (a†)^out a^in.
struct BuildingBlock {
    unsigned long out_lines = 0;
    unsigned long in_lines = 0;
    BigRat weight;
    friend bool operator==(const BuildingBlock&, const BuildingBlock&) = default;
};

// Free outgoing lines (white spots), free incoming lines (gray spots) and
// the summed weight of all graphs sharing them.
struct GraphLevelState {
    unsigned long white = 0;
    unsigned long gray = 0;
    BigRat multiplicity;
    friend bool operator==(const GraphLevelState&, const GraphLevelState&) = default;
};

// One block per nonzero term, in NormalForm order. Throws RangeError on an empty form.
std::vector<BuildingBlock> blocks_from(const NormalForm& nf);

// Adds one vertex to every state. The new vertex sits to the left of the
// graph built so far; j of its s incoming lines join j of the k free
// outgoing lines in C(s,j) k^(j falling) ways. Output is merged by (white, gray)
// and sorted like a NormalForm.
std::vector<GraphLevelState> enumerate_step(const std::vector<GraphLevelState>& states,
                                            const std::vector<BuildingBlock>& blocks);

// Coefficients of (a†)^k a^l counted over all graphs with n vertices.
struct CoeffTable {
    unsigned n = 0;
    NormalForm table;
    BigRat total_weight() const { return table.total_weight(); }
};

CoeffTable enumerate(const NormalForm& nf, unsigned n);

// NormalForm JSON schema plus "total_weight" and "vertices".
std::string coeff_table_to_json(const CoeffTable& t);

// A single labeled graph. joins[v] lists, for vertex v, the pairs
// (incoming line of v, earlier vertex whose outgoing line it consumes).
struct ExplicitGraph {
    std::vector<std::size_t> blocks;
    std::vector<std::vector<std::pair<unsigned long, std::size_t>>> joins;
    unsigned long white = 0;
    unsigned long gray = 0;
    BigRat weight;
};

// Every graph with n vertices, n <= 3 (RangeError beyond). Vertex 0 is the
// rightmost factor.
std::vector<ExplicitGraph> enumerate_explicit(const NormalForm& nf, unsigned n);
std::string describe(const ExplicitGraph& g);

}  // namespace normord
