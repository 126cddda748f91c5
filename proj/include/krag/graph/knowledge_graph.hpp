#pragma once

#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "krag/corpus/corpus.hpp"
#include "krag/index/vector_index.hpp"
#include "krag/retrieval_unit.hpp"

namespace krag::llm {
class Gateway;
}

namespace krag::graph {

struct Triplet {
    std::string subject;
    std::string relation;
    std::string object;
    corpus::ChunkRef provenance;

    auto operator<=>(const Triplet&) const = default;
};

// Query-side pattern; subject is always concrete, relation/object may be
// the wildcard "*".
struct TripletPattern {
    std::string subject;
    std::string relation{"*"};
    std::string object{"*"};
};

class KnowledgeGraph {
public:
    // Entities are normalized on insert; exact duplicate edges collapse.
    void add(Triplet edge);

    std::size_t node_count() const { return nodes_.size(); }
    std::size_t edge_count() const { return edges_.size(); }
    bool empty() const { return edges_.empty(); }
    bool has_node(const std::string& entity) const { return nodes_.count(entity) > 0; }

    const std::set<std::string>& nodes() const { return nodes_; }
    const std::vector<Triplet>& edges() const { return edges_; }
    // Indices of edges touching an entity (as subject or object).
    const std::vector<std::size_t>& incident(const std::string& entity) const;

    void export_file(const std::filesystem::path& path) const;
    static KnowledgeGraph import_file(const std::filesystem::path& path);

private:
    std::set<std::string> nodes_;
    std::vector<Triplet> edges_;
    std::set<Triplet> edge_set_;
    std::map<std::string, std::vector<std::size_t>> adjacency_;
};

class GraphLoadError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

KnowledgeGraph build_graph(const std::vector<Triplet>& triplets);

struct Subgraph {
    std::set<std::string> seed_entities;
    std::vector<Triplet> edges;  // sorted by (subject, relation, object, provenance)
    int hop_depth{0};

    bool empty() const { return edges.empty(); }
};

// Hop-bounded match around the pattern entities:
//  - seeds = pattern subjects and concrete pattern objects present in the graph
//  - an edge leaving a seed must be consistent with some pattern's
//    non-wildcard fields (the hop-0 constraint); traversal beyond that is
//    unconstrained
//  - an edge is included iff both endpoints lie within hop_depth of a seed
//    under that traversal.
Subgraph match_subgraph(const KnowledgeGraph& graph, const std::vector<TripletPattern>& patterns,
                        int hop_depth);

// Line-oriented parse of `subject | relation | object` triplets; bad lines
// are skipped and counted.
std::vector<Triplet> parse_triplet_lines(const std::string& text, const corpus::ChunkRef& provenance,
                                         std::size_t* skipped = nullptr);
std::vector<TripletPattern> parse_pattern_lines(const std::string& text,
                                                std::size_t* skipped = nullptr);

// Model-backed extraction; a failed or empty completion yields an empty
// list rather than an error.
std::vector<Triplet> extract_triplets(const corpus::Chunk& chunk, llm::Gateway& gateway);
std::vector<TripletPattern> query_to_triplets(const std::string& query, llm::Gateway& gateway);

KnowledgeGraph build_graph_from_chunks(const std::vector<corpus::Chunk>& chunks,
                                       llm::Gateway& gateway);

// One unit per edge: `subject -[relation]-> object` plus a provenance
// excerpt (capped); deterministic order by (subject, relation, object).
std::vector<RetrievedUnit> subgraph_units(const Subgraph& sub, const corpus::ChunkStore& chunks);
std::string render_subgraph(const Subgraph& sub, const corpus::ChunkStore& chunks);

// Graph-derived units first, then vector hits not already covered by the
// subgraph's provenance, truncated to k total.
std::vector<RetrievedUnit> hybrid_retrieve(const std::string& query, const KnowledgeGraph& graph,
                                           const index::VectorIndex& index,
                                           const corpus::ChunkStore& chunks,
                                           const index::Embedder& embedder, std::size_t k,
                                           llm::Gateway& gateway, int hop_depth);

}  // namespace krag::graph
