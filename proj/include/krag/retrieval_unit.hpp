#pragma once

#include <string>
#include <vector>

#include "krag/corpus/corpus.hpp"

namespace krag {

// One retrievable item: either a chunk of text from the vector index or a
// knowledge-graph edge rendered with its provenance excerpt.
struct RetrievedUnit {
    enum class Kind { chunk, graph_edge };

    Kind kind{Kind::chunk};
    std::string id;    // stable identity used for dedupe and rank-fusion ties
    std::string text;  // what the generator sees
    float score{0};    // cosine score for chunks; 0 for graph edges
    std::vector<corpus::ChunkRef> refs;  // provenance
};

inline std::string chunk_unit_id(const corpus::ChunkRef& ref) { return "chunk:" + ref.key(); }

}  // namespace krag
