#pragma once

#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "krag/corpus/corpus.hpp"
#include "krag/index/embedder.hpp"

namespace krag::index {

struct SearchHit {
    corpus::ChunkRef ref;
    float score{0};  // cosine similarity; vectors are unit-norm so this is the dot
};

class SchemaError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IndexLoadError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Flat exact-scan index. Vectors are L2-normalized on insert; search is
// an exhaustive dot-product scan ranked (score desc, doc_id asc, seq asc).
class VectorIndex {
public:
    VectorIndex(std::size_t dims, std::string embedder_tag);

    std::size_t dims() const { return dims_; }
    const std::string& embedder_tag() const { return embedder_tag_; }
    std::size_t size() const { return rows_.size(); }

    // Replaces any existing entry with the same ref.
    void upsert(const corpus::ChunkRef& ref, EmbeddingVector vec);

    std::vector<SearchHit> search_top_k(const EmbeddingVector& query, std::size_t k) const;

    void save(const std::filesystem::path& path) const;
    static VectorIndex load(const std::filesystem::path& path);

private:
    struct Row {
        corpus::ChunkRef ref;
        std::vector<float> values;
    };

    std::size_t dims_;
    std::string embedder_tag_;
    std::vector<Row> rows_;
    std::map<std::pair<std::string, std::uint32_t>, std::size_t> by_ref_;
};

// Embeds and upserts each chunk; returns the number processed.
std::size_t upsert_chunks(VectorIndex& index, const std::vector<corpus::Chunk>& chunks,
                          const Embedder& embedder);

}  // namespace krag::index
