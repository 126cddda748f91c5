#pragma once

#include <string>
#include <vector>

namespace krag::index {

struct EmbeddingVector {
    std::vector<float> values;

    std::size_t dims() const { return values.size(); }
};

class Embedder {
public:
    virtual ~Embedder() = default;
    virtual std::size_t dims() const = 0;
    // Identifies the embedding space; persisted with the index and checked
    // on open so vectors from different embedders never mix.
    virtual std::string tag() const = 0;
    virtual EmbeddingVector embed(const std::string& text) const = 0;
};

// Deterministic offline embedder: hashed bag-of-words, L2-normalized.
// Shared tokens produce geometric overlap, which is enough signal for
// retrieval fixtures without any model dependency.
class HashedBowEmbedder final : public Embedder {
public:
    explicit HashedBowEmbedder(std::size_t dims = 256) : dims_(dims) {}

    std::size_t dims() const override { return dims_; }
    std::string tag() const override { return "hashed-bow/v1;dims=" + std::to_string(dims_); }
    EmbeddingVector embed(const std::string& text) const override;

private:
    std::size_t dims_;
};

}  // namespace krag::index
