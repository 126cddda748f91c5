#pragma once

#include <compare>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace krag::corpus {

enum class CorpusKind { writeup, code, payload };

const char* kind_name(CorpusKind k);
std::optional<CorpusKind> kind_from_name(std::string_view name);

struct SourceDocument {
    std::string id;
    CorpusKind kind{CorpusKind::writeup};
    std::string title;
    std::string body;
    std::string source_path;
    std::map<std::string, std::string> metadata;
};

struct ChunkRef {
    std::string doc_id;
    std::uint32_t seq{0};

    auto operator<=>(const ChunkRef&) const = default;
    std::string key() const { return doc_id + "#" + std::to_string(seq); }
};

struct Chunk {
    std::string doc_id;
    std::uint32_t seq{0};
    std::size_t start{0};
    std::size_t end{0};
    std::string text;

    ChunkRef ref() const { return ChunkRef{doc_id, seq}; }
};

struct SkipReport {
    struct Entry {
        std::string source;
        std::string reason;
    };
    std::vector<Entry> entries;

    bool empty() const { return entries.empty(); }
    std::size_t count() const { return entries.size(); }
};

struct CorpusManifest {
    std::string name;
    CorpusKind kind{CorpusKind::writeup};
    std::size_t document_count{0};
    std::string root;
};

// One two-column record from a tabular corpus file.
struct RawRecord {
    std::string first;
    std::string second;
    std::string source;  // file path + row index, for diagnostics and ids
};

class MalformedRecordError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Maps a two-column record onto a document per corpus kind:
// code    -> (task description, solution)       => title, body
// payload -> (exploit code, vulnerability name) => body, title
SourceDocument normalize_record(const RawRecord& raw, CorpusKind kind);

// Loads one corpus kind from its standard location under `root`:
//   writeups/*.md  |  code/records.csv  |  payloads/records.csv
// Malformed records are skipped and reported, not fatal.
std::vector<SourceDocument> load_corpus(const std::filesystem::path& root, CorpusKind kind,
                                        SkipReport* skips = nullptr);

// All three kinds, in kind order (writeup, code, payload). Missing
// locations contribute nothing.
std::vector<SourceDocument> load_all(const std::filesystem::path& root, SkipReport* skips = nullptr);

std::vector<Chunk> chunk_document(const SourceDocument& doc, std::size_t chunk_size,
                                  std::size_t overlap);

std::vector<CorpusManifest> corpus_stats(const std::vector<SourceDocument>& docs,
                                         const std::string& name, const std::string& root);

void write_manifest_file(const std::filesystem::path& path,
                         const std::vector<CorpusManifest>& manifests);

// Chunk texts addressed by (doc_id, seq); the retrieval side's view of
// the corpus after ingestion.
class ChunkStore {
public:
    void add(Chunk chunk);
    const Chunk* get(const ChunkRef& ref) const;
    std::size_t size() const { return chunks_.size(); }
    const std::vector<Chunk>& all() const { return chunks_; }

    void save(const std::filesystem::path& path) const;
    static ChunkStore load(const std::filesystem::path& path);

private:
    std::vector<Chunk> chunks_;
    std::map<std::pair<std::string, std::uint32_t>, std::size_t> by_ref_;
};

// Minimal CSV reader (quotes, embedded commas/newlines, doubled-quote
// escapes). First row is the declared header and is skipped.
std::vector<std::vector<std::string>> read_csv(const std::filesystem::path& path);

}  // namespace krag::corpus
