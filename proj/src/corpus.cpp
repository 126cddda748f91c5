#include "krag/corpus/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "krag/util/io.hpp"
#include "krag/util/strings.hpp"

namespace krag::corpus {

using nlohmann::json;

const char* kind_name(CorpusKind k) {
    switch (k) {
        case CorpusKind::writeup: return "writeup";
        case CorpusKind::code: return "code";
        case CorpusKind::payload: return "payload";
    }
    return "unknown";
}

std::optional<CorpusKind> kind_from_name(std::string_view name) {
    if (name == "writeup" || name == "writeups") return CorpusKind::writeup;
    if (name == "code") return CorpusKind::code;
    if (name == "payload" || name == "payloads") return CorpusKind::payload;
    return std::nullopt;
}

SourceDocument normalize_record(const RawRecord& raw, CorpusKind kind) {
    if (kind == CorpusKind::writeup)
        throw MalformedRecordError("writeups are markdown files, not tabular records");
    std::string first(util::trim(raw.first));
    std::string second(util::trim(raw.second));
    if (first.empty() || second.empty())
        throw MalformedRecordError("record has an empty field: " + raw.source);

    SourceDocument doc;
    doc.kind = kind;
    doc.source_path = raw.source;
    if (kind == CorpusKind::code) {
        doc.title = first;
        doc.body = second;
    } else {  // payload: (exploit code, vulnerability name)
        doc.title = second;
        doc.body = first;
    }
    return doc;
}

std::vector<std::vector<std::string>> read_csv(const std::filesystem::path& path) {
    std::string text = util::read_file(path);
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> row;
    std::string field;
    bool quoted = false;
    size_t i = 0;
    auto end_field = [&] {
        row.push_back(std::move(field));
        field.clear();
    };
    auto end_row = [&] {
        end_field();
        rows.push_back(std::move(row));
        row.clear();
    };
    while (i < text.size()) {
        char c = text[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field.push_back(c);
            }
        } else if (c == '"' && field.empty()) {
            quoted = true;
        } else if (c == ',') {
            end_field();
        } else if (c == '\n') {
            if (!field.empty() && field.back() == '\r') field.pop_back();
            end_row();
        } else {
            field.push_back(c);
        }
        ++i;
    }
    if (!field.empty() || !row.empty()) end_row();
    if (!rows.empty()) rows.erase(rows.begin());  // declared header
    return rows;
}

namespace {

void note_skip(SkipReport* skips, const std::string& source, const std::string& reason) {
    if (skips) skips->entries.push_back({source, reason});
    std::cerr << "[corpus] skipping " << source << ": " << reason << "\n";
}

std::vector<SourceDocument> load_writeups(const std::filesystem::path& root, SkipReport* skips) {
    std::filesystem::path dir = root / "writeups";
    std::vector<SourceDocument> docs;
    if (!std::filesystem::exists(dir)) return docs;

    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::recursive_directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".md")
            files.push_back(entry.path());
    }
    std::vector<std::pair<std::string, std::filesystem::path>> keyed;
    keyed.reserve(files.size());
    for (auto& f : files)
        keyed.emplace_back(std::filesystem::relative(f, dir).generic_string(), f);
    std::sort(keyed.begin(), keyed.end());

    for (const auto& [rel, path] : keyed) {
        std::string body;
        try {
            body = util::read_file(path);
        } catch (const std::exception& e) {
            note_skip(skips, path.string(), e.what());
            continue;
        }
        if (util::trim(body).empty()) {
            note_skip(skips, path.string(), "empty document body");
            continue;
        }
        SourceDocument doc;
        doc.kind = CorpusKind::writeup;
        doc.id = std::string("writeup/") + rel;
        doc.source_path = path.generic_string();
        doc.body = body;
        // Title = first markdown heading, else the file stem.
        doc.title = path.stem().string();
        for (const auto& line : util::split_lines(body)) {
            auto t = util::trim(line);
            if (t.starts_with("#")) {
                doc.title = std::string(util::trim(t.substr(t.find_first_not_of('#'))));
                break;
            }
        }
        docs.push_back(std::move(doc));
    }
    return docs;
}

std::vector<SourceDocument> load_tabular(const std::filesystem::path& root, CorpusKind kind,
                                         SkipReport* skips) {
    const char* sub = kind == CorpusKind::code ? "code" : "payloads";
    std::filesystem::path file = root / sub / "records.csv";
    std::vector<SourceDocument> docs;
    if (!std::filesystem::exists(file)) return docs;

    std::vector<std::vector<std::string>> rows;
    try {
        rows = read_csv(file);
    } catch (const std::exception& e) {
        note_skip(skips, file.string(), e.what());
        return docs;
    }
    for (size_t i = 0; i < rows.size(); ++i) {
        const auto& row = rows[i];
        std::string source = file.generic_string() + ":" + std::to_string(i + 2);
        if (row.size() != 2) {
            note_skip(skips, source, "expected exactly 2 columns, got " + std::to_string(row.size()));
            continue;
        }
        try {
            SourceDocument doc = normalize_record({row[0], row[1], source}, kind);
            doc.id = std::string(kind_name(kind)) + "/records.csv/" + std::to_string(i);
            docs.push_back(std::move(doc));
        } catch (const MalformedRecordError& e) {
            note_skip(skips, source, e.what());
        }
    }
    return docs;
}

}  // namespace

std::vector<SourceDocument> load_corpus(const std::filesystem::path& root, CorpusKind kind,
                                        SkipReport* skips) {
    if (!std::filesystem::exists(root))
        throw std::runtime_error("corpus root does not exist: " + root.string());
    if (kind == CorpusKind::writeup) return load_writeups(root, skips);
    return load_tabular(root, kind, skips);
}

std::vector<SourceDocument> load_all(const std::filesystem::path& root, SkipReport* skips) {
    std::vector<SourceDocument> docs = load_corpus(root, CorpusKind::writeup, skips);
    for (CorpusKind k : {CorpusKind::code, CorpusKind::payload}) {
        auto more = load_corpus(root, k, skips);
        docs.insert(docs.end(), std::make_move_iterator(more.begin()),
                    std::make_move_iterator(more.end()));
    }
    return docs;
}

std::vector<Chunk> chunk_document(const SourceDocument& doc, std::size_t chunk_size,
                                  std::size_t overlap) {
    if (chunk_size == 0 || chunk_size <= overlap)
        throw std::invalid_argument("chunk_size must exceed overlap");
    std::vector<Chunk> chunks;
    const std::size_t len = doc.body.size();
    if (len == 0) return chunks;

    std::size_t start = 0;
    std::uint32_t seq = 0;
    while (true) {
        std::size_t end = std::min(start + chunk_size, len);
        chunks.push_back(Chunk{doc.id, seq++, start, end, doc.body.substr(start, end - start)});
        if (end == len) break;
        start = end - overlap;
    }
    return chunks;
}

std::vector<CorpusManifest> corpus_stats(const std::vector<SourceDocument>& docs,
                                         const std::string& name, const std::string& root) {
    std::size_t counts[3] = {0, 0, 0};
    for (const auto& d : docs) counts[static_cast<int>(d.kind)]++;
    std::vector<CorpusManifest> out;
    for (CorpusKind k : {CorpusKind::writeup, CorpusKind::code, CorpusKind::payload}) {
        std::size_t c = counts[static_cast<int>(k)];
        if (c == 0) continue;
        out.push_back(CorpusManifest{name, k, c, root});
    }
    return out;
}

void write_manifest_file(const std::filesystem::path& path,
                         const std::vector<CorpusManifest>& manifests) {
    std::ostringstream out;
    out << "# corpus manifest: name\tkind\tdocuments\troot\n";
    for (const auto& m : manifests)
        out << m.name << '\t' << kind_name(m.kind) << '\t' << m.document_count << '\t' << m.root
            << '\n';
    util::write_file(path, out.str());
}

void ChunkStore::add(Chunk chunk) {
    auto key = std::make_pair(chunk.doc_id, chunk.seq);
    auto it = by_ref_.find(key);
    if (it != by_ref_.end()) {
        chunks_[it->second] = std::move(chunk);
        return;
    }
    by_ref_[key] = chunks_.size();
    chunks_.push_back(std::move(chunk));
}

const Chunk* ChunkStore::get(const ChunkRef& ref) const {
    auto it = by_ref_.find(std::make_pair(ref.doc_id, ref.seq));
    return it == by_ref_.end() ? nullptr : &chunks_[it->second];
}

void ChunkStore::save(const std::filesystem::path& path) const {
    std::ostringstream out;
    for (const auto& c : chunks_) {
        json rec = {{"doc_id", c.doc_id}, {"seq", c.seq},   {"start", c.start},
                    {"end", c.end},       {"text", c.text}};
        out << rec.dump() << '\n';
    }
    util::write_file(path, out.str());
}

ChunkStore ChunkStore::load(const std::filesystem::path& path) {
    ChunkStore store;
    for (const auto& line : util::read_lines(path)) {
        if (line.empty()) continue;
        json rec = json::parse(line);
        Chunk c;
        c.doc_id = rec.at("doc_id").get<std::string>();
        c.seq = rec.at("seq").get<std::uint32_t>();
        c.start = rec.at("start").get<std::size_t>();
        c.end = rec.at("end").get<std::size_t>();
        c.text = rec.at("text").get<std::string>();
        store.add(std::move(c));
    }
    return store;
}

}  // namespace krag::corpus
