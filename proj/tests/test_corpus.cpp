#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <random>

#include "krag/corpus/corpus.hpp"
#include "krag/util/io.hpp"

using namespace krag;
namespace fs = std::filesystem;

namespace {

fs::path make_temp_dir(const std::string& tag) {
    fs::path dir = fs::temp_directory_path() / ("krag_corpus_" + tag);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

corpus::SourceDocument doc_with_body(std::string body) {
    corpus::SourceDocument d;
    d.id = "writeup/x.md";
    d.body = std::move(body);
    return d;
}

std::string random_body(std::mt19937& rng, size_t len) {
    std::uniform_int_distribution<int> ch(32, 126);
    std::string s(len, ' ');
    for (auto& c : s) c = static_cast<char>(ch(rng));
    return s;
}

// Independent oracle: expected chunk starts by repeated offset arithmetic.
std::vector<size_t> expected_starts(size_t len, size_t size, size_t overlap) {
    std::vector<size_t> starts;
    if (len == 0) return starts;
    size_t s = 0;
    while (true) {
        starts.push_back(s);
        if (s + size >= len) break;
        s = s + size - overlap;
    }
    return starts;
}

}  // namespace

TEST_CASE("chunker matches offset arithmetic on the default parameters") {
    auto doc = doc_with_body(std::string(10000, 'a'));
    auto chunks = corpus::chunk_document(doc, 4096, 100);
    REQUIRE(chunks.size() == 3);
    CHECK(chunks[0].start == 0);
    CHECK(chunks[1].start == 3996);
    CHECK(chunks[2].start == 7992);
    CHECK(chunks[2].end == 10000);
}

TEST_CASE("short and empty documents") {
    auto one = corpus::chunk_document(doc_with_body(std::string(100, 'x')), 4096, 100);
    REQUIRE(one.size() == 1);
    CHECK(one[0].text.size() == 100);

    CHECK(corpus::chunk_document(doc_with_body(""), 4096, 100).empty());
}

TEST_CASE("chunk_size must exceed overlap") {
    auto doc = doc_with_body("abc");
    CHECK_THROWS_AS(corpus::chunk_document(doc, 100, 100), std::invalid_argument);
    CHECK_THROWS_AS(corpus::chunk_document(doc, 50, 100), std::invalid_argument);
}

TEST_CASE("reconstruction property over random bodies") {
    std::mt19937 rng(42);
    std::uniform_int_distribution<size_t> len_dist(0, 50000);
    const std::vector<std::pair<size_t, size_t>> grid{{4096, 100}, {512, 64}, {128, 0}};

    for (int trial = 0; trial < 60; ++trial) {
        auto doc = doc_with_body(random_body(rng, len_dist(rng)));
        for (auto [size, overlap] : grid) {
            auto chunks = corpus::chunk_document(doc, size, overlap);

            std::string rebuilt;
            for (size_t i = 0; i < chunks.size(); ++i) {
                const auto& c = chunks[i];
                rebuilt += (i == 0) ? c.text : c.text.substr(overlap);
            }
            CHECK(rebuilt == doc.body);

            auto starts = expected_starts(doc.body.size(), size, overlap);
            REQUIRE(chunks.size() == starts.size());
            for (size_t i = 0; i < chunks.size(); ++i) {
                CHECK(chunks[i].start == starts[i]);
                CHECK(chunks[i].text.size() <= size);
                if (i + 1 < chunks.size()) CHECK(chunks[i].text.size() == size);
            }
        }
    }
}

TEST_CASE("normalize_record maps the two-column formats") {
    auto code = corpus::normalize_record({"reverse a list", "def rev(xs): return xs[::-1]", "t:1"},
                                         corpus::CorpusKind::code);
    CHECK(code.title == "reverse a list");
    CHECK(code.body == "def rev(xs): return xs[::-1]");

    auto payload = corpus::normalize_record({"' OR 1=1 --", "SQL injection", "t:2"},
                                            corpus::CorpusKind::payload);
    CHECK(payload.title == "SQL injection");
    CHECK(payload.body == "' OR 1=1 --");

    CHECK_THROWS_AS(corpus::normalize_record({"task", "", "t:3"}, corpus::CorpusKind::code),
                    corpus::MalformedRecordError);
}

TEST_CASE("load_corpus over a small writeup tree") {
    auto root = make_temp_dir("writeups");
    fs::create_directories(root / "writeups");
    util::write_file(root / "writeups" / "b.md", "# Beta\nkeystream reuse\n");
    util::write_file(root / "writeups" / "a.md", "# Alpha\nbuffer overflow\n");
    util::write_file(root / "writeups" / "c.md", "no heading here\n");

    corpus::SkipReport skips;
    auto docs = corpus::load_corpus(root, corpus::CorpusKind::writeup, &skips);
    REQUIRE(docs.size() == 3);
    CHECK(skips.empty());
    // Lexicographic by relative path.
    CHECK(docs[0].id == "writeup/a.md");
    CHECK(docs[1].id == "writeup/b.md");
    CHECK(docs[2].id == "writeup/c.md");
    CHECK(docs[0].title == "Alpha");
    CHECK(docs[2].title == "c");

    // Determinism: a second load yields identical documents in identical order.
    auto again = corpus::load_corpus(root, corpus::CorpusKind::writeup, nullptr);
    REQUIRE(again.size() == docs.size());
    for (size_t i = 0; i < docs.size(); ++i) {
        CHECK(again[i].id == docs[i].id);
        CHECK(again[i].body == docs[i].body);
    }
}

TEST_CASE("load_corpus on an empty directory") {
    auto root = make_temp_dir("empty");
    fs::create_directories(root / "writeups");
    corpus::SkipReport skips;
    auto docs = corpus::load_corpus(root, corpus::CorpusKind::writeup, &skips);
    CHECK(docs.empty());
    CHECK(skips.empty());
}

TEST_CASE("load_corpus rejects a missing root") {
    CHECK_THROWS(corpus::load_corpus("/nonexistent/krag/root", corpus::CorpusKind::writeup));
}

TEST_CASE("tabular corpora skip malformed rows and keep counting") {
    auto root = make_temp_dir("tabular");
    fs::create_directories(root / "code");
    util::write_file(root / "code" / "records.csv",
                     "task,solution\n"
                     "reverse a list,\"def rev(xs):\n  return xs[::-1]\"\n"
                     "broken row with no second column\n"
                     "sum two ints,lambda a b: a+b\n"
                     "empty solution,\n");

    corpus::SkipReport skips;
    auto docs = corpus::load_corpus(root, corpus::CorpusKind::code, &skips);
    REQUIRE(docs.size() == 2);
    CHECK(skips.count() == 2);
    CHECK(docs[0].title == "reverse a list");
    CHECK(docs[0].body.find("xs[::-1]") != std::string::npos);
    CHECK(docs[0].id == "code/records.csv/0");
    CHECK(docs[1].id == "code/records.csv/2");
}

TEST_CASE("corpus_stats counts per kind") {
    std::vector<corpus::SourceDocument> docs;
    for (int i = 0; i < 5; ++i) {
        corpus::SourceDocument d;
        d.kind = i < 3 ? corpus::CorpusKind::writeup : corpus::CorpusKind::payload;
        d.id = "d" + std::to_string(i);
        d.body = "x";
        docs.push_back(d);
    }
    auto stats = corpus::corpus_stats(docs, "sample", "/tmp/x");
    REQUIRE(stats.size() == 2);
    CHECK(stats[0].kind == corpus::CorpusKind::writeup);
    CHECK(stats[0].document_count == 3);
    CHECK(stats[1].kind == corpus::CorpusKind::payload);
    CHECK(stats[1].document_count == 2);

    CHECK(corpus::corpus_stats({}, "none", "/").empty());
}

TEST_CASE("chunk store round-trips and deduplicates by ref") {
    corpus::ChunkStore store;
    store.add(corpus::Chunk{"d1", 0, 0, 3, "abc"});
    store.add(corpus::Chunk{"d1", 1, 3, 6, "def"});
    store.add(corpus::Chunk{"d1", 0, 0, 3, "ABC"});  // replaces
    CHECK(store.size() == 2);
    CHECK(store.get({"d1", 0})->text == "ABC");
    CHECK(store.get({"d1", 9}) == nullptr);

    auto path = make_temp_dir("chunkstore") / "chunks.jsonl";
    store.save(path);
    auto loaded = corpus::ChunkStore::load(path);
    REQUIRE(loaded.size() == 2);
    CHECK(loaded.get({"d1", 1})->text == "def");
}

TEST_CASE("sample corpus ships with the repo layout") {
    fs::path root = fs::path(KRAG_SOURCE_DIR) / "data" / "sample_corpus";
    corpus::SkipReport skips;
    auto docs = corpus::load_all(root, &skips);
    CHECK(skips.empty());

    size_t writeups = 0, code = 0, payloads = 0;
    for (const auto& d : docs) {
        if (d.kind == corpus::CorpusKind::writeup) ++writeups;
        if (d.kind == corpus::CorpusKind::code) ++code;
        if (d.kind == corpus::CorpusKind::payload) ++payloads;
    }
    CHECK(writeups == 10);
    CHECK(code >= 3);
    CHECK(payloads >= 3);
}
