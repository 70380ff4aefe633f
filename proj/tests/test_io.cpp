#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <string>

#include "semweave/cache.hpp"
#include "semweave/config.hpp"
#include "semweave/corpus.hpp"
#include "semweave/errors.hpp"
#include "support.hpp"

using namespace semweave;
using namespace semweave::testing;
namespace fs = std::filesystem;

TEST_CASE("jsonl ingestion") {
  SUBCASE("full records") {
    auto result = ingest_corpus_jsonl(
        R"x({"doc_id":"d1","sent_id":"s1","text":"A storm hit.","amr":"(h / hit-01 :ARG0 (s / storm))"})x"
        "\n"
        R"x({"doc_id":"d1","sent_id":"s2","text":"Crops grew.","amr":"(g / grow-01 :ARG1 (c / crop))"})x"
        "\n");
    CHECK(result.skipped == 0);
    REQUIRE(result.records.size() == 2);
    CHECK(result.records[0].doc_id == "d1");
    CHECK(result.records[0].sent_id == "s1");
    CHECK(result.records[0].text == "A storm hit.");
    CHECK(result.records[1].amr == "(g / grow-01 :ARG1 (c / crop))");
  }

  SUBCASE("optional fields default from the line number") {
    auto result = ingest_corpus_jsonl(
        "\n"
        "  \n"
        R"x({"doc_id":"d1","amr":"(t / thing)"})x"
        "\n");
    REQUIRE(result.records.size() == 1);
    CHECK(result.records[0].sent_id == "s3");
    CHECK(result.records[0].text.empty());
  }

  SUBCASE("malformed json names the origin and line") {
    CHECK_THROWS_WITH_AS(
        ingest_corpus_jsonl("{oops\n", "test.jsonl"),
        doctest::Contains("bad JSONL record at test.jsonl:1"), ParseError);
    CHECK_THROWS_AS(ingest_corpus_jsonl("[1, 2]\n"), ParseError);
    CHECK_THROWS_WITH_AS(
        ingest_corpus_jsonl(R"({"doc_id":"d1"})" "\n"),
        doctest::Contains("must be an object with doc_id and amr"),
        ParseError);
    CHECK_THROWS_WITH_AS(
        ingest_corpus_jsonl(R"x({"doc_id":7,"amr":"(t / thing)"})x" "\n"),
        doctest::Contains("bad field type"), ParseError);
  }

  SUBCASE("unparseable amr is skipped with a diagnostic") {
    auto result = ingest_corpus_jsonl(
        R"x({"doc_id":"d1","sent_id":"s1","amr":"(a / (broken"})x"
        "\n"
        R"x({"doc_id":"d1","sent_id":"s2","amr":"(t / thing)"})x"
        "\n");
    CHECK(result.skipped == 1);
    REQUIRE(result.records.size() == 1);
    CHECK(result.records[0].sent_id == "s2");
    REQUIRE(result.diagnostics.size() == 1);
    CHECK(result.diagnostics[0].rfind("skipped (d1, s1): ", 0) == 0);
  }

  SUBCASE("duplicate document and sentence ids throw") {
    std::string line =
        R"x({"doc_id":"d1","sent_id":"s1","amr":"(t / thing)"})x";
    CHECK_THROWS_WITH_AS(
        ingest_corpus_jsonl(line + "\n" + line + "\n", "c.jsonl"),
        doctest::Contains("(d1, s1) in c.jsonl"), DuplicateRecord);
  }
}

TEST_CASE("file and directory ingestion") {
  auto dir = temp_dir("ingest");

  SUBCASE("jsonl file") {
    write_file(dir + "/corpus.jsonl",
               R"x({"doc_id":"d1","sent_id":"s1","amr":"(t / thing)"})x" "\n");
    auto result = ingest_corpus(dir + "/corpus.jsonl");
    REQUIRE(result.records.size() == 1);
    CHECK(result.records[0].doc_id == "d1");
  }

  SUBCASE("penman file takes its doc id from the stem") {
    write_file(dir + "/weather.amr",
               "# ::id s1\n"
               "# ::snt A storm hit the town.\n"
               "(h / hit-01 :ARG0 (s / storm)\n"
               "   :ARG1 (t / town))\n"
               "\n"
               "# ::id s2\n"
               "# ::snt Crops grew.\n"
               "(g / grow-01 :ARG1 (c / crop))\n");
    auto result = ingest_corpus(dir + "/weather.amr");
    REQUIRE(result.records.size() == 2);
    CHECK(result.records[0].doc_id == "weather");
    CHECK(result.records[0].sent_id == "s1");
    CHECK(result.records[0].text == "A storm hit the town.");
    CHECK(result.records[0].amr ==
          "(h / hit-01 :ARG0 (s / storm)\n   :ARG1 (t / town))");
    CHECK(result.records[1].sent_id == "s2");
  }

  SUBCASE("directories are read in sorted filename order") {
    write_file(dir + "/b.amr",
               "# ::id s1\n# ::snt Second doc.\n(b / be-02)\n");
    write_file(dir + "/a.amr",
               "# ::id s1\n# ::snt First doc.\n(t / thing)\n");
    auto result = ingest_corpus(dir);
    REQUIRE(result.records.size() == 2);
    CHECK(result.records[0].doc_id == "a");
    CHECK(result.records[1].doc_id == "b");
  }

  SUBCASE("missing paths throw") {
    CHECK_THROWS_AS(ingest_corpus(dir + "/nope.jsonl"), FileNotFound);
  }

  fs::remove_all(dir);
}

TEST_CASE("records round trip through jsonl text") {
  std::vector<CorpusRecord> records{
      {"d1", "s1", "A line with \"quotes\".", "(t / thing)"},
      {"d2", "s1", "", "(g / go-02)"},
  };
  auto text = records_to_jsonl(records);
  auto result = ingest_corpus_jsonl(text);
  REQUIRE(result.records.size() == 2);
  CHECK(result.records[0].doc_id == records[0].doc_id);
  CHECK(result.records[0].text == records[0].text);
  CHECK(result.records[1].amr == records[1].amr);
  CHECK(result.skipped == 0);
}

TEST_CASE("config defaults") {
  auto config = parse_config("{}");
  CHECK(config.quality.bleu_threshold == 0.72);
  CHECK(config.quality.max_ngram == 4);
  CHECK(config.quality.smoothing_epsilon == 1e-9);
  CHECK_FALSE(config.quality.exclude_failed_from_denominator);
  CHECK(config.syntactic_validation);
  CHECK(config.semantic_consistency);
  CHECK(config.caching.enabled);
  CHECK(config.caching.cache_dir == "./amr_cache");
  CHECK(config.caching.compression == "gzip");
  CHECK(config.bridging.theta_role == 0.4);
  CHECK_FALSE(config.bridging.strict_role_variation);
  CHECK(config.bridging.cross_document_only);
  CHECK(config.bridging.min_strength == 0.3);
  CHECK_FALSE(config.bridging.relation_table.empty());
  CHECK(config.scoring.weights.alpha == 0.9);
  CHECK(config.scoring.weights.beta == 0.6);
  CHECK(config.scoring.weights.gamma == 0.3);
  CHECK(config.scoring.weights.delta == 0.1);
  CHECK(config.scoring.max_depth == 0);
  CHECK(config.scoring.k_max == 0);
  CHECK(config.scoring.complexity_variant == ComplexityVariant::MainText);
  CHECK(config.generation.max_questions == 0);
  CHECK(config.generation.kind_quotas.empty());
  CHECK(config.generation.include_paths);
  CHECK(config.generation.max_path_frames == 4);
  CHECK(config.generation.path_bridge_limit == 64);
  CHECK_FALSE(config.generator_endpoint.configured());
  CHECK(config.generator_endpoint.timeout_ms == 10000);
  CHECK(config.generator_endpoint.retries == 1);
  CHECK(config.llm.model == "default");
  CHECK(config.llm.max_tokens == 256);
  CHECK(config.llm.temperature == 0.0);
  CHECK(config.amr_acquisition.method == "stepwise_sota");
}

TEST_CASE("config sections nest inside amr_acquisition or sit at top level") {
  auto nested = parse_config(R"({
    "amr_acquisition": {
      "method": "stepwise_sota",
      "components": {"parser": "model-a", "aligner": "model-b"},
      "quality_control": {"bleu_threshold": 0.8, "max_ngram": 3},
      "caching": {"enabled": false, "compression": "none"}
    }
  })");
  CHECK(nested.quality.bleu_threshold == 0.8);
  CHECK(nested.quality.max_ngram == 3);
  CHECK_FALSE(nested.caching.enabled);
  CHECK(nested.caching.compression == "none");
  CHECK(nested.amr_acquisition.components.at("parser") == "model-a");

  auto flat = parse_config(R"({
    "quality_control": {"bleu_threshold": 0.5,
                        "syntactic_validation": false},
    "caching": {"cache_dir": "/tmp/x"}
  })");
  CHECK(flat.quality.bleu_threshold == 0.5);
  CHECK_FALSE(flat.syntactic_validation);
  CHECK(flat.caching.cache_dir == "/tmp/x");
}

TEST_CASE("config overrides") {
  auto config = parse_config(R"({
    "bridging": {"theta_role": 0.6, "strict_role_variation": true,
                 "cross_document_only": false, "min_strength": 0.5},
    "scoring": {"weights": {"alpha": 1.0, "beta": 0.7, "gamma": 0.4,
                            "delta": 0.2},
                "max_depth": 7, "k_max": 12,
                "complexity_variant": "appendix_d",
                "entities_variant": "appendix_d"},
    "generation": {"max_questions": 50,
                   "kind_quotas": {"causal": 10, "entity": 20},
                   "include_paths": false, "max_path_frames": 5,
                   "path_bridge_limit": 32},
    "generator_endpoint": {"url": "http://localhost:8080/gen",
                           "timeout_ms": 2000, "retries": 3,
                           "credential_env": "GEN_TOKEN"},
    "llm": {"endpoint": {"url": "http://localhost:8081/llm"},
            "model": "qg-large", "max_tokens": 512, "temperature": 0.4}
  })");
  CHECK(config.bridging.theta_role == 0.6);
  CHECK(config.bridging.strict_role_variation);
  CHECK_FALSE(config.bridging.cross_document_only);
  CHECK(config.bridging.min_strength == 0.5);
  CHECK(config.scoring.weights.alpha == 1.0);
  CHECK(config.scoring.weights.delta == 0.2);
  CHECK(config.scoring.max_depth == 7);
  CHECK(config.scoring.k_max == 12);
  CHECK(config.scoring.complexity_variant == ComplexityVariant::AppendixD);
  CHECK(config.scoring.entities_variant == EntitiesVariant::AppendixD);
  CHECK(config.generation.max_questions == 50);
  CHECK(config.generation.kind_quotas.at("causal") == 10);
  CHECK_FALSE(config.generation.include_paths);
  CHECK(config.generation.max_path_frames == 5);
  CHECK(config.generation.path_bridge_limit == 32);
  CHECK(config.generator_endpoint.url == "http://localhost:8080/gen");
  CHECK(config.generator_endpoint.configured());
  CHECK(config.generator_endpoint.credential_env == "GEN_TOKEN");
  CHECK(config.llm.endpoint.url == "http://localhost:8081/llm");
  CHECK(config.llm.model == "qg-large");
  CHECK(config.llm.max_tokens == 512);
  CHECK(config.llm.temperature == 0.4);
}

TEST_CASE("config validation failures") {
  CHECK_THROWS_AS(parse_config("not json"), ParseError);
  CHECK_THROWS_AS(parse_config("[]"), ParseError);
  CHECK_THROWS_AS(parse_config(R"({"amr_acquisition": 3})"), ParseError);
  CHECK_THROWS_AS(
      parse_config(R"({"caching": {"compression": "zip"}})"), ParseError);
  CHECK_THROWS_AS(
      parse_config(R"({"scoring": {"complexity_variant": "sideways"}})"),
      ParseError);
  CHECK_THROWS_AS(
      parse_config(
          R"({"amr_acquisition": {"components": {"parser": 3}}})"),
      ParseError);
  CHECK_THROWS_WITH_AS(
      parse_config(R"({"quality_control": {"bleu_threshold": "high"}})"),
      doctest::Contains("bad value for 'bleu_threshold'"), ParseError);
  CHECK_THROWS_AS(
      parse_config(R"({"generation": {"kind_quotas": {"widget": 5}}})"),
      ParseError);

  CHECK_THROWS_AS(
      parse_config(R"({"quality_control": {"bleu_threshold": 1.5}})"),
      ConstraintViolation);
  CHECK_THROWS_AS(
      parse_config(R"({"bridging": {"theta_role": -0.1}})"),
      ConstraintViolation);
  CHECK_THROWS_AS(
      parse_config(R"({"bridging": {"min_strength": 2.0}})"),
      ConstraintViolation);
  CHECK_THROWS_WITH_AS(
      parse_config(
          R"({"scoring": {"weights": {"alpha": 0.7, "beta": 0.7}}})"),
      doctest::Contains("strength weights rejected:"), ConstraintViolation);
}

TEST_CASE("config can swap in a relation table file") {
  auto dir = temp_dir("config");
  write_file(dir + "/relations.txt", "alpha-01 beta-01 causation\n");
  auto config = parse_config(R"({"bridging": {"relation_table_file": ")" +
                             dir + R"(/relations.txt"}})");
  CHECK(config.bridging.relation_table.size() == 1);
  CHECK(config.bridging.relation_table.lookup("alpha-01", "beta-01") ==
        RelationClass::Causation);
  CHECK(config.bridging.relation_table.lookup("develop-01", "implement-01") ==
        std::nullopt);

  CHECK_THROWS_AS(
      parse_config(
          R"({"bridging": {"relation_table_file": "/no/such/file.txt"}})"),
      FileNotFound);
  fs::remove_all(dir);
}

TEST_CASE("config json round trip") {
  auto config = parse_config(R"({
    "scoring": {"weights": {"alpha": 1.0, "beta": 0.7, "gamma": 0.4},
                "complexity_variant": "appendix_d"},
    "generation": {"kind_quotas": {"causal": 5}},
    "llm": {"model": "qg-small"}
  })");
  auto text = config_to_json(config);
  CHECK(text.back() == '\n');
  auto reparsed = parse_config(text);
  CHECK(reparsed.scoring.weights.alpha == 1.0);
  CHECK(reparsed.scoring.weights.beta == 0.7);
  CHECK(reparsed.scoring.weights.gamma == 0.4);
  CHECK(reparsed.scoring.complexity_variant == ComplexityVariant::AppendixD);
  CHECK(reparsed.generation.kind_quotas.at("causal") == 5);
  CHECK(reparsed.llm.model == "qg-small");
  CHECK(reparsed.quality.bleu_threshold == config.quality.bleu_threshold);
  CHECK(reparsed.caching.compression == config.caching.compression);
}

TEST_CASE("load_config requires the file to exist") {
  CHECK_THROWS_AS(load_config("/no/such/config.json"), FileNotFound);
}

TEST_CASE("fnv1a64 reference vectors") {
  CHECK(fnv1a64("") == 14695981039346656037ULL);
  CHECK(fnv1a64("a") == 12638187200555641996ULL);
  CHECK(fnv1a64("hello") == 11831194018420276491ULL);
  CHECK(fnv1a64("hello") != fnv1a64("hellp"));
}

TEST_CASE("gzip round trip") {
  std::string payload = "some text worth caching, repeated: ";
  for (int i = 0; i < 6; ++i) payload += payload;

  auto packed = gzip_compress(payload);
  CHECK(packed.size() < payload.size());
  CHECK(gzip_decompress(packed) == payload);

  SUBCASE("compression is byte-for-byte deterministic") {
    CHECK(gzip_compress(payload) == packed);
  }

  SUBCASE("binary content with embedded zeros") {
    std::string binary("\x00\x01\x02\x00\xff ok", 8);
    CHECK(gzip_decompress(gzip_compress(binary)) == binary);
  }

  SUBCASE("empty payload") {
    CHECK(gzip_decompress(gzip_compress("")).empty());
  }

  SUBCASE("garbage input throws") {
    CHECK_THROWS_WITH_AS(gzip_decompress("definitely not gzip"),
                         "inflate failed: corrupt gzip data",
                         std::runtime_error);
  }
}

TEST_CASE("file helpers") {
  auto dir = temp_dir("files");

  SUBCASE("read_text_file") {
    write_file(dir + "/a.txt", "contents\n");
    CHECK(read_text_file(dir + "/a.txt") == "contents\n");
    CHECK_THROWS_AS(read_text_file(dir + "/missing.txt"), FileNotFound);
  }

  SUBCASE("file_exists") {
    CHECK_FALSE(file_exists(dir + "/nope"));
    write_file(dir + "/yes", "x");
    CHECK(file_exists(dir + "/yes"));
  }

  SUBCASE("write_file_atomic creates parents and leaves no temp files") {
    std::string target = dir + "/deep/nested/out.txt";
    write_file_atomic(target, "first");
    CHECK(read_text_file(target) == "first");
    write_file_atomic(target, "second");
    CHECK(read_text_file(target) == "second");

    int entries = 0;
    for (const auto& entry : fs::directory_iterator(dir + "/deep/nested")) {
      (void)entry;
      ++entries;
    }
    CHECK(entries == 1);
  }

  fs::remove_all(dir);
}

TEST_CASE("artifact cache") {
  auto dir = temp_dir("cache");

  SUBCASE("stable content hashed keys") {
    CHECK(ArtifactCache::make_key("x", "0.1.0") == "d25ab5938f6b277f");
    CHECK(ArtifactCache::make_key("x", "0.1.0") ==
          ArtifactCache::make_key("x", "0.1.0"));
    CHECK(ArtifactCache::make_key("x", "0.1.0") !=
          ArtifactCache::make_key("x", "0.2.0"));
    CHECK(ArtifactCache::make_key("x", "0.1.0") !=
          ArtifactCache::make_key("y", "0.1.0"));
    CHECK(ArtifactCache::make_key("ab", "c") !=
          ArtifactCache::make_key("a", "bc"));
  }

  SUBCASE("hit and miss accounting with gzip storage") {
    ArtifactCache cache(dir + "/store", /*enabled=*/true, /*compress=*/true);
    auto key = ArtifactCache::make_key("(t / thing)", "0.1.0");
    CHECK_FALSE(cache.get(key).has_value());
    CHECK(cache.misses() == 1);
    cache.put(key, "serialized graph payload");
    auto back = cache.get(key);
    REQUIRE(back.has_value());
    CHECK(*back == "serialized graph payload");
    CHECK(cache.hits() == 1);
    CHECK(file_exists(dir + "/store/" + key + ".gz"));
    // stored bytes are the gzip container, not the raw value
    CHECK(read_text_file(dir + "/store/" + key + ".gz") !=
          "serialized graph payload");
  }

  SUBCASE("plain storage keeps raw bytes") {
    ArtifactCache cache(dir + "/plain", true, /*compress=*/false);
    cache.put("k1", "raw value");
    CHECK(read_text_file(dir + "/plain/k1.dat") == "raw value");
    CHECK(cache.get("k1") == std::optional<std::string>("raw value"));
  }

  SUBCASE("disabled cache neither stores nor counts") {
    ArtifactCache cache(dir + "/off", /*enabled=*/false, true);
    CHECK_FALSE(cache.enabled());
    cache.put("k", "v");
    CHECK_FALSE(cache.get("k").has_value());
    CHECK(cache.hits() == 0);
    CHECK(cache.misses() == 0);
    CHECK_FALSE(fs::exists(dir + "/off"));
  }

  fs::remove_all(dir);
}
