#include "semweave/corpus.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "semweave/errors.hpp"
#include "semweave/penman.hpp"

namespace semweave {

namespace {

namespace fs = std::filesystem;

using DedupeSet = std::set<std::pair<std::string, std::string>>;

void check_duplicate(DedupeSet& seen, const CorpusRecord& record,
                     const std::string& origin) {
  if (!seen.insert({record.doc_id, record.sent_id}).second) {
    throw DuplicateRecord("(" + record.doc_id + ", " + record.sent_id + ")" +
                          (origin.empty() ? "" : " in " + origin));
  }
}

// Keeps records whose AMR parses; counts and reports the rest.
void admit_record(IngestResult& out, DedupeSet& seen, CorpusRecord record,
                  const std::string& origin) {
  check_duplicate(seen, record, origin);
  try {
    parse_penman(record.amr, record.sent_id, record.doc_id);
  } catch (const Error& e) {
    out.skipped += 1;
    out.diagnostics.push_back("skipped (" + record.doc_id + ", " +
                              record.sent_id + "): " + e.what());
    return;
  }
  out.records.push_back(std::move(record));
}

void ingest_jsonl_into(IngestResult& out, DedupeSet& seen,
                       const std::string& contents, const std::string& origin) {
  std::istringstream in(contents);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::string where =
        (origin.empty() ? "line " : origin + ":") + std::to_string(line_no);
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError("bad JSONL record at " + where + ": " + e.what());
    }
    if (!j.is_object() || !j.contains("doc_id") || !j.contains("amr")) {
      throw ParseError("JSONL record at " + where +
                       " must be an object with doc_id and amr");
    }
    CorpusRecord record;
    try {
      record.doc_id = j.at("doc_id").get<std::string>();
      record.amr = j.at("amr").get<std::string>();
      record.sent_id = j.value("sent_id", "s" + std::to_string(line_no));
      record.text = j.value("text", "");
    } catch (const nlohmann::json::exception& e) {
      throw ParseError("bad field type at " + where + ": " + e.what());
    }
    admit_record(out, seen, std::move(record), origin);
  }
}

void ingest_penman_into(IngestResult& out, DedupeSet& seen,
                        const std::string& contents, const std::string& doc_id,
                        const std::string& origin) {
  auto blocks = read_penman_blocks(contents);
  for (const auto& block : blocks) {
    CorpusRecord record;
    record.doc_id = doc_id;
    record.sent_id = block.id;
    record.text = block.snt;
    record.amr = block.body;
    admit_record(out, seen, std::move(record), origin);
  }
}

std::string read_whole_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileNotFound(path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void ingest_file_into(IngestResult& out, DedupeSet& seen,
                      const fs::path& path) {
  std::string contents = read_whole_file(path);
  if (path.extension() == ".jsonl" || path.extension() == ".json") {
    ingest_jsonl_into(out, seen, contents, path.filename().string());
  } else {
    ingest_penman_into(out, seen, contents, path.stem().string(),
                       path.filename().string());
  }
}

}  // namespace

IngestResult ingest_corpus(const std::string& path) {
  fs::path p(path);
  if (!fs::exists(p)) throw FileNotFound(path);

  IngestResult out;
  DedupeSet seen;
  if (fs::is_directory(p)) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(p)) {
      if (entry.is_regular_file()) files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    for (const auto& file : files) ingest_file_into(out, seen, file);
  } else {
    ingest_file_into(out, seen, p);
  }
  return out;
}

IngestResult ingest_corpus_jsonl(const std::string& contents,
                                 const std::string& origin) {
  IngestResult out;
  DedupeSet seen;
  ingest_jsonl_into(out, seen, contents, origin);
  return out;
}

std::string records_to_jsonl(const std::vector<CorpusRecord>& records) {
  std::ostringstream out;
  for (const auto& record : records) {
    nlohmann::json j;
    j["doc_id"] = record.doc_id;
    j["sent_id"] = record.sent_id;
    j["text"] = record.text;
    j["amr"] = record.amr;
    out << j.dump() << "\n";
  }
  return out.str();
}

}  // namespace semweave
