#ifndef SEMWEAVE_CORPUS_HPP
#define SEMWEAVE_CORPUS_HPP

#include <string>
#include <vector>

namespace semweave {

struct CorpusRecord {
  std::string doc_id;
  std::string sent_id;
  std::string text;
  std::string amr;  // PENMAN
};

struct IngestResult {
  std::vector<CorpusRecord> records;
  int skipped = 0;  // records dropped for unparseable AMR
  std::vector<std::string> diagnostics;
};

// Reads a corpus from a JSONL file ({doc_id, sent_id, text, amr} per
// line), a PENMAN metadata file (doc_id from the file name, sent ids
// from ::id lines), or a directory of such files. Records with
// malformed AMR are skipped and counted; duplicate (doc_id, sent_id)
// pairs throw DuplicateRecord. Throws FileNotFound.
IngestResult ingest_corpus(const std::string& path);

IngestResult ingest_corpus_jsonl(const std::string& contents,
                                 const std::string& origin = "");

std::string records_to_jsonl(const std::vector<CorpusRecord>& records);

}  // namespace semweave

#endif  // SEMWEAVE_CORPUS_HPP
