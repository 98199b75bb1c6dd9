#ifndef HYPEREX_PIPELINE_H_
#define HYPEREX_PIPELINE_H_

#include <array>
#include <cstdint>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "hyperex/cooc_index.h"
#include "hyperex/corpus_ingest.h"
#include "hyperex/eval_report.h"
#include "hyperex/hypernym_select.h"
#include "hyperex/normalize.h"
#include "hyperex/term_catalog.h"

namespace hyperex {

// Sentence files hold the normalized corpus, one sentence per line:
//
//   #hyperex-sentences<TAB>1
//   #normalization<TAB><fingerprint>
//   title<TAB>token token token ...
//
// Consecutive lines with the same title form one document.
class SentenceWriter {
 public:
  SentenceWriter(std::ostream& out, const std::string& normalization);

  // Writes the non-empty sentences of one document. Returns the number of
  // lines written.
  size_t WriteDocument(const std::string& title,
                       const std::vector<std::vector<std::string>>& sentences);

  // Documents that ended up adjacent to a document with the same title and
  // will therefore be read back as one.
  int64_t merged_titles() const { return merged_titles_; }

 private:
  std::ostream& out_;
  std::string last_title_;
  bool any_ = false;
  int64_t merged_titles_ = 0;
};

class SentenceReader {
 public:
  // Reads and validates the header. Throws InputError on a bad header.
  SentenceReader(std::istream& in, std::string source);

  const std::string& normalization() const { return normalization_; }

  // Next document's title and its sentence lines (tokens space-joined).
  bool NextDocument(std::string* title, std::vector<std::string>* sentences);

  // Bytes consumed so far, header included.
  int64_t bytes_read() const { return bytes_read_; }

 private:
  bool ReadLine();

  std::istream& in_;
  std::string source_;
  std::string normalization_;
  std::string line_;
  bool have_line_ = false;
  int64_t line_no_ = 0;
  int64_t bytes_read_ = 0;
};

// Returns the bundled SMART list when `path` is empty.
StopwordSet LoadStopwords(const std::string& path);

struct CatalogOptions {
  std::string terms_path;
  std::string domain;
  // Defaults to the domain name when empty.
  std::string root;
};

TermCatalog LoadCatalog(const CatalogOptions& options, const StopwordSet& stops);

struct IngestSummary {
  int64_t documents = 0;
  int64_t sentences = 0;
  int64_t tokens = 0;
  int64_t unterminated = 0;
  int64_t replacements = 0;
  int64_t merged_titles = 0;
};

// Dump -> documents -> sentences -> tokens -> normalized sentence file.
IngestSummary IngestStream(std::istream& dump, std::ostream& out,
                           const StopwordSet& stops,
                           DumpReader::Options options);

struct IngestOptions {
  std::string dump_path;
  std::string out_path;
  std::string stopwords_path;
  Encoding encoding = Encoding::kUtf8;
  bool unescape_xml = true;
};

IngestSummary RunIngest(const IngestOptions& options);

// Counts term statistics over a sentence file. The result does not depend
// on `workers`.
CorpusStats CountSentences(SentenceReader& reader, const TermCatalog& catalog,
                           const TermMatcher& matcher, int workers);

struct StatsOptions {
  std::string sentences_path;
  std::string out_path;
  std::string stopwords_path;
  CatalogOptions catalog;
  int workers = 1;
  bool nested = true;
};

struct StatsSummary {
  uint64_t documents = 0;
  uint64_t sentences = 0;
  int64_t bytes = 0;
  double seconds = 0;
  std::vector<std::string> warnings;
};

StatsSummary RunStats(const StatsOptions& options);

struct ExtractOptions {
  std::string stats_path;
  std::string out_path;
  std::string stopwords_path;
  CatalogOptions catalog;
  SelectConfig select;
  bool with_provenance = false;
};

struct ExtractSummary {
  size_t pairs = 0;
  // Indexed by Technique.
  std::array<size_t, 3> produced{};
  std::vector<std::string> warnings;
};

ExtractSummary RunExtract(const ExtractOptions& options);

struct EvalOptions {
  std::string taxo_path;
  std::string gold_path;
  // TSV report; the text table goes to `text_out`.
  std::string report_path;
  std::string domain;
};

EvalReport RunEval(const EvalOptions& options, std::ostream& text_out,
                   std::vector<std::string>* warnings);

struct PipelineOptions {
  std::string dump_path;
  std::string workdir;
  std::string gold_path;
  std::string stopwords_path;
  CatalogOptions catalog;
  Encoding encoding = Encoding::kUtf8;
  int workers = 1;
  bool nested = true;
  SelectConfig select;
  bool force = false;
};

struct PipelineSummary {
  std::string sentences_path;
  std::string stats_path;
  std::string taxo_path;
  std::string provenance_taxo_path;
  std::string report_path;
  // Stage names that actually ran (others were up to date).
  std::vector<std::string> ran;
};

PipelineSummary RunPipeline(const PipelineOptions& options,
                            std::ostream& log);

}  // namespace hyperex

#endif  // HYPEREX_PIPELINE_H_
