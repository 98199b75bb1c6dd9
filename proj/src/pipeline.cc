#include "hyperex/pipeline.h"

#include <chrono>
#include <condition_variable>
#include <deque>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>

#include "hyperex/errors.h"
#include "hyperex/text_util.h"

namespace hyperex {

namespace fs = std::filesystem;

namespace {

constexpr char kSentenceMagic[] = "#hyperex-sentences";
constexpr char kSentenceVersion[] = "1";

std::string SanitizeTitle(std::string_view title) {
  std::string out(title);
  for (char& c : out) {
    if (c == '\t' || c == '\n' || c == '\r') c = ' ';
  }
  return out.empty() ? std::string("untitled") : out;
}

// Writes through a temporary file and renames on success, so an interrupted
// run never leaves a half-written stage output behind.
class AtomicFile {
 public:
  explicit AtomicFile(std::string path)
      : path_(std::move(path)), tmp_(path_ + ".tmp") {
    out_.open(tmp_, std::ios::binary | std::ios::trunc);
    if (!out_) throw InputError("cannot write " + path_);
  }
  ~AtomicFile() {
    if (!committed_) {
      out_.close();
      std::error_code ec;
      fs::remove(tmp_, ec);
    }
  }
  std::ostream& stream() { return out_; }
  void Commit() {
    out_.flush();
    if (!out_) throw InputError("error writing " + path_);
    out_.close();
    fs::rename(tmp_, path_);
    committed_ = true;
  }

 private:
  std::string path_;
  std::string tmp_;
  std::ofstream out_;
  bool committed_ = false;
};

void RequireFile(const std::string& path, const std::string& what) {
  if (path.empty()) throw InputError("missing " + what + " path");
  if (!fs::is_regular_file(path)) throw InputError(what + " not found: " + path);
}

void ProcessDocument(const std::vector<std::string>& lines,
                     const TermMatcher& matcher, CorpusStats* stats) {
  std::vector<std::vector<Occurrence>> occurrences;
  occurrences.reserve(lines.size());
  std::vector<std::string_view> tokens;
  for (const std::string& line : lines) {
    tokens = SplitWhitespace(line);
    occurrences.push_back(matcher.Find(std::span<const std::string_view>(tokens)));
  }
  stats->AddDocument(occurrences);
}

// Bounded single-producer, multi-consumer queue of document batches.
class BatchQueue {
 public:
  using Batch = std::vector<std::vector<std::string>>;

  explicit BatchQueue(size_t capacity) : capacity_(capacity) {}

  void Push(Batch batch) {
    std::unique_lock<std::mutex> lock(mu_);
    not_full_.wait(lock, [&] { return queue_.size() < capacity_; });
    queue_.push_back(std::move(batch));
    not_empty_.notify_one();
  }

  void Close() {
    std::lock_guard<std::mutex> lock(mu_);
    closed_ = true;
    not_empty_.notify_all();
  }

  std::optional<Batch> Pop() {
    std::unique_lock<std::mutex> lock(mu_);
    not_empty_.wait(lock, [&] { return closed_ || !queue_.empty(); });
    if (queue_.empty()) return std::nullopt;
    Batch batch = std::move(queue_.front());
    queue_.pop_front();
    not_full_.notify_one();
    return batch;
  }

 private:
  const size_t capacity_;
  std::mutex mu_;
  std::condition_variable not_empty_;
  std::condition_variable not_full_;
  std::deque<Batch> queue_;
  bool closed_ = false;
};

std::string Stamp(const std::string& path) { return path + ".stamp"; }

// A stage is up to date when its output exists, is not older than any
// input, and was produced with the same settings.
bool UpToDate(const std::string& output, const std::vector<std::string>& inputs,
              const std::string& settings) {
  std::error_code ec;
  if (!fs::exists(output, ec) || !fs::exists(Stamp(output), ec)) return false;
  const auto out_time = fs::last_write_time(output, ec);
  if (ec) return false;
  for (const std::string& in : inputs) {
    const auto t = fs::last_write_time(in, ec);
    if (ec || t > out_time) return false;
  }
  std::ifstream stamp(Stamp(output));
  std::stringstream content;
  content << stamp.rdbuf();
  return content.str() == settings;
}

void WriteStamp(const std::string& output, const std::string& settings) {
  std::ofstream stamp(Stamp(output), std::ios::binary | std::ios::trunc);
  stamp << settings;
}

std::string SelectSettings(const SelectConfig& s) {
  std::ostringstream out;
  out << "k=" << s.k << " scope=" << static_cast<int>(s.cooc_scope)
      << " orphans=" << s.attach_orphans
      << " rank=" << static_cast<int>(s.rank_by)
      << " suffix=" << static_cast<int>(s.subterm.suffix_mode)
      << " connector=" << s.subterm.connector_len;
  return out.str();
}

}  // namespace

// ---------------------------------------------------------------------------
// Sentence files

SentenceWriter::SentenceWriter(std::ostream& out,
                               const std::string& normalization)
    : out_(out) {
  out_ << kSentenceMagic << '\t' << kSentenceVersion << '\n'
       << "#normalization\t" << normalization << '\n';
}

size_t SentenceWriter::WriteDocument(
    const std::string& title,
    const std::vector<std::vector<std::string>>& sentences) {
  const std::string clean = SanitizeTitle(title);
  size_t written = 0;
  for (const std::vector<std::string>& tokens : sentences) {
    if (tokens.empty()) continue;
    if (written == 0) {
      if (any_ && clean == last_title_) ++merged_titles_;
      any_ = true;
      last_title_ = clean;
    }
    out_ << clean << '\t';
    for (size_t i = 0; i < tokens.size(); ++i) {
      if (i > 0) out_ << ' ';
      out_ << tokens[i];
    }
    out_ << '\n';
    ++written;
  }
  return written;
}

SentenceReader::SentenceReader(std::istream& in, std::string source)
    : in_(in), source_(std::move(source)) {
  if (!ReadLine() || line_ != std::string(kSentenceMagic) + "\t" + kSentenceVersion) {
    throw InputError(source_ + ": not a sentence file (bad header)");
  }
  if (!ReadLine() || line_.rfind("#normalization\t", 0) != 0) {
    throw InputError(source_ + ": missing #normalization header");
  }
  normalization_ = line_.substr(std::string("#normalization\t").size());
  have_line_ = ReadLine();
}

bool SentenceReader::ReadLine() {
  if (!std::getline(in_, line_)) return false;
  ++line_no_;
  bytes_read_ += static_cast<int64_t>(line_.size()) + 1;
  return true;
}

bool SentenceReader::NextDocument(std::string* title,
                                  std::vector<std::string>* sentences) {
  sentences->clear();
  while (have_line_) {
    const size_t tab = line_.find('\t');
    if (tab == std::string::npos) {
      throw InputError(source_ + ":" + std::to_string(line_no_) +
                       ": expected title<TAB>sentence");
    }
    const std::string_view line_title(line_.data(), tab);
    if (sentences->empty()) {
      title->assign(line_title);
    } else if (line_title != *title) {
      return true;
    }
    sentences->emplace_back(line_, tab + 1);
    have_line_ = ReadLine();
  }
  return !sentences->empty();
}

// ---------------------------------------------------------------------------
// Stages

StopwordSet LoadStopwords(const std::string& path) {
  if (path.empty()) return StopwordSet::Smart();
  StopwordSet stops = StopwordSet::FromFile(path);
  if (stops.empty()) throw InputError("stopword file is empty: " + path);
  return stops;
}

TermCatalog LoadCatalog(const CatalogOptions& options, const StopwordSet& stops) {
  RequireFile(options.terms_path, "terms file");
  const std::string root = options.root.empty() ? options.domain : options.root;
  return TermCatalog::Load(options.terms_path, options.domain, root, stops);
}

IngestSummary IngestStream(std::istream& dump, std::ostream& out,
                           const StopwordSet& stops,
                           DumpReader::Options options) {
  IngestSummary summary;
  DumpReader reader(dump, options);
  SentenceWriter writer(out, NormalizationFingerprint(stops));
  Normalizer normalizer(stops);
  RawDocument raw;
  std::vector<std::vector<std::string>> normalized;
  while (reader.Next(&raw)) {
    const TokenizedDocument doc = TokenizeDocument(raw);
    normalized.clear();
    for (const auto& tokens : doc.sentences) {
      summary.tokens += static_cast<int64_t>(tokens.size());
      normalized.push_back(normalizer.Normalize(tokens));
    }
    const size_t lines = writer.WriteDocument(doc.title, normalized);
    summary.sentences += static_cast<int64_t>(lines);
  }
  summary.documents = reader.documents();
  summary.unterminated = reader.unterminated();
  summary.replacements = reader.replacements();
  summary.merged_titles = writer.merged_titles();
  return summary;
}

IngestSummary RunIngest(const IngestOptions& options) {
  RequireFile(options.dump_path, "dump");
  if (options.out_path.empty()) throw InputError("missing output path");
  const StopwordSet stops = LoadStopwords(options.stopwords_path);
  std::ifstream dump(options.dump_path, std::ios::binary);
  if (!dump) throw InputError("cannot read dump: " + options.dump_path);
  AtomicFile out(options.out_path);
  DumpReader::Options reader_options;
  reader_options.encoding = options.encoding;
  reader_options.unescape_xml = options.unescape_xml;
  const IngestSummary summary =
      IngestStream(dump, out.stream(), stops, reader_options);
  out.Commit();
  return summary;
}

CorpusStats CountSentences(SentenceReader& reader, const TermCatalog& catalog,
                           const TermMatcher& matcher, int workers) {
  if (workers < 1) throw InputError("worker count must be >= 1");
  CorpusStats total(catalog);
  std::string title;
  std::vector<std::string> lines;

  if (workers == 1) {
    while (reader.NextDocument(&title, &lines)) {
      ProcessDocument(lines, matcher, &total);
    }
    return total;
  }

  constexpr size_t kBatchDocs = 256;
  BatchQueue queue(static_cast<size_t>(workers) * 2);
  std::vector<CorpusStats> partial(static_cast<size_t>(workers),
                                   CorpusStats(catalog));
  std::vector<std::thread> threads;
  std::exception_ptr error;
  std::mutex error_mu;
  for (int w = 0; w < workers; ++w) {
    threads.emplace_back([&, w] {
      try {
        while (auto batch = queue.Pop()) {
          for (const auto& doc : *batch) ProcessDocument(doc, matcher, &partial[w]);
        }
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!error) error = std::current_exception();
      }
    });
  }
  try {
    BatchQueue::Batch batch;
    while (reader.NextDocument(&title, &lines)) {
      batch.push_back(lines);
      if (batch.size() == kBatchDocs) {
        queue.Push(std::move(batch));
        batch = {};
      }
    }
    if (!batch.empty()) queue.Push(std::move(batch));
  } catch (...) {
    queue.Close();
    for (auto& t : threads) t.join();
    throw;
  }
  queue.Close();
  for (auto& t : threads) t.join();
  if (error) std::rethrow_exception(error);
  for (const CorpusStats& p : partial) total.Merge(p);
  return total;
}

StatsSummary RunStats(const StatsOptions& options) {
  RequireFile(options.sentences_path, "sentence file");
  if (options.out_path.empty()) throw InputError("missing output path");
  const StopwordSet stops = LoadStopwords(options.stopwords_path);
  const TermCatalog catalog = LoadCatalog(options.catalog, stops);

  std::ifstream in(options.sentences_path, std::ios::binary);
  if (!in) throw InputError("cannot read " + options.sentences_path);
  SentenceReader reader(in, options.sentences_path);
  if (reader.normalization() != catalog.normalization()) {
    throw InputError("sentence file " + options.sentences_path +
                     " was normalized differently (" + reader.normalization() +
                     ") than the catalog (" + catalog.normalization() + ")");
  }
  TermMatcher::Options matcher_options;
  matcher_options.nested = options.nested;
  const TermMatcher matcher(catalog, matcher_options);

  StatsSummary summary;
  summary.warnings = catalog.warnings();
  const auto start = std::chrono::steady_clock::now();
  const CorpusStats stats =
      CountSentences(reader, catalog, matcher, options.workers);
  summary.seconds = std::chrono::duration<double>(
                        std::chrono::steady_clock::now() - start)
                        .count();
  summary.bytes = reader.bytes_read();
  summary.documents = stats.total_docs();
  summary.sentences = stats.total_sentences();

  AtomicFile out(options.out_path);
  WriteStats(stats, out.stream());
  out.Commit();
  return summary;
}

ExtractSummary RunExtract(const ExtractOptions& options) {
  RequireFile(options.stats_path, "stats file");
  if (options.out_path.empty()) throw InputError("missing output path");
  const StopwordSet stops = LoadStopwords(options.stopwords_path);
  const TermCatalog catalog = LoadCatalog(options.catalog, stops);
  const CorpusStats stats = LoadStats(options.stats_path);

  ExtractSummary summary;
  summary.warnings = catalog.warnings();
  if (stats.catalog_fingerprint() != catalog.fingerprint()) {
    summary.warnings.push_back("stats file " + options.stats_path +
                               " was built against a different catalog");
  }
  for (const Term& t : catalog.terms()) {
    if (!stats.Has(t.id)) {
      summary.warnings.push_back("stats file lacks term id " +
                                 std::to_string(t.id) + " ('" + t.surface +
                                 "'); treated as zero counts");
    }
  }

  const Taxonomy taxonomy = BuildTaxonomy(catalog, stats, options.select);
  AtomicFile out(options.out_path);
  WriteTaxo(taxonomy, catalog, options.with_provenance, out.stream());
  out.Commit();

  summary.pairs = taxonomy.pairs.size();
  for (const HypernymPair& p : taxonomy.pairs) {
    for (Technique t : kAllTechniques) {
      if (p.provenance.Has(t)) ++summary.produced[static_cast<size_t>(t)];
    }
  }
  return summary;
}

EvalReport RunEval(const EvalOptions& options, std::ostream& text_out,
                   std::vector<std::string>* warnings) {
  RequireFile(options.taxo_path, "taxonomy file");
  RequireFile(options.gold_path, "gold file");
  const GoldStandard gold = LoadGold(options.gold_path);
  if (warnings != nullptr) {
    warnings->insert(warnings->end(), gold.warnings.begin(), gold.warnings.end());
  }
  const std::vector<TaxoEntry> taxo = LoadTaxo(options.taxo_path);
  const EvalReport report = Score(taxo, gold);
  WriteReportText(report, options.domain, text_out);
  if (!options.report_path.empty()) {
    AtomicFile out(options.report_path);
    WriteReportTsv(report, out.stream());
    out.Commit();
  }
  return report;
}

PipelineSummary RunPipeline(const PipelineOptions& options, std::ostream& log) {
  RequireFile(options.dump_path, "dump");
  if (options.workdir.empty()) throw InputError("missing work directory");
  fs::create_directories(options.workdir);
  const std::string domain =
      options.catalog.domain.empty() ? "domain" : options.catalog.domain;
  const fs::path dir(options.workdir);

  PipelineSummary summary;
  summary.sentences_path = (dir / "sentences.tsv").string();
  summary.stats_path = (dir / (domain + ".stats")).string();
  summary.taxo_path = (dir / (domain + ".taxo")).string();
  summary.provenance_taxo_path = (dir / (domain + ".prov.taxo")).string();
  summary.report_path = (dir / (domain + ".report.tsv")).string();

  const StopwordSet stops = LoadStopwords(options.stopwords_path);
  const TermCatalog catalog = LoadCatalog(options.catalog, stops);
  const std::string norm = NormalizationFingerprint(stops);

  const std::string ingest_settings =
      "ingest dump=" + fs::absolute(options.dump_path).string() +
      " norm=" + norm + " encoding=" + std::to_string(static_cast<int>(options.encoding));
  if (options.force ||
      !UpToDate(summary.sentences_path, {options.dump_path}, ingest_settings)) {
    IngestOptions ingest;
    ingest.dump_path = options.dump_path;
    ingest.out_path = summary.sentences_path;
    ingest.stopwords_path = options.stopwords_path;
    ingest.encoding = options.encoding;
    const IngestSummary s = RunIngest(ingest);
    WriteStamp(summary.sentences_path, ingest_settings);
    log << "ingest: " << s.documents << " documents, " << s.sentences
        << " sentences\n";
    summary.ran.push_back("ingest");
  }

  const std::string stats_settings = "stats catalog=" + catalog.fingerprint() +
                                     " nested=" + std::to_string(options.nested);
  if (options.force ||
      !UpToDate(summary.stats_path,
                {summary.sentences_path, options.catalog.terms_path},
                stats_settings)) {
    StatsOptions stats;
    stats.sentences_path = summary.sentences_path;
    stats.out_path = summary.stats_path;
    stats.stopwords_path = options.stopwords_path;
    stats.catalog = options.catalog;
    stats.workers = options.workers;
    stats.nested = options.nested;
    const StatsSummary s = RunStats(stats);
    WriteStamp(summary.stats_path, stats_settings);
    log << "stats: " << s.documents << " documents, " << s.sentences
        << " sentences\n";
    summary.ran.push_back("stats");
  }

  const std::string extract_settings = "extract catalog=" + catalog.fingerprint() +
                                       " " + SelectSettings(options.select);
  const std::vector<std::string> extract_inputs = {summary.stats_path,
                                                   options.catalog.terms_path};
  if (options.force ||
      !UpToDate(summary.taxo_path, extract_inputs, extract_settings) ||
      !UpToDate(summary.provenance_taxo_path, extract_inputs, extract_settings)) {
    ExtractOptions extract;
    extract.stats_path = summary.stats_path;
    extract.stopwords_path = options.stopwords_path;
    extract.catalog = options.catalog;
    extract.select = options.select;
    extract.out_path = summary.taxo_path;
    extract.with_provenance = false;
    const ExtractSummary s = RunExtract(extract);
    extract.out_path = summary.provenance_taxo_path;
    extract.with_provenance = true;
    RunExtract(extract);
    WriteStamp(summary.taxo_path, extract_settings);
    WriteStamp(summary.provenance_taxo_path, extract_settings);
    log << "extract: " << s.pairs << " pairs\n";
    summary.ran.push_back("extract");
  }

  if (!options.gold_path.empty()) {
    const std::string eval_settings =
        "eval gold=" + fs::absolute(options.gold_path).string();
    if (options.force ||
        !UpToDate(summary.report_path,
                  {summary.provenance_taxo_path, options.gold_path},
                  eval_settings)) {
      EvalOptions eval;
      eval.taxo_path = summary.provenance_taxo_path;
      eval.gold_path = options.gold_path;
      eval.report_path = summary.report_path;
      eval.domain = domain;
      std::ofstream text((dir / (domain + ".report.txt")).string());
      RunEval(eval, text, nullptr);
      WriteStamp(summary.report_path, eval_settings);
      log << "eval: report written to " << summary.report_path << "\n";
      summary.ran.push_back("eval");
    }
  }
  return summary;
}

}  // namespace hyperex
