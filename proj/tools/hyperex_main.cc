// Command-line driver: ingest, stats, extract, eval and pipeline.

#include <exception>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "hyperex/errors.h"
#include "hyperex/pipeline.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInput = 2;
constexpr int kExitInternal = 3;

struct SelectFlags {
  int k = 3;
  std::string suffix_mode = "char";
  int connector_len = 2;
  std::string cooc_scope = "all";
  bool attach_orphans = true;
  std::string rank_by = "df";

  hyperex::SelectConfig ToConfig() const {
    hyperex::SelectConfig cfg;
    cfg.k = k;
    cfg.subterm.suffix_mode = hyperex::ParseSuffixMode(suffix_mode);
    cfg.subterm.connector_len = connector_len;
    cfg.cooc_scope = hyperex::ParseCoocScope(cooc_scope);
    cfg.attach_orphans = attach_orphans;
    cfg.rank_by = hyperex::ParseRankBy(rank_by);
    return cfg;
  }
};

void AddCatalogFlags(CLI::App* cmd, hyperex::CatalogOptions* catalog,
                     std::string* stopwords) {
  cmd->add_option("--terms", catalog->terms_path,
                  "Domain terms, one per line (`id<TAB>term` or `term`)")
      ->required();
  cmd->add_option("--domain", catalog->domain, "Domain name")->required();
  cmd->add_option("--root", catalog->root,
                  "Root term; appended to the catalog if absent (default: "
                  "the domain name)");
  cmd->add_option("--stopwords", *stopwords,
                  "Stopword file (default: bundled SMART list)");
}

void AddSelectFlags(CLI::App* cmd, SelectFlags* flags) {
  cmd->add_option("--k", flags->k, "Co-occurrence hypernyms kept per term")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--suffix-mode", flags->suffix_mode,
                  "Suffix rule: char or token-boundary")
      ->check(CLI::IsMember({"char", "token-boundary"}))
      ->capture_default_str();
  cmd->add_option("--connector-len", flags->connector_len,
                  "Length of the token that follows a prefix hypernym")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--cooc-scope", flags->cooc_scope,
                  "Terms that get co-occurrence hypernyms: all or uncovered")
      ->check(CLI::IsMember({"all", "uncovered"}))
      ->capture_default_str();
  cmd->add_flag("--attach-orphans,!--no-attach-orphans", flags->attach_orphans,
                "Link terms without any hypernym to the root (default on)");
  cmd->add_option("--rank-by", flags->rank_by,
                  "Candidate ranking: df (document frequency) or cooc")
      ->check(CLI::IsMember({"df", "cooc"}))
      ->capture_default_str();
}

void PrintWarnings(const std::vector<std::string>& warnings) {
  for (const std::string& w : warnings) std::cerr << "warning: " << w << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hypernym extraction from domain term lists and a text corpus"};
  app.require_subcommand(1);

  // ingest
  hyperex::IngestOptions ingest;
  std::string ingest_encoding = "utf-8";
  bool raw_xml = false;
  CLI::App* ingest_cmd =
      app.add_subcommand("ingest", "Dump -> normalized sentence file");
  ingest_cmd->add_option("--dump", ingest.dump_path, "Wiki XML dump")->required();
  ingest_cmd->add_option("--out", ingest.out_path, "Sentence file to write")
      ->required();
  ingest_cmd->add_option("--stopwords", ingest.stopwords_path,
                         "Stopword file (default: bundled SMART list)");
  ingest_cmd->add_option("--encoding", ingest_encoding, "utf-8 or latin-1")
      ->capture_default_str();
  ingest_cmd->add_flag("--raw-xml", raw_xml,
                       "Keep XML entities (&amp; ...) undecoded");

  // stats
  hyperex::StatsOptions stats;
  bool no_nested = false;
  CLI::App* stats_cmd =
      app.add_subcommand("stats", "Sentence file -> term statistics");
  stats_cmd->add_option("--sentences", stats.sentences_path, "Sentence file")
      ->required();
  stats_cmd->add_option("--out", stats.out_path, "Stats file to write")
      ->required();
  AddCatalogFlags(stats_cmd, &stats.catalog, &stats.stopwords_path);
  stats_cmd->add_option("--workers", stats.workers, "Worker threads")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  stats_cmd->add_flag("--no-nested", no_nested,
                      "Ignore matches lying inside a longer match");

  // extract
  hyperex::ExtractOptions extract;
  SelectFlags extract_flags;
  CLI::App* extract_cmd =
      app.add_subcommand("extract", "Catalog + stats -> .taxo hypernym pairs");
  extract_cmd->add_option("--stats", extract.stats_path, "Stats file")
      ->required();
  extract_cmd->add_option("--out", extract.out_path, ".taxo file to write")
      ->required();
  AddCatalogFlags(extract_cmd, &extract.catalog, &extract.stopwords_path);
  AddSelectFlags(extract_cmd, &extract_flags);
  extract_cmd->add_flag("--with-provenance", extract.with_provenance,
                        "Add technique and score columns");

  // eval
  hyperex::EvalOptions eval;
  CLI::App* eval_cmd =
      app.add_subcommand("eval", "Score a .taxo file against a gold standard");
  eval_cmd->add_option("--taxo", eval.taxo_path,
                       ".taxo file (with provenance for per-technique counts)")
      ->required();
  eval_cmd->add_option("--gold", eval.gold_path, "Gold `hypo<TAB>hyper` pairs")
      ->required();
  eval_cmd->add_option("--report", eval.report_path, "TSV report to write");
  eval_cmd->add_option("--domain", eval.domain, "Domain label for the report");

  // pipeline
  hyperex::PipelineOptions pipeline;
  SelectFlags pipeline_flags;
  std::string pipeline_encoding = "utf-8";
  bool pipeline_no_nested = false;
  CLI::App* pipeline_cmd = app.add_subcommand(
      "pipeline", "ingest -> stats -> extract (-> eval), skipping fresh stages");
  pipeline_cmd->add_option("--dump", pipeline.dump_path, "Wiki XML dump")
      ->required();
  pipeline_cmd->add_option("--workdir", pipeline.workdir,
                           "Directory for stage outputs")
      ->required();
  pipeline_cmd->add_option("--gold", pipeline.gold_path,
                           "Gold standard; enables the eval stage");
  AddCatalogFlags(pipeline_cmd, &pipeline.catalog, &pipeline.stopwords_path);
  AddSelectFlags(pipeline_cmd, &pipeline_flags);
  pipeline_cmd->add_option("--encoding", pipeline_encoding, "utf-8 or latin-1")
      ->capture_default_str();
  pipeline_cmd->add_option("--workers", pipeline.workers, "Stats worker threads")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  pipeline_cmd->add_flag("--no-nested", pipeline_no_nested,
                         "Ignore matches lying inside a longer match");
  pipeline_cmd->add_flag("--force", pipeline.force, "Rebuild every stage");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (ingest_cmd->parsed()) {
      ingest.encoding = hyperex::ParseEncoding(ingest_encoding);
      ingest.unescape_xml = !raw_xml;
      const hyperex::IngestSummary s = hyperex::RunIngest(ingest);
      std::cout << "documents\t" << s.documents << "\n"
                << "sentences\t" << s.sentences << "\n"
                << "tokens\t" << s.tokens << "\n";
      if (s.unterminated > 0) {
        std::cerr << "warning: " << s.unterminated
                  << " unterminated <text> region(s)\n";
      }
      if (s.replacements > 0) {
        std::cerr << "warning: " << s.replacements
                  << " malformed byte sequence(s) replaced\n";
      }
      if (s.merged_titles > 0) {
        std::cerr << "warning: " << s.merged_titles
                  << " document(s) share a title with the previous one and "
                     "will be counted together\n";
      }
    } else if (stats_cmd->parsed()) {
      stats.nested = !no_nested;
      const hyperex::StatsSummary s = hyperex::RunStats(stats);
      PrintWarnings(s.warnings);
      std::cout << "documents\t" << s.documents << "\n"
                << "sentences\t" << s.sentences << "\n";
      if (s.seconds > 0) {
        std::cerr << "stats pass: " << (s.bytes / 1e6) / s.seconds << " MB/s\n";
      }
    } else if (extract_cmd->parsed()) {
      extract.select = extract_flags.ToConfig();
      const hyperex::ExtractSummary s = hyperex::RunExtract(extract);
      PrintWarnings(s.warnings);
      std::cout << "pairs\t" << s.pairs << "\n";
      for (hyperex::Technique t : hyperex::kAllTechniques) {
        std::cout << hyperex::TechniqueName(t) << "\t"
                  << s.produced[static_cast<size_t>(t)] << "\n";
      }
    } else if (eval_cmd->parsed()) {
      std::vector<std::string> warnings;
      hyperex::RunEval(eval, std::cout, &warnings);
      PrintWarnings(warnings);
    } else if (pipeline_cmd->parsed()) {
      pipeline.select = pipeline_flags.ToConfig();
      pipeline.encoding = hyperex::ParseEncoding(pipeline_encoding);
      pipeline.nested = !pipeline_no_nested;
      const hyperex::PipelineSummary s =
          hyperex::RunPipeline(pipeline, std::cout);
      if (s.ran.empty()) std::cout << "all stages up to date\n";
    }
  } catch (const hyperex::InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const hyperex::InvariantError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitOk;
}
