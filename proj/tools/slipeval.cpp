// Copyright 2026 The slipeval Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// slipeval: score ASR transcripts against annotated speech errors.
//
//   slipeval parse    <corpus.tsv>
//   slipeval classify --corpus-path c.tsv --transcript-dir dir [--out r.jsonl]
//   slipeval report   --results r.jsonl --corpus-path c.tsv --report-dir out/
//   slipeval lattice  --corpus-path c.tsv --record ID [--alternatives Tom:1.0]
//   slipeval synth    --spec spec.json --out-dir out/
//
// Exit codes: 0 success, 1 validation failure, 2 configuration/IO failure.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "slipeval/analyze.hpp"
#include "slipeval/classify.hpp"
#include "slipeval/corpus.hpp"
#include "slipeval/errors.hpp"
#include "slipeval/fixture.hpp"
#include "slipeval/lattice.hpp"
#include "slipeval/pipeline.hpp"
#include "slipeval/report.hpp"
#include "slipeval/transcript.hpp"

namespace {

using namespace slipeval;
namespace fs = std::filesystem;

constexpr int kOk = 0;
constexpr int kValidation = 1;
constexpr int kConfig = 2;

// Flag values as parsed; merged over the config file only when given.
struct Overrides {
  std::string config;
  std::size_t jobs = 1;
  std::uint64_t seed = 0;

  std::string corpus_path;
  std::string transcript_dir;
  std::string report_dir;
  std::string segment_map;
  double window_radius_s = 0;
  double min_similarity = 0;
  std::size_t max_span_slack = 0;
  bool lenient_load = false;
  bool no_prefix_match = false;
  bool exclude_alignment_failures = false;
  double min_expected = 0;

  std::string results;
  std::string out;
  std::size_t step_sample = 0;

  std::string record;
  std::vector<std::string> alternatives;
  std::string format = "arclist";
  double correction_bias = 1.0;
  double verbatim_bias = 1.0;
  PathMasses masses;

  std::string spec;
  std::string out_dir;
};

// True when `name` was passed on the command line of `sub`.
bool given(const CLI::App& sub, const std::string& name) {
  const CLI::Option* o = sub.get_option_no_throw(name);
  return o && o->count() > 0;
}

RunConfig resolve_config(const Overrides& ov, const CLI::App& sub) {
  RunConfig cfg = ov.config.empty() ? RunConfig{} : load_run_config(ov.config);
  if (given(sub, "--corpus-path")) cfg.corpus_path = ov.corpus_path;
  if (given(sub, "--transcript-dir")) cfg.transcript_dir = ov.transcript_dir;
  if (given(sub, "--report-dir")) cfg.report_dir = ov.report_dir;
  if (given(sub, "--window-radius-s")) cfg.align.window_radius_s = ov.window_radius_s;
  if (given(sub, "--min-similarity")) cfg.align.min_similarity = ov.min_similarity;
  if (given(sub, "--max-span-slack")) cfg.align.max_span_slack = ov.max_span_slack;
  if (given(sub, "--lenient-load")) cfg.flags.lenient_load = true;
  if (given(sub, "--no-prefix-match")) cfg.flags.no_prefix_match = true;
  if (given(sub, "--exclude-alignment-failures")) cfg.flags.exclude_alignment_failures = true;
  if (given(sub, "--min-expected")) cfg.flags.min_expected = ov.min_expected;
  cfg.align.validate();
  if (!(cfg.flags.min_expected >= 0.0)) throw ConfigError("min_expected must be >= 0");
  return cfg;
}

void require_path(const fs::path& p, std::string_view what, bool directory) {
  if (p.empty()) throw ConfigError(fmt::format("{} is required", what));
  if (directory ? !fs::is_directory(p) : !fs::is_regular_file(p)) {
    throw ConfigError(fmt::format("{} does not exist: {}", what, p.string()));
  }
}

struct LoadedCorpus {
  std::optional<SegmentMap> segment_map;
  CorpusLoad load;
};

LoadedCorpus load_for_run(const RunConfig& cfg, const Overrides& ov) {
  require_path(cfg.corpus_path, "corpus_path", false);
  LoadedCorpus lc;
  if (!ov.segment_map.empty()) lc.segment_map = load_segment_map(ov.segment_map);
  LoadOptions opts;
  opts.lenient = cfg.flags.lenient_load;
  opts.segment_map = lc.segment_map ? &*lc.segment_map : nullptr;
  lc.load = load_corpus(cfg.corpus_path, opts);
  for (const auto& e : lc.load.errors) {
    std::cerr << fmt::format("warning: line {}: {} (skipped)\n", e.line, e.message);
  }
  for (const auto& w : lc.load.warnings) std::cerr << "warning: " << w << '\n';
  return lc;
}

int cmd_parse(const Overrides& ov, const CLI::App& sub, const std::string& positional) {
  RunConfig cfg = resolve_config(ov, sub);
  if (!positional.empty()) cfg.corpus_path = positional;
  require_path(cfg.corpus_path, "corpus", false);
  std::optional<SegmentMap> map;
  if (!ov.segment_map.empty()) map = load_segment_map(ov.segment_map);
  LoadOptions opts;
  opts.lenient = true;
  opts.segment_map = map ? &*map : nullptr;
  const CorpusLoad load = load_corpus(cfg.corpus_path, opts);
  for (const auto& e : load.errors) {
    std::cout << fmt::format("line {}: {}\n", e.line, e.message);
  }
  for (const auto& w : load.warnings) std::cout << "warning: " << w << '\n';
  std::cout << fmt::format("{} records", load.records.size());
  if (!load.errors.empty()) std::cout << fmt::format(", {} invalid rows", load.errors.size());
  std::cout << '\n';
  return load.errors.empty() ? kOk : kValidation;
}

int cmd_classify(const Overrides& ov, const CLI::App& sub) {
  const RunConfig cfg = resolve_config(ov, sub);
  require_path(cfg.transcript_dir, "transcript_dir", true);
  const LoadedCorpus lc = load_for_run(cfg, ov);
  std::vector<std::string> warnings;
  const TranscriptMap transcripts =
      load_transcripts(cfg.transcript_dir, lc.load.records, warnings);
  for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';

  ClassifyOptions copts;
  copts.prefix_match = !cfg.flags.no_prefix_match;
  const auto results =
      classify_corpus(lc.load.records, transcripts, cfg.align, copts, ov.jobs);

  std::ofstream file;
  if (!ov.out.empty()) {
    file.open(ov.out, std::ios::binary);
    if (!file) throw ConfigError("cannot write " + ov.out);
  }
  std::ostream& out = ov.out.empty() ? std::cout : file;
  for (const auto& r : results) out << to_jsonl(r) << '\n';

  const OutcomeCounts counts = count_outcomes(results);
  std::size_t failed = 0;
  for (const auto& r : results) failed += r.diagnostics.has(Diagnostic::AlignmentFailed);
  std::ostream& summary = ov.out.empty() ? std::cerr : std::cout;
  summary << fmt::format(
      "records={} corrected={} faithful={} incorrect={} alignment_failed={} accuracy={}\n",
      counts.total(), counts.corrected, counts.faithful, counts.incorrect, failed,
      counts.total() ? fmt::format("{:.6f}", accuracy(counts)) : std::string("n/a"));
  return kOk;
}

int cmd_report(const Overrides& ov, const CLI::App& sub) {
  const RunConfig cfg = resolve_config(ov, sub);
  if (cfg.report_dir.empty()) throw ConfigError("report_dir is required");
  require_path(ov.results, "results", false);
  const LoadedCorpus lc = load_for_run(cfg, ov);
  const auto results = load_results(ov.results);
  ReportOptions ropts;
  ropts.exclude_alignment_failures = cfg.flags.exclude_alignment_failures;
  ropts.min_expected = cfg.flags.min_expected;
  ropts.step_sample_k = ov.step_sample;
  const auto files = write_report(cfg.report_dir, results, lc.load.records, ropts);
  std::cout << fmt::format("wrote {} files to {}\n", files.size(), cfg.report_dir.string());
  return kOk;
}

Alternative parse_alternative(const std::string& spec) {
  const auto colon = spec.rfind(':');
  Alternative alt;
  if (colon == std::string::npos) {
    alt.word = spec;
    return alt;
  }
  alt.word = spec.substr(0, colon);
  try {
    std::size_t used = 0;
    alt.probability = std::stod(spec.substr(colon + 1), &used);
    if (used != spec.size() - colon - 1) throw std::invalid_argument(spec);
  } catch (const std::exception&) {
    throw ConfigError("bad alternative '" + spec + "', expected word:probability");
  }
  return alt;
}

int cmd_lattice(const Overrides& ov, const CLI::App& sub) {
  const RunConfig cfg = resolve_config(ov, sub);
  const LoadedCorpus lc = load_for_run(cfg, ov);
  const ErrorRecord* rec = nullptr;
  for (const auto& r : lc.load.records) {
    if (r.record_id == ov.record) rec = &r;
  }
  if (!rec) throw ConfigError("unknown record '" + ov.record + "'");
  const auto format = parse_export_format(ov.format);
  if (!format) throw ConfigError("unknown format '" + ov.format + "'");

  std::vector<Alternative> alts;
  for (const auto& a : ov.alternatives) alts.push_back(parse_alternative(a));
  if (alts.empty() && !ov.results.empty()) {
    // Offer the transcribed slot word as the competing hypothesis.
    for (const auto& r : load_results(ov.results)) {
      if (r.record_id != rec->record_id || !r.matched_text) continue;
      const std::string m = normalize(*r.matched_text);
      const bool is_error = m == normalize(rec->annotation.error_surface);
      const bool is_intended = rec->intended_word && m == normalize(*rec->intended_word);
      if (!m.empty() && !is_error && !is_intended) alts.push_back({m, 1.0});
    }
  }

  std::optional<std::string_view> intended;
  if (rec->intended_word) intended = *rec->intended_word;
  Lattice lattice =
      build_error_lattice(rec->annotation.error_surface, intended, alts, ov.masses);
  lattice = reweight(lattice, {ov.correction_bias, ov.verbatim_bias});
  std::cout << export_lattice(lattice, *format);
  const BestPath best = best_path(lattice);
  std::string labels;
  for (const auto& l : best.labels) labels += (labels.empty() ? "" : " ") + l;
  std::cout << fmt::format("# best_path\t{}\t{:.6f}\n", labels, best.total_weight);
  return kOk;
}

int cmd_synth(const Overrides& ov, const CLI::App& sub) {
  FixtureSpec spec = load_fixture_spec(ov.spec);
  if (given(*sub.get_parent(), "--seed")) spec.seed = ov.seed;
  const Fixture fx = generate_fixture(spec);
  write_fixture(fx, ov.out_dir);
  std::cout << fmt::format("{} records, {} transcripts -> {}\n", fx.records.size(),
                           fx.transcripts.size(), ov.out_dir);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Speech-error-aware ASR transcript scoring"};
  app.require_subcommand(1);
  app.fallthrough();
  Overrides ov;
  app.add_option("--config", ov.config, "JSON run configuration")->check(CLI::ExistingFile);
  app.add_option("--jobs", ov.jobs, "worker threads for classify")->check(CLI::Range(1, 256));
  app.add_option("--seed", ov.seed, "override the fixture seed (synth)");

  const auto add_corpus = [&](CLI::App* sub) {
    sub->add_option("--corpus-path", ov.corpus_path, "corpus TSV");
    sub->add_option("--segment-map", ov.segment_map, "ipa<TAB>graphemes rewrite table");
    sub->add_flag("--lenient-load", ov.lenient_load, "skip invalid rows");
  };

  std::string positional;
  auto* parse = app.add_subcommand("parse", "validate a corpus TSV");
  parse->add_option("corpus", positional, "corpus TSV");
  parse->add_option("--corpus-path", ov.corpus_path, "corpus TSV");
  parse->add_option("--segment-map", ov.segment_map, "ipa<TAB>graphemes rewrite table");

  auto* classify = app.add_subcommand("classify", "align and classify every error");
  add_corpus(classify);
  classify->add_option("--transcript-dir", ov.transcript_dir,
                       "directory of <audio_id>.json transcripts");
  classify->add_option("--out", ov.out, "JSONL output (default: stdout)");
  classify->add_option("--window-radius-s", ov.window_radius_s);
  classify->add_option("--min-similarity", ov.min_similarity);
  classify->add_option("--max-span-slack", ov.max_span_slack);
  classify->add_flag("--no-prefix-match", ov.no_prefix_match);

  auto* report = app.add_subcommand("report", "write breakdowns and chi-square tests");
  add_corpus(report);
  report->add_option("--results", ov.results, "classify JSONL output")->required();
  report->add_option("--report-dir", ov.report_dir, "output directory");
  report->add_flag("--exclude-alignment-failures", ov.exclude_alignment_failures);
  report->add_option("--min-expected", ov.min_expected);
  report->add_option("--step-sample", ov.step_sample, "write every k-th result for audit");

  auto* lattice = app.add_subcommand("lattice", "build and decode an error lattice");
  add_corpus(lattice);
  lattice->add_option("--record", ov.record, "record_id")->required();
  lattice->add_option("--results", ov.results, "classify JSONL output");
  lattice->add_option("--alternatives", ov.alternatives, "word:probability")->delimiter(',');
  lattice->add_option("--format", ov.format, "arclist|dot");
  lattice->add_option("--correction-bias", ov.correction_bias);
  lattice->add_option("--verbatim-bias", ov.verbatim_bias);
  lattice->add_option("--error-mass", ov.masses.error);
  lattice->add_option("--intended-mass", ov.masses.intended);
  lattice->add_option("--alternative-mass", ov.masses.alternatives);

  auto* synth = app.add_subcommand("synth", "generate a synthetic fixture corpus");
  synth->add_option("--spec", ov.spec, "fixture spec JSON")->required()->check(CLI::ExistingFile);
  synth->add_option("--out-dir", ov.out_dir, "output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kConfig;
  }

  try {
    if (*classify) return cmd_classify(ov, *classify);
    if (*report) return cmd_report(ov, *report);
    if (*lattice) return cmd_lattice(ov, *lattice);
    if (*synth) return cmd_synth(ov, *synth);
    return cmd_parse(ov, *parse, positional);
  } catch (const CorpusError& e) {
    for (const auto& row : e.rows()) {
      std::cerr << fmt::format("line {}: {}\n", row.line, row.message);
    }
    std::cerr << fmt::format("error: {} invalid row(s)\n", e.rows().size());
    return kValidation;
  } catch (const SchemaError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kValidation;
  } catch (const MalformedNotation& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfig;
  }
}
