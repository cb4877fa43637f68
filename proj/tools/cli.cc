// Copyright 2026 The segrobust Authors.
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

#include "cli.h"

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "segrobust/errors.h"
#include "segrobust/io.h"
#include "segrobust/random.h"

namespace segrobust::cli {
namespace {

using nlohmann::json;

void RejectUnknownKeys(const json& object, const std::string& section,
                       std::initializer_list<std::string_view> known) {
  if (!object.is_object()) {
    throw ConfigError("config section '" + section + "' must be an object");
  }
  for (const auto& [key, value] : object.items()) {
    bool found = false;
    for (auto k : known) found = found || key == k;
    if (!found) {
      throw ConfigError("unknown config key '" + section +
                        (section.empty() ? "" : ".") + key + "'");
    }
  }
}

template <typename T>
void Read(const json& object, const char* key, T& field) {
  if (object.contains(key)) field = object.at(key).get<T>();
}

void ReadPolicy(const json& object, NormalizationPolicy& policy) {
  Read(object, "strip_punctuation", policy.strip_punctuation);
  Read(object, "lowercase", policy.lowercase);
  Read(object, "strip_symbols", policy.strip_symbols);
}

Smoothing ParseSmoothing(const std::string& name) {
  if (name == "none") return Smoothing::kNone;
  if (name == "add-one") return Smoothing::kAddOneAboveUnigram;
  throw ConfigError("unknown smoothing '" + name + "' (none | add-one)");
}

BucketBounds ParseBounds(const std::string& text) {
  BucketBounds bounds;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto colon = item.find(':');
    try {
      if (colon == std::string::npos) throw std::invalid_argument(item);
      bounds.emplace_back(std::stoul(item.substr(0, colon)),
                          std::stoul(item.substr(colon + 1)));
    } catch (const std::logic_error&) {
      throw ConfigError("bad bucket '" + item + "' (expected lower:upper)");
    }
  }
  ValidateBucketBounds(bounds);
  return bounds;
}

}  // namespace

PipelineConfig ParseConfig(const std::string& json_text) {
  PipelineConfig cfg;
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  try {
    RejectUnknownKeys(root, "",
                      {"seed", "output", "normalization", "alignment",
                       "segmentation", "augmentation", "mixture", "bleu",
                       "buckets", "noise"});
    Read(root, "seed", cfg.seed);
    Read(root, "output", cfg.output);
    if (root.contains("normalization")) {
      const auto& n = root.at("normalization");
      RejectUnknownKeys(n, "normalization",
                        {"strip_punctuation", "lowercase", "strip_symbols"});
      ReadPolicy(n, cfg.normalization);
    }
    if (root.contains("alignment")) {
      const auto& a = root.at("alignment");
      RejectUnknownKeys(a, "alignment",
                        {"strip_punctuation", "lowercase", "strip_symbols",
                         "band_width"});
      ReadPolicy(a, cfg.alignment.normalization);
      if (a.contains("band_width") && !a.at("band_width").is_null()) {
        cfg.alignment.band_width = a.at("band_width").get<size_t>();
      }
    }
    if (root.contains("segmentation")) {
      const auto& s = root.at("segmentation");
      RejectUnknownKeys(s, "segmentation",
                        {"abbreviations", "pause_threshold_sec",
                         "max_tokens", "fixed_length"});
      Read(s, "abbreviations", cfg.abbreviations);
      Read(s, "pause_threshold_sec", cfg.pause.pause_threshold_sec);
      Read(s, "max_tokens", cfg.pause.max_tokens);
      Read(s, "fixed_length", cfg.fixed_length);
    }
    if (root.contains("augmentation")) {
      const auto& a = root.at("augmentation");
      RejectUnknownKeys(a, "augmentation", {"p_max"});
      Read(a, "p_max", cfg.augmentation.p_max);
    }
    if (root.contains("mixture")) {
      const auto& m = root.at("mixture");
      RejectUnknownKeys(m, "mixture",
                        {"corpus_weights", "augmented_fraction", "total"});
      Read(m, "corpus_weights", cfg.mixture.corpus_weights);
      if (m.contains("augmented_fraction")) {
        const auto& f = m.at("augmented_fraction");
        if (f.is_object()) {
          cfg.mixture.augmented_fraction =
              f.get<std::map<std::string, double>>();
        } else {
          cfg.mixture.default_augmented_fraction = f.get<double>();
        }
      }
      Read(m, "total", cfg.mixture_total);
    }
    if (root.contains("bleu")) {
      const auto& b = root.at("bleu");
      RejectUnknownKeys(b, "bleu",
                        {"max_ngram_order", "case_sensitive", "smoothing"});
      Read(b, "max_ngram_order", cfg.bleu.max_ngram_order);
      Read(b, "case_sensitive", cfg.bleu.case_sensitive);
      if (b.contains("smoothing")) {
        cfg.bleu.smoothing = ParseSmoothing(b.at("smoothing").get<std::string>());
      }
    }
    if (root.contains("buckets")) {
      cfg.buckets = root.at("buckets").get<BucketBounds>();
    }
    if (root.contains("noise")) {
      const auto& n = root.at("noise");
      RejectUnknownKeys(n, "noise",
                        {"substitution_rate", "deletion_rate", "insertion_rate",
                         "boundary_merge_rate", "boundary_split_rate",
                         "vocabulary"});
      Read(n, "substitution_rate", cfg.noise.substitution_rate);
      Read(n, "deletion_rate", cfg.noise.deletion_rate);
      Read(n, "insertion_rate", cfg.noise.insertion_rate);
      Read(n, "boundary_merge_rate", cfg.noise.boundary_merge_rate);
      Read(n, "boundary_split_rate", cfg.noise.boundary_split_rate);
      Read(n, "vocabulary", cfg.noise.vocabulary);
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad config value: ") + e.what());
  }
  cfg.augmentation.Validate();
  cfg.mixture.Validate();
  cfg.bleu.Validate();
  cfg.pause.Validate();
  ValidateBucketBounds(cfg.buckets);
  if (cfg.fixed_length == 0) throw ConfigError("fixed_length must be >= 1");
  return cfg;
}

PipelineConfig LoadConfigFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path + ": cannot open config file");
  std::stringstream ss;
  ss << in.rdbuf();
  return ParseConfig(ss.str());
}

namespace {

enum class ReportFormat { kTable, kJsonl };

// Flags shared by several subcommands. Optional ones override the config.
struct Flags {
  std::string config_path;
  std::optional<uint64_t> seed;
  std::string output;
  std::string format = "table";

  std::vector<std::string> inputs;

  // normalize
  std::string policy = "stripped";
  // segment
  std::vector<std::string> abbreviations;
  std::optional<double> threshold;
  std::optional<size_t> max_tokens;
  std::optional<size_t> fixed_n;
  // variants
  std::string out_dir;
  // augment / mix
  std::optional<double> p_max;
  std::vector<std::string> corpus_specs;
  std::vector<std::string> augmented_specs;
  std::vector<std::string> weight_specs;
  std::optional<double> augmented_fraction;
  std::optional<size_t> total;
  // score / report
  bool resegment = false;
  std::optional<int> max_order;
  bool case_insensitive = false;
  std::optional<std::string> smoothing;
  std::optional<std::string> bounds;
  // simulate
  std::optional<double> sub_rate;
  std::optional<double> del_rate;
  std::optional<double> ins_rate;
  std::optional<double> merge_rate;
  std::optional<double> split_rate;
  std::string vocab_path;
};

// Writes to the requested file, or to `out` when no file was named.
class Output {
 public:
  Output(const std::string& path, std::ostream& fallback) : path_(path), fallback_(fallback) {}

  std::ostream& stream() { return buffer_; }

  void Commit() {
    if (path_.empty()) {
      fallback_ << buffer_.str();
      return;
    }
    std::ofstream file(path_, std::ios::binary);
    if (!file) throw InputError(path_ + ": cannot open for writing");
    file << buffer_.str();
  }

 private:
  std::string path_;
  std::ostream& fallback_;
  std::ostringstream buffer_;
};

std::pair<std::string, std::string> SplitLabel(const std::string& spec,
                                               const char* flag) {
  const auto eq = spec.find('=');
  if (eq == std::string::npos || eq == 0 || eq + 1 == spec.size()) {
    throw ConfigError(std::string(flag) + " expects LABEL=VALUE, got '" + spec +
                      "'");
  }
  return {spec.substr(0, eq), spec.substr(eq + 1)};
}

void PrintBleuTable(std::ostream& out, const BleuReport& r) {
  out << std::fixed << std::setprecision(2);
  out << "BLEU      " << r.score << '\n';
  out << std::setprecision(4);
  out << "BP        " << r.brevity_penalty << '\n';
  for (size_t n = 0; n < r.ngram_precisions.size(); ++n) {
    out << "P" << n + 1 << "        " << r.ngram_precisions[n] << '\n';
  }
  out << "hyp_len   " << r.hyp_len << '\n';
  out << "ref_len   " << r.ref_len << '\n';
  out.unsetf(std::ios::floatfield);
  out << std::setprecision(6);
}

std::vector<Segment> AllSegments(const std::vector<SegmentedDocument>& docs) {
  std::vector<Segment> out;
  for (const auto& d : docs) {
    out.insert(out.end(), d.segments().begin(), d.segments().end());
  }
  return out;
}

void RequireSameDocCount(const std::vector<SegmentedDocument>& a,
                         const std::vector<SegmentedDocument>& b,
                         const std::string& what) {
  if (a.size() != b.size()) {
    throw InputError(what + ": document counts differ (" +
                     std::to_string(a.size()) + " vs " +
                     std::to_string(b.size()) + ")");
  }
}

class Runner {
 public:
  Runner(PipelineConfig cfg, Flags flags, std::ostream& out, std::ostream& err)
      : cfg_(std::move(cfg)), flags_(std::move(flags)), out_(out), err_(err) {
    if (flags_.seed) cfg_.seed = *flags_.seed;
    if (!flags_.output.empty()) cfg_.output = flags_.output;
    if (flags_.format != "table" && flags_.format != "jsonl") {
      throw ConfigError("--format must be table or jsonl");
    }
    format_ = flags_.format == "jsonl" ? ReportFormat::kJsonl : ReportFormat::kTable;
  }

  void Normalize() {
    NormalizationPolicy policy;
    if (flags_.policy == "stripped") {
      policy = NormalizationPolicy::Stripped();
    } else if (flags_.policy == "punctuated") {
      policy = NormalizationPolicy::Punctuated();
    } else if (flags_.policy == "config") {
      policy = cfg_.normalization;
    } else {
      throw ConfigError("--policy must be stripped, punctuated or config");
    }
    std::vector<SegmentedDocument> docs;
    for (const auto& d : ReadDocumentsFile(flags_.inputs.at(0))) {
      docs.push_back(NormalizeDocument(d, policy));
    }
    Emit([&](std::ostream& o) { WriteDocuments(o, docs); });
  }

  void SegmentPunct() {
    std::set<std::string> abbreviations = cfg_.abbreviations;
    if (!flags_.abbreviations.empty()) {
      abbreviations = {flags_.abbreviations.begin(), flags_.abbreviations.end()};
    }
    std::vector<SegmentedDocument> docs;
    for (const auto& d : ReadDocumentsFile(flags_.inputs.at(0))) {
      docs.push_back(BreakOnPunctuation(Flatten(d).tokens, abbreviations, d.doc_id()));
    }
    Emit([&](std::ostream& o) { WriteDocuments(o, docs); });
  }

  void SegmentFixed() {
    const size_t n = flags_.fixed_n.value_or(cfg_.fixed_length);
    std::vector<SegmentedDocument> docs;
    for (const auto& d : ReadDocumentsFile(flags_.inputs.at(0))) {
      docs.push_back(SplitFixedLength(Flatten(d).tokens, n, d.doc_id()));
    }
    Emit([&](std::ostream& o) { WriteDocuments(o, docs); });
  }

  void SegmentPause() {
    PauseSplitConfig pause = cfg_.pause;
    if (flags_.threshold) pause.pause_threshold_sec = *flags_.threshold;
    if (flags_.max_tokens) pause.max_tokens = *flags_.max_tokens;
    pause.Validate();
    std::vector<SegmentedDocument> docs;
    for (const auto& t : ReadTimedTranscriptsFile(flags_.inputs.at(0))) {
      docs.push_back(SplitOnPauses(t, pause));
    }
    Emit([&](std::ostream& o) { WriteDocuments(o, docs); });
  }

  void Project() {
    const auto source = ReadDocumentsFile(flags_.inputs.at(0));
    const auto target = ReadDocumentsFile(flags_.inputs.at(1));
    RequireSameDocCount(source, target, "project");
    std::vector<SegmentedDocument> docs;
    for (size_t d = 0; d < source.size(); ++d) {
      docs.push_back(ProjectBoundaries(source[d], Flatten(target[d]).tokens,
                                       cfg_.alignment));
    }
    Emit([&](std::ostream& o) { WriteDocuments(o, docs); });
  }

  void Variants() {
    const auto gold = ReadDocumentsFile(flags_.inputs.at(0));
    const auto system = ReadDocumentsFile(flags_.inputs.at(1));
    RequireSameDocCount(gold, system, "variants");
    std::map<std::string, std::vector<SegmentedDocument>> outputs;
    for (size_t d = 0; d < gold.size(); ++d) {
      auto set = MakeErrorVariants(gold[d], system[d], cfg_.alignment);
      outputs["gold"].push_back(std::move(set.gold));
      outputs["system"].push_back(std::move(set.system));
      outputs["recognition"].push_back(std::move(set.recognition_errors));
      outputs["segmentation"].push_back(std::move(set.segmentation_errors));
    }
    static constexpr const char* kOrder[] = {"gold", "system", "recognition",
                                             "segmentation"};
    if (flags_.out_dir.empty()) {
      for (const char* name : kOrder) {
        out_ << "== " << name << '\n';
        WriteDocuments(out_, outputs[name]);
      }
      return;
    }
    for (const char* name : kOrder) {
      Output file(flags_.out_dir + "/" + name + ".txt", out_);
      WriteDocuments(file.stream(), outputs[name]);
      file.Commit();
      err_ << "wrote " << flags_.out_dir << "/" << name << ".txt\n";
    }
  }

  void Augment() {
    AugmentationConfig aug = cfg_.augmentation;
    if (flags_.p_max) aug.p_max = *flags_.p_max;
    aug.Validate();
    err_ << "seed: " << cfg_.seed << '\n';
    const auto docs = ReadBitextFile(flags_.inputs.at(0));
    std::vector<BitextDocument> result;
    size_t skipped = 0;
    size_t produced = 0;
    for (size_t d = 0; d < docs.size(); ++d) {
      aug.seed = DeriveSeed(cfg_.seed, static_cast<uint64_t>(d));
      auto r = AugmentCorpus(docs[d], aug);
      skipped += r.skipped;
      produced += r.pairs.size();
      result.push_back(std::move(r.pairs));
    }
    err_ << "pairs: " << produced << " skipped: " << skipped << '\n';
    Emit([&](std::ostream& o) { WriteBitext(o, result); });
  }

  void Mix() {
    MixtureSpec spec = cfg_.mixture;
    spec.seed = cfg_.seed;
    if (!flags_.weight_specs.empty()) {
      spec.corpus_weights.clear();
      spec.augmented_fraction.clear();
      for (const auto& w : flags_.weight_specs) {
        auto [label, value] = SplitLabel(w, "--weight");
        try {
          spec.corpus_weights[label] = std::stod(value);
        } catch (const std::logic_error&) {
          throw ConfigError("--weight value for " + label + " is not a number");
        }
      }
    }
    if (flags_.augmented_fraction) {
      spec.augmented_fraction.clear();
      spec.default_augmented_fraction = *flags_.augmented_fraction;
    }
    AugmentationConfig aug = cfg_.augmentation;
    if (flags_.p_max) aug.p_max = *flags_.p_max;
    const size_t total = flags_.total.value_or(cfg_.mixture_total);

    std::map<std::string, CorpusPools> corpora;
    for (const auto& c : flags_.corpus_specs) {
      auto [label, path] = SplitLabel(c, "--corpus");
      for (auto& doc : ReadBitextFile(path, label)) {
        auto& pool = corpora[label].originals;
        pool.insert(pool.end(), doc.begin(), doc.end());
      }
    }
    std::set<std::string> given_augmented;
    for (const auto& c : flags_.augmented_specs) {
      auto [label, path] = SplitLabel(c, "--augmented");
      given_augmented.insert(label);
      for (auto& doc : ReadBitextFile(path, label)) {
        auto& pool = corpora[label].augmented;
        pool.insert(pool.end(), doc.begin(), doc.end());
      }
    }
    // Corpora without a precomputed augmented file are augmented here, one
    // document at a time so merges never cross a document boundary.
    for (const auto& c : flags_.corpus_specs) {
      auto [label, path] = SplitLabel(c, "--corpus");
      if (given_augmented.contains(label)) continue;
      const auto docs = ReadBitextFile(path, label);
      for (size_t d = 0; d < docs.size(); ++d) {
        aug.seed = DeriveSeed(DeriveSeed(cfg_.seed, label), static_cast<uint64_t>(d));
        auto r = AugmentCorpus(docs[d], aug);
        auto& pool = corpora[label].augmented;
        pool.insert(pool.end(), r.pairs.begin(), r.pairs.end());
      }
    }

    err_ << "seed: " << cfg_.seed << '\n';
    const auto draws = SampleMixture(corpora, spec, total);
    std::map<std::string, size_t> per_corpus;
    size_t augmented = 0;
    Emit([&](std::ostream& o) {
      for (const auto& draw : draws) {
        const auto& pools = corpora.at(draw.corpus);
        const auto& pair = draw.augmented ? pools.augmented[draw.index]
                                          : pools.originals[draw.index];
        o << Detokenize(pair.source) << '\t' << Detokenize(pair.target) << '\t'
          << draw.corpus << '\t' << (draw.augmented ? "augmented" : "original")
          << '\n';
        ++per_corpus[draw.corpus];
        if (draw.augmented) ++augmented;
      }
    });
    for (const auto& [label, count] : per_corpus) {
      err_ << label << ": " << count << '\n';
    }
    err_ << "augmented: " << augmented << " of " << draws.size() << '\n';
  }

  void Score() {
    BleuConfig bleu = BleuFromFlags(cfg_.bleu);
    const auto hyp = ReadDocumentsFile(flags_.inputs.at(0));
    const auto ref = ReadDocumentsFile(flags_.inputs.at(1));
    BleuReport report;
    if (flags_.resegment) {
      RequireSameDocCount(hyp, ref, "score");
      report = ResegmentAndScore(hyp, ref, bleu, cfg_.alignment);
    } else {
      report = CorpusBleu(AllSegments(hyp), AllSegments(ref), bleu);
    }
    Emit([&](std::ostream& o) {
      if (format_ == ReportFormat::kJsonl) {
        o << ToJson(report).dump() << '\n';
      } else {
        PrintBleuTable(o, report);
      }
    });
  }

  void WordErrorRate() {
    const auto ref = ReadDocumentsFile(flags_.inputs.at(0));
    const auto hyp = ReadDocumentsFile(flags_.inputs.at(1));
    RequireSameDocCount(ref, hyp, "wer");
    std::vector<std::pair<std::string, WerStats>> rows;
    WerStats total;
    for (size_t d = 0; d < ref.size(); ++d) {
      auto stats = ComputeWerStats(Flatten(ref[d]).tokens, Flatten(hyp[d]).tokens);
      total += stats;
      rows.emplace_back(ref[d].doc_id(), stats);
    }
    const double rate = total.rate();
    Emit([&](std::ostream& o) {
      auto row_rate = [](const WerStats& s) -> json {
        if (s.reference_length == 0) return nullptr;
        return s.rate();
      };
      if (format_ == ReportFormat::kJsonl) {
        for (const auto& [id, s] : rows) {
          o << json{{"type", "wer"}, {"doc_id", id}, {"edits", s.edits},
                    {"ref_len", s.reference_length}, {"wer", row_rate(s)}}
                   .dump()
            << '\n';
        }
        o << json{{"type", "wer_total"}, {"edits", total.edits},
                  {"ref_len", total.reference_length}, {"wer", rate}}
                 .dump()
          << '\n';
        return;
      }
      o << std::left << std::setw(12) << "doc" << std::right << std::setw(8)
        << "edits" << std::setw(10) << "ref_len" << std::setw(10) << "wer"
        << '\n';
      auto line = [&](const std::string& id, const WerStats& s) {
        o << std::left << std::setw(12) << id << std::right << std::setw(8)
          << s.edits << std::setw(10) << s.reference_length << std::setw(10);
        if (s.reference_length == 0) {
          o << "n/a";
        } else {
          o << std::fixed << std::setprecision(4) << s.rate();
          o.unsetf(std::ios::floatfield);
        }
        o << '\n';
      };
      for (const auto& [id, s] : rows) line(id, s);
      line("TOTAL", total);
    });
  }

  void Simulate() {
    NoiseConfig noise = cfg_.noise;
    noise.seed = cfg_.seed;
    if (flags_.sub_rate) noise.substitution_rate = *flags_.sub_rate;
    if (flags_.del_rate) noise.deletion_rate = *flags_.del_rate;
    if (flags_.ins_rate) noise.insertion_rate = *flags_.ins_rate;
    if (flags_.merge_rate) noise.boundary_merge_rate = *flags_.merge_rate;
    if (flags_.split_rate) noise.boundary_split_rate = *flags_.split_rate;
    const auto docs = ReadDocumentsFile(flags_.inputs.at(0));
    if (!flags_.vocab_path.empty()) {
      noise.vocabulary.clear();
      for (const auto& d : ReadDocumentsFile(flags_.vocab_path)) {
        for (const auto& t : Flatten(d).tokens) noise.vocabulary.push_back(t);
      }
    }
    if (noise.vocabulary.empty()) {
      std::set<Token> seen;
      for (const auto& d : docs) {
        for (const auto& t : Flatten(d).tokens) seen.insert(t);
      }
      noise.vocabulary.assign(seen.begin(), seen.end());
    }
    err_ << "seed: " << cfg_.seed << '\n';
    std::vector<SegmentedDocument> result;
    for (const auto& d : docs) {
      result.push_back(CorruptBoundaries(CorruptTokens(d, noise), noise));
    }
    Emit([&](std::ostream& o) { WriteDocuments(o, result); });
  }

  void Report() {
    BleuConfig bleu = cfg_.bleu;
    bleu.smoothing = Smoothing::kAddOneAboveUnigram;
    bleu = BleuFromFlags(bleu);
    const BucketBounds bounds =
        flags_.bounds ? ParseBounds(*flags_.bounds) : cfg_.buckets;
    const auto hyp = ReadDocumentsFile(flags_.inputs.at(0));
    const auto ref = ReadDocumentsFile(flags_.inputs.at(1));
    RequireSameDocCount(hyp, ref, "report");
    const auto report = BucketReport(hyp, ref, bounds, bleu, cfg_.alignment);
    Emit([&](std::ostream& o) {
      if (format_ == ReportFormat::kJsonl) {
        for (const auto& b : report.buckets) o << ToJson(b).dump() << '\n';
        return;
      }
      o << std::left << std::setw(12) << "bucket" << std::right << std::setw(8)
        << "count" << std::setw(12) << "mean_bleu" << '\n';
      for (const auto& b : report.buckets) {
        const std::string name =
            "{" + std::to_string(b.lower) + ":" + std::to_string(b.upper) + "}";
        o << std::left << std::setw(12) << name << std::right << std::setw(8)
          << b.count << std::setw(12) << std::fixed << std::setprecision(2)
          << b.mean_score << '\n';
        o.unsetf(std::ios::floatfield);
      }
    });
  }

 private:
  BleuConfig BleuFromFlags(BleuConfig bleu) const {
    if (flags_.max_order) bleu.max_ngram_order = *flags_.max_order;
    if (flags_.case_insensitive) bleu.case_sensitive = false;
    if (flags_.smoothing) bleu.smoothing = ParseSmoothing(*flags_.smoothing);
    bleu.Validate();
    return bleu;
  }

  void Emit(const std::function<void(std::ostream&)>& write) {
    Output output(cfg_.output, out_);
    write(output.stream());
    output.Commit();
  }

  PipelineConfig cfg_;
  Flags flags_;
  std::ostream& out_;
  std::ostream& err_;
  ReportFormat format_ = ReportFormat::kTable;
};

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  Flags flags;
  CLI::App app{"Segmentation-robustness toolkit for long-form speech translation"};
  app.name("segrobust");
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();
  app.add_option("--config", flags.config_path,
                 std::string("JSON configuration file (default: $") +
                     kConfigEnvVar + ")");

  auto add_output = [&](CLI::App* sub) {
    sub->add_option("-o,--output", flags.output, "Output file (default: stdout)");
  };
  auto add_seed = [&](CLI::App* sub) {
    sub->add_option("--seed", flags.seed, "Random seed");
  };
  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", flags.format, "Report format: table | jsonl");
  };
  auto add_bleu = [&](CLI::App* sub) {
    sub->add_option("--max-order", flags.max_order, "Maximum n-gram order");
    sub->add_flag("--case-insensitive", flags.case_insensitive,
                  "Lowercase before counting n-grams");
    sub->add_option("--smoothing", flags.smoothing, "none | add-one");
  };

  auto* normalize = app.add_subcommand("normalize", "Apply a normalization policy");
  normalize->add_option("input", flags.inputs, "Document file")->required()->expected(1);
  normalize->add_option("--policy", flags.policy, "stripped | punctuated | config");
  add_output(normalize);

  auto* segment = app.add_subcommand("segment", "Re-segment documents");
  segment->require_subcommand(1);
  auto* punct = segment->add_subcommand("punct", "Break after sentence-final marks");
  punct->add_option("input", flags.inputs, "Document file")->required()->expected(1);
  punct->add_option("--abbrev", flags.abbreviations,
                    "Abbreviation exceptions (replaces the default list)");
  add_output(punct);
  auto* pause = segment->add_subcommand("pause", "Split on speaker pauses");
  pause->add_option("input", flags.inputs, "Timed transcript (JSON Lines)")
      ->required()->expected(1);
  pause->add_option("--threshold", flags.threshold, "Pause threshold in seconds");
  pause->add_option("--max-tokens", flags.max_tokens, "Maximum segment length");
  add_output(pause);
  auto* fixed = segment->add_subcommand("fixed", "Fixed-length segments");
  fixed->add_option("input", flags.inputs, "Document file")->required()->expected(1);
  fixed->add_option("--n", flags.fixed_n, "Tokens per segment");
  add_output(fixed);

  auto* project = app.add_subcommand("project", "Project boundaries of SOURCE onto TARGET tokens");
  project->add_option("inputs", flags.inputs, "SOURCE TARGET")->required()->expected(2);
  add_output(project);

  auto* variants = app.add_subcommand("variants", "Build recognition/segmentation error variants");
  variants->add_option("inputs", flags.inputs, "GOLD SYSTEM")->required()->expected(2);
  variants->add_option("--out-dir", flags.out_dir,
                       "Write gold/system/recognition/segmentation.txt here");

  auto* augment = app.add_subcommand("augment", "Cross-boundary augmentation of a bitext");
  augment->add_option("input", flags.inputs, "Bitext file")->required()->expected(1);
  augment->add_option("--p-max", flags.p_max, "Maximum truncation fraction");
  add_seed(augment);
  add_output(augment);

  auto* mix = app.add_subcommand("mix", "Sample a training mixture from labeled corpora");
  mix->add_option("--corpus", flags.corpus_specs, "LABEL=bitext file")->required();
  mix->add_option("--augmented", flags.augmented_specs,
                  "LABEL=precomputed augmented bitext (default: augment on the fly)");
  mix->add_option("--weight", flags.weight_specs, "LABEL=sampling weight");
  mix->add_option("--augmented-fraction", flags.augmented_fraction,
                  "Share of augmented pairs per corpus");
  mix->add_option("--total", flags.total, "Number of pairs to draw");
  mix->add_option("--p-max", flags.p_max, "Maximum truncation fraction");
  add_seed(mix);
  add_output(mix);

  auto* score = app.add_subcommand("score", "Corpus BLEU");
  score->add_option("inputs", flags.inputs, "HYP REF")->required()->expected(2);
  score->add_flag("--resegment", flags.resegment,
                  "Project reference boundaries onto the hypothesis first");
  add_bleu(score);
  add_format(score);
  add_output(score);

  auto* wer = app.add_subcommand("wer", "Word error rate (case and punctuation ignored)");
  wer->add_option("inputs", flags.inputs, "REF HYP")->required()->expected(2);
  add_format(wer);
  add_output(wer);

  auto* simulate = app.add_subcommand("simulate", "Corrupt documents with synthetic ASR noise");
  simulate->add_option("input", flags.inputs, "Document file")->required()->expected(1);
  simulate->add_option("--sub", flags.sub_rate, "Substitution rate");
  simulate->add_option("--del", flags.del_rate, "Deletion rate");
  simulate->add_option("--ins", flags.ins_rate, "Insertion rate");
  simulate->add_option("--merge", flags.merge_rate, "Boundary merge rate");
  simulate->add_option("--split", flags.split_rate, "Boundary split rate");
  simulate->add_option("--vocab", flags.vocab_path,
                       "Vocabulary file (default: tokens of the input)");
  add_seed(simulate);
  add_output(simulate);

  auto* report = app.add_subcommand("report", "Sentence BLEU by reference length bucket");
  report->add_option("inputs", flags.inputs, "HYP REF")->required()->expected(2);
  report->add_option("--bounds", flags.bounds, "Buckets, e.g. 0:20,20:40,40:60");
  add_bleu(report);
  add_format(report);
  add_output(report);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << "run with --help for usage\n";
    return kExitUsage;
  }

  try {
    PipelineConfig cfg;
    std::string config_path = flags.config_path;
    if (config_path.empty()) {
      if (const char* env = std::getenv(kConfigEnvVar)) config_path = env;
    }
    if (!config_path.empty()) cfg = LoadConfigFile(config_path);

    Runner runner(std::move(cfg), flags, out, err);
    if (normalize->parsed()) runner.Normalize();
    else if (punct->parsed()) runner.SegmentPunct();
    else if (pause->parsed()) runner.SegmentPause();
    else if (fixed->parsed()) runner.SegmentFixed();
    else if (project->parsed()) runner.Project();
    else if (variants->parsed()) runner.Variants();
    else if (augment->parsed()) runner.Augment();
    else if (mix->parsed()) runner.Mix();
    else if (score->parsed()) runner.Score();
    else if (wer->parsed()) runner.WordErrorRate();
    else if (simulate->parsed()) runner.Simulate();
    else if (report->parsed()) runner.Report();
    return kExitOk;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitMalformedInput;
  } catch (const UndefinedRateError& e) {
    err << "error: " << e.what() << '\n';
    return kExitMalformedInput;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}

}  // namespace segrobust::cli
