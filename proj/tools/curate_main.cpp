// curate: streaming corpus-curation pipeline driver.
//
// Subcommands map one-to-one onto the library stages: signals, filter,
// dedup, dedup-listings, serialize, evalgen, mix, ckpt-avg, stats. Document
// subcommands stream from stdin/--input to stdout/--output; reports go to
// stderr or --report. All randomness derives from one global seed, hashed
// with the stage name, so stages rerun independently yet reproducibly.

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <thread>
#include <unordered_set>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "curate/assets.hpp"
#include "curate/checkpoint.hpp"
#include "curate/dedup.hpp"
#include "curate/document.hpp"
#include "curate/evalgen.hpp"
#include "curate/filter.hpp"
#include "curate/listing.hpp"
#include "curate/minhash.hpp"
#include "curate/mixture.hpp"
#include "curate/serialize.hpp"
#include "curate/signals.hpp"
#include "curate/text.hpp"
#include "curate/util.hpp"

namespace {

using curate::Document;
using curate::Listing;
using nlohmann::json;

constexpr std::size_t kChunkLines = 4096;

struct CliError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// I/O plumbing

struct IoStreams {
    std::unique_ptr<std::ifstream> in_file;
    std::unique_ptr<std::ofstream> out_file;
    std::istream* in = &std::cin;
    std::ostream* out = &std::cout;

    IoStreams(const std::string& input, const std::string& output) {
        if (!input.empty()) {
            in_file = std::make_unique<std::ifstream>(input);
            if (!*in_file) throw CliError("cannot open input: " + input);
            in = in_file.get();
        }
        if (!output.empty()) {
            out_file = std::make_unique<std::ofstream>(output, std::ios::trunc);
            if (!*out_file) throw CliError("cannot open output: " + output);
            out = out_file.get();
        }
    }
};

void emit_report(const json& report, const std::string& report_path) {
    if (report_path.empty()) {
        std::cerr << report.dump() << "\n";
    } else {
        std::ofstream out(report_path, std::ios::trunc);
        if (!out) throw CliError("cannot open report path: " + report_path);
        out << report.dump(2) << "\n";
    }
}

// Reads up to `limit` lines; returns false when the stream is exhausted and
// nothing was read.
bool read_chunk(std::istream& in, std::vector<std::string>& chunk, std::size_t limit) {
    chunk.clear();
    std::string line;
    while (chunk.size() < limit && std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty()) chunk.push_back(std::move(line));
    }
    return !chunk.empty();
}

// Runs fn(i) for i in [0, count) across `workers` threads.
void parallel_for(std::size_t workers, std::size_t count,
                  const std::function<void(std::size_t)>& fn) {
    if (workers <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> threads;
    std::size_t per = (count + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
        std::size_t lo = w * per;
        std::size_t hi = std::min(count, lo + per);
        if (lo >= hi) break;
        threads.emplace_back([&fn, lo, hi] {
            for (std::size_t i = lo; i < hi; ++i) fn(i);
        });
    }
    for (auto& t : threads) t.join();
}

// ---------------------------------------------------------------------------
// Configuration

struct PipelineConfig {
    std::uint64_t seed = 42;
    std::size_t workers = 1;
    std::string assets_dir = "assets";
    std::string rules_path;  // empty = built-in defaults
    std::string default_language = "en";
    curate::DedupConfig dedup;
    std::string strategy = "natural_language_tags";
    std::string field_order = "randomized";
    std::string token_field = "token_count";
    std::vector<std::string> stage_order = {"filter", "dedup"};

    static PipelineConfig load(const std::string& path) {
        PipelineConfig cfg;
        if (path.empty()) return cfg;
        std::ifstream in(path);
        if (!in) throw CliError("cannot open config: " + path);
        json j = json::parse(in, nullptr, false);
        if (j.is_discarded()) throw CliError("malformed config: " + path);
        cfg.seed = j.value("seed", cfg.seed);
        cfg.workers = j.value("workers", cfg.workers);
        cfg.assets_dir = j.value("assets_dir", cfg.assets_dir);
        cfg.rules_path = j.value("rules", cfg.rules_path);
        cfg.default_language = j.value("default_language", cfg.default_language);
        if (j.contains("dedup")) {
            const json& d = j["dedup"];
            cfg.dedup.shingle_size = d.value("shingle_size", cfg.dedup.shingle_size);
            cfg.dedup.permutations = d.value("permutations", cfg.dedup.permutations);
            cfg.dedup.bands = d.value("bands", cfg.dedup.bands);
            cfg.dedup.rows = d.value("rows", cfg.dedup.rows);
            cfg.dedup.jaccard_threshold =
                d.value("jaccard_threshold", cfg.dedup.jaccard_threshold);
        }
        if (j.contains("serialize")) {
            cfg.strategy = j["serialize"].value("strategy", cfg.strategy);
            cfg.field_order = j["serialize"].value("field_order", cfg.field_order);
        }
        cfg.token_field = j.value("token_field", cfg.token_field);
        if (j.contains("stage_order")) {
            cfg.stage_order = j["stage_order"].get<std::vector<std::string>>();
        }
        return cfg;
    }

    json effective(const std::string& stage) const {
        json j;
        j["seed"] = seed;
        j["workers"] = workers;
        j["assets_dir"] = assets_dir;
        j["rules"] = rules_path.empty() ? json() : json(rules_path);
        j["default_language"] = default_language;
        j["dedup"] = {{"shingle_size", dedup.shingle_size},
                      {"permutations", dedup.permutations},
                      {"bands", dedup.bands},
                      {"rows", dedup.rows},
                      {"jaccard_threshold", dedup.jaccard_threshold}};
        j["serialize"] = {{"strategy", strategy}, {"field_order", field_order}};
        j["token_field"] = token_field;
        j["stage_order"] = stage_order;
        j["stage"] = stage;
        return j;
    }
};

curate::SignalAssets load_assets(const PipelineConfig& cfg) {
    curate::SignalAssets assets = curate::SignalAssets::load(cfg.assets_dir);
    assets.default_language = cfg.default_language;
    return assets;
}

curate::FilterRuleSet load_rules(const PipelineConfig& cfg) {
    if (cfg.rules_path.empty()) return curate::FilterRuleSet::defaults();
    return curate::FilterRuleSet::load_file(cfg.rules_path);
}

curate::SerializationStrategy make_strategy(const PipelineConfig& cfg) {
    curate::SerializationStrategy strategy;
    strategy.variant = curate::SerializationStrategy::tag_style_from_name(cfg.strategy);
    if (cfg.field_order == "fixed") {
        strategy.field_order = curate::FieldOrder::kFixed;
    } else if (cfg.field_order == "randomized") {
        strategy.field_order = curate::FieldOrder::kRandomized;
    } else {
        throw CliError("unknown field order '" + cfg.field_order + "'");
    }
    strategy.rng_seed = curate::derive_seed(cfg.seed, "serialize");
    return strategy;
}

// ---------------------------------------------------------------------------
// signals

int cmd_signals(const PipelineConfig& cfg, const std::string& input,
                const std::string& output, const std::string& report_path) {
    IoStreams io(input, output);
    curate::SignalAssets assets = load_assets(cfg);

    std::uint64_t total = 0, errors = 0;
    std::vector<std::string> chunk;
    while (read_chunk(*io.in, chunk, kChunkLines)) {
        std::vector<std::string> results(chunk.size());
        std::vector<char> failed(chunk.size(), 0);
        parallel_for(cfg.workers, chunk.size(), [&](std::size_t i) {
            try {
                Document doc = curate::parse_document(chunk[i]);
                results[i] = curate::compute_signals(doc, assets).to_json(doc.id).dump();
            } catch (const std::exception& e) {
                results[i] = json{{"error", e.what()}}.dump();
                failed[i] = 1;
            }
        });
        for (std::size_t i = 0; i < results.size(); ++i) {
            ++total;
            if (failed[i]) ++errors;
            *io.out << results[i] << "\n";
        }
    }

    json report;
    report["type"] = "signals_report";
    report["total"] = total;
    report["errors"] = errors;
    report["config"] = cfg.effective("signals");
    emit_report(report, report_path);
    return 0;
}

// ---------------------------------------------------------------------------
// filter

int cmd_filter(const PipelineConfig& cfg, const std::string& input, const std::string& output,
               const std::string& report_path, const std::string& verdicts_path) {
    IoStreams io(input, output);
    curate::SignalAssets assets = load_assets(cfg);
    curate::FilterRuleSet rules = load_rules(cfg);

    std::unique_ptr<std::ofstream> verdicts_out;
    if (!verdicts_path.empty()) {
        verdicts_out = std::make_unique<std::ofstream>(verdicts_path, std::ios::trunc);
        if (!*verdicts_out) throw CliError("cannot open verdicts path: " + verdicts_path);
    }

    curate::FilterReport report;
    std::vector<std::string> chunk;
    while (read_chunk(*io.in, chunk, kChunkLines)) {
        std::vector<curate::FilterVerdict> verdicts(chunk.size());
        parallel_for(cfg.workers, chunk.size(), [&](std::size_t i) {
            try {
                Document doc = curate::parse_document(chunk[i]);
                curate::QualitySignals signals = curate::compute_signals(doc, assets);
                verdicts[i] = curate::apply_filters(doc.id, signals, rules);
            } catch (const std::exception& e) {
                verdicts[i].kept = false;
                verdicts[i].failed_rules.push_back({"error", e.what(), ""});
            }
        });
        for (std::size_t i = 0; i < verdicts.size(); ++i) {
            ++report.total;
            if (verdicts[i].kept) {
                ++report.kept;
                *io.out << chunk[i] << "\n";
            } else {
                for (const auto& failed : verdicts[i].failed_rules) {
                    ++report.rule_rejections[failed.rule];
                    if (failed.rule == "error") ++report.errors;
                }
            }
            if (verdicts_out) {
                json v;
                v["id"] = verdicts[i].doc_id;
                v["kept"] = verdicts[i].kept;
                json failed_rules = json::array();
                for (const auto& f : verdicts[i].failed_rules) {
                    failed_rules.push_back(
                        {{"rule", f.rule}, {"value", f.value}, {"bound", f.bound}});
                }
                v["failed_rules"] = std::move(failed_rules);
                *verdicts_out << v.dump() << "\n";
            }
        }
    }

    std::cerr << report.to_table(rules);
    json j = report.to_json();
    j["config"] = cfg.effective("filter");
    emit_report(j, report_path);
    return 0;
}

// ---------------------------------------------------------------------------
// dedup

int cmd_dedup(const PipelineConfig& cfg, const std::string& input, const std::string& output,
              const std::string& report_path, const std::string& clusters_path,
              const std::string& signatures_path, bool reuse_signatures) {
    IoStreams io(input, output);

    // The near-dedup index is whole-corpus by design; this is the one stage
    // whose memory grows with input size.
    std::vector<std::string> lines;
    std::vector<Document> docs;
    std::string line;
    while (std::getline(*io.in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        docs.push_back(curate::parse_document(line));
        lines.push_back(std::move(line));
    }

    curate::DedupConfig dedup_cfg = cfg.dedup;
    dedup_cfg.seed = curate::derive_seed(cfg.seed, "dedup");

    std::optional<std::vector<curate::MinHashSignature>> precomputed;
    if (reuse_signatures && !signatures_path.empty()) {
        std::ifstream probe(signatures_path);
        if (probe.good()) {
            precomputed = curate::read_signatures(signatures_path, dedup_cfg.permutations);
        }
    }

    curate::NearDedupResult result = curate::near_dedup_with_signatures(
        docs, dedup_cfg, precomputed ? &*precomputed : nullptr);

    if (!signatures_path.empty() && !precomputed) {
        curate::write_signatures(signatures_path, result.signatures);
    }
    if (!clusters_path.empty()) {
        std::ofstream cl_out(clusters_path, std::ios::trunc);
        if (!cl_out) throw CliError("cannot open clusters path: " + clusters_path);
        for (const auto& cluster : result.clusters.to_json()) cl_out << cluster.dump() << "\n";
    }

    std::unordered_set<std::string> removed;
    for (const auto& cluster : result.clusters.clusters) {
        for (const auto& member : cluster.members) {
            if (member != cluster.survivor) removed.insert(member);
        }
    }
    for (std::size_t i = 0; i < docs.size(); ++i) {
        if (!removed.count(docs[i].id)) *io.out << lines[i] << "\n";
    }

    json report;
    report["type"] = "dedup_report";
    report["total"] = docs.size();
    report["kept"] = docs.size() - removed.size();
    report["removed"] = removed.size();
    report["clusters"] = result.clusters.clusters.size();
    report["undedupable"] = result.undedupable;
    report["config"] = cfg.effective("dedup");
    emit_report(report, report_path);
    return 0;
}

int cmd_dedup_listings(const PipelineConfig& cfg, const std::string& input,
                       const std::string& output, const std::string& report_path) {
    IoStreams io(input, output);
    std::unordered_set<std::string> seen;
    std::uint64_t total = 0, removed = 0;
    std::string line;
    while (std::getline(*io.in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        ++total;
        Listing listing = curate::parse_listing(line);
        std::string key = curate::normalize(listing.title);
        key.push_back('\x1f');
        key += curate::normalize(listing.description);
        if (seen.insert(std::move(key)).second) {
            *io.out << line << "\n";
        } else {
            ++removed;
        }
    }
    json report;
    report["type"] = "dedup_listings_report";
    report["total"] = total;
    report["kept"] = total - removed;
    report["removed"] = removed;
    report["config"] = cfg.effective("dedup-listings");
    emit_report(report, report_path);
    return 0;
}

// ---------------------------------------------------------------------------
// serialize

int cmd_serialize(const PipelineConfig& cfg, const std::string& mode, const std::string& input,
                  const std::string& output, const std::string& report_path) {
    IoStreams io(input, output);
    std::uint64_t total = 0, errors = 0;

    if (mode == "listings") {
        curate::SerializationStrategy strategy = make_strategy(cfg);
        std::vector<std::string> chunk;
        while (read_chunk(*io.in, chunk, kChunkLines)) {
            std::vector<std::string> results(chunk.size());
            std::vector<char> failed(chunk.size(), 0);
            parallel_for(cfg.workers, chunk.size(), [&](std::size_t i) {
                try {
                    Listing listing = curate::parse_listing(chunk[i]);
                    json j;
                    j["id"] = listing.id;
                    j["text"] = curate::serialize_listing(listing, strategy);
                    results[i] = j.dump();
                } catch (const std::exception& e) {
                    results[i] = json{{"error", e.what()}}.dump();
                    failed[i] = 1;
                }
            });
            for (std::size_t i = 0; i < results.size(); ++i) {
                ++total;
                if (failed[i]) ++errors;
                *io.out << results[i] << "\n";
            }
        }
    } else if (mode == "pairs") {
        std::string line;
        while (std::getline(*io.in, line)) {
            if (line.empty()) continue;
            ++total;
            try {
                curate::TranslationPair pair = curate::parse_translation_pair(line);
                json j;
                j["text"] = curate::serialize_translation_pair(pair);
                j["source_lang"] = pair.source_lang;
                j["target_lang"] = pair.target_lang;
                *io.out << j.dump() << "\n";
            } catch (const std::exception& e) {
                ++errors;
                *io.out << json{{"error", e.what()}}.dump() << "\n";
            }
        }
    } else {
        throw CliError("serialize mode must be 'listings' or 'pairs'");
    }

    json report;
    report["type"] = "serialize_report";
    report["mode"] = mode;
    report["total"] = total;
    report["errors"] = errors;
    report["config"] = cfg.effective("serialize");
    emit_report(report, report_path);
    return 0;
}

// ---------------------------------------------------------------------------
// evalgen

int cmd_evalgen(const PipelineConfig& cfg, const std::string& task, int n_corrupt,
                const std::string& input, const std::string& output,
                const std::string& report_path) {
    IoStreams io(input, output);
    std::vector<Listing> listings;
    std::string line;
    while (std::getline(*io.in, line)) {
        if (line.empty()) continue;
        listings.push_back(curate::parse_listing(line));
    }

    std::uint64_t emitted = 0, skipped = 0;
    json skip_reasons = json::array();
    auto record_skip = [&](const curate::SkipReason& reason) {
        ++skipped;
        if (skip_reasons.size() < 100) {
            skip_reasons.push_back(
                {{"listing_id", reason.listing_id}, {"reason", reason.reason}});
        }
    };

    if (task == "is") {
        std::uint64_t seed = curate::derive_seed(cfg.seed, "evalgen-is");
        // Donors come from the same category; those listings share aspect
        // vocabulary, which keeps corrupted copies plausible.
        std::map<std::string, std::vector<std::size_t>> by_category;
        for (std::size_t i = 0; i < listings.size(); ++i) {
            by_category[listings[i].category].push_back(i);
        }
        for (const auto& [category, peers] : by_category) {
            for (std::size_t p = 0; p < peers.size(); ++p) {
                std::vector<Listing> donors;
                for (std::size_t offset = 1; offset < peers.size() && donors.size() < 16;
                     ++offset) {
                    donors.push_back(listings[peers[(p + offset) % peers.size()]]);
                }
                auto outcome = curate::build_item_selection(listings[peers[p]], donors,
                                                            n_corrupt, seed);
                if (outcome.instance) {
                    ++emitted;
                    *io.out << outcome.instance->to_json().dump() << "\n";
                } else if (outcome.skipped) {
                    record_skip(*outcome.skipped);
                }
            }
        }
    } else if (task == "ap") {
        for (const auto& listing : listings) {
            for (std::size_t a = 0; a < listing.aspects.size(); ++a) {
                auto outcome = curate::build_aspect_prediction(listing, a);
                if (outcome.instance) {
                    ++emitted;
                    *io.out << outcome.instance->to_json().dump() << "\n";
                } else if (outcome.skipped) {
                    record_skip(*outcome.skipped);
                }
            }
        }
    } else {
        throw CliError("evalgen task must be 'is' or 'ap'");
    }

    json report;
    report["type"] = "evalgen_report";
    report["task"] = task;
    report["listings"] = listings.size();
    report["instances"] = emitted;
    report["skipped"] = skipped;
    report["skip_reasons"] = std::move(skip_reasons);
    report["config"] = cfg.effective("evalgen");
    emit_report(report, report_path);
    return 0;
}

// ---------------------------------------------------------------------------
// mix

struct FileStream {
    std::string path;
    std::string token_field;
    std::unique_ptr<std::ifstream> in;

    std::optional<std::uint64_t> next_tokens(std::string* raw_line) {
        std::string line;
        while (std::getline(*in, line)) {
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line.empty()) continue;
            json j = json::parse(line, nullptr, false);
            if (j.is_discarded() || !j.contains(token_field) ||
                !j[token_field].is_number_unsigned()) {
                throw CliError("record in " + path + " lacks unsigned '" + token_field + "'");
            }
            *raw_line = std::move(line);
            return j[token_field].get<std::uint64_t>();
        }
        return std::nullopt;
    }
};

int cmd_mix(const PipelineConfig& cfg, const std::string& mixture_path,
            const std::string& output, const std::string& report_path, bool validate,
            bool plan_only) {
    std::ifstream in(mixture_path);
    if (!in) throw CliError("cannot open mixture config: " + mixture_path);
    json j = json::parse(in, nullptr, false);
    if (j.is_discarded()) throw CliError("malformed mixture config: " + mixture_path);

    auto descriptors = curate::DatasetDescriptor::from_json(j);
    if (!j.contains("total_budget")) throw CliError("mixture config missing total_budget");
    std::uint64_t budget = j["total_budget"].get<std::uint64_t>();

    curate::MixturePlan plan = curate::resolve_ratios(descriptors, budget);
    plan.interleave_seed = curate::derive_seed(cfg.seed, "mix");
    std::cerr << plan.to_table();

    json report;
    report["type"] = "mix_report";
    report["plan"] = plan.to_json();
    report["config"] = cfg.effective("mix");

    int exit_code = 0;
    if (validate) {
        std::vector<std::pair<std::string, double>> expected;
        if (j.contains("expected_ratios")) {
            for (auto it = j["expected_ratios"].begin(); it != j["expected_ratios"].end();
                 ++it) {
                expected.emplace_back(it.key(), it.value().get<double>() / 100.0);
            }
        }
        curate::RatioValidation validation = curate::validate_expected_ratios(plan, expected);
        std::cerr << validation.to_table();
        report["validation"] = validation.to_json();
        if (!validation.all_ok) exit_code = 1;
    }

    if (!plan_only) {
        std::map<std::string, std::string> paths;
        for (const auto& item : j["datasets"]) {
            if (item.contains("path")) {
                paths[item["name"].get<std::string>()] = item["path"].get<std::string>();
            }
        }
        // Each stream holds only the line it just produced; the interleaver's
        // sink is called for exactly that document, so the stage streams.
        std::vector<std::unique_ptr<FileStream>> file_streams;
        std::vector<curate::DatasetStream> streams;
        std::map<std::string, std::string> last_line;
        for (const auto& entry : plan.entries) {
            auto it = paths.find(entry.name);
            if (it == paths.end()) {
                throw CliError("mixture dataset '" + entry.name + "' has no 'path'");
            }
            auto fstream = std::make_unique<FileStream>();
            fstream->path = it->second;
            fstream->token_field = cfg.token_field;
            fstream->in = std::make_unique<std::ifstream>(it->second);
            if (!*fstream->in) throw CliError("cannot open dataset file: " + it->second);
            FileStream* raw = fstream.get();
            std::string* slot = &last_line[entry.name];
            curate::DatasetStream stream;
            stream.name = entry.name;
            stream.next = [raw, slot]() { return raw->next_tokens(slot); };
            stream.rewind = [raw]() {
                raw->in = std::make_unique<std::ifstream>(raw->path);
                if (!*raw->in) throw CliError("cannot reopen dataset file: " + raw->path);
            };
            streams.push_back(std::move(stream));
            file_streams.push_back(std::move(fstream));
        }

        IoStreams io("", output);
        std::map<std::string, std::uint64_t> emitted_tokens;
        std::uint64_t emitted_docs = 0;
        curate::interleave_stream(plan, streams, [&](const curate::InterleaveItem& item) {
            *io.out << last_line[item.dataset] << "\n";
            emitted_tokens[item.dataset] += item.tokens;
            ++emitted_docs;
        });
        json emitted = json::object();
        for (const auto& [name, tokens] : emitted_tokens) emitted[name] = tokens;
        report["emitted_tokens"] = std::move(emitted);
        report["emitted_documents"] = emitted_docs;
    }

    emit_report(report, report_path);
    return exit_code;
}

// ---------------------------------------------------------------------------
// ckpt-avg

int cmd_ckpt_avg(const std::string& input_dir, const std::string& output,
                 std::optional<std::uint64_t> last_n, std::optional<std::uint64_t> last_iters,
                 const std::string& report_path) {
    if (last_n && last_iters) throw CliError("use either --last-n or --last-iters, not both");

    curate::CheckpointSeries series = curate::CheckpointSeries::from_directory(input_dir);
    if (series.refs.empty()) throw CliError("no checkpoints found in " + input_dir);

    curate::WindowPolicy policy;
    if (last_iters) {
        policy.kind = curate::WindowPolicy::Kind::kLastIterations;
        policy.value = *last_iters;
    } else {
        policy.kind = curate::WindowPolicy::Kind::kLastN;
        policy.value = last_n.value_or(20);
    }
    std::size_t window = curate::select_window(series, policy);
    curate::TensorCheckpoint averaged = curate::average(series, window);
    curate::write_checkpoint(output, averaged);

    json report;
    report["type"] = "ckpt_avg_report";
    report["checkpoints_found"] = series.refs.size();
    report["window"] = window;
    report["first_iteration"] = series.refs[series.refs.size() - window].iteration;
    report["last_iteration"] = series.refs.back().iteration;
    report["output"] = output;
    emit_report(report, report_path);
    return 0;
}

// ---------------------------------------------------------------------------
// stats

void render_json_table(const json& j, std::ostream& out) {
    out << j.value("type", std::string("report")) << "\n";
    std::function<void(const json&, const std::string&, int)> walk =
        [&](const json& node, const std::string& key, int depth) {
            std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
            if (node.is_object()) {
                if (!key.empty()) out << pad << key << "\n";
                for (auto it = node.begin(); it != node.end(); ++it) {
                    if (depth == 0 && (it.key() == "type" || it.key() == "config")) continue;
                    walk(it.value(), it.key(), depth + 1);
                }
            } else if (node.is_array()) {
                if (!key.empty()) out << pad << key << " (" << node.size() << ")\n";
                for (const auto& item : node) walk(item, "-", depth + 1);
            } else {
                out << pad;
                if (!key.empty()) out << key << ": ";
                out << (node.is_string() ? node.get<std::string>() : node.dump()) << "\n";
            }
        };
    walk(j, "", 0);
}

int cmd_stats(const std::vector<std::string>& report_files) {
    for (const auto& path : report_files) {
        std::ifstream in(path);
        if (!in) throw CliError("cannot open report: " + path);
        json j = json::parse(in, nullptr, false);
        if (j.is_discarded()) throw CliError("malformed report: " + path);
        render_json_table(j, std::cout);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"corpus curation pipeline"};
    app.require_subcommand(1);

    std::string config_path, input, output, report_path;
    std::optional<std::uint64_t> seed_flag;
    std::optional<std::size_t> workers_flag;
    std::string assets_flag, rules_flag;
    app.add_option("--config", config_path, "pipeline config file (JSON)");
    app.add_option("--seed", seed_flag, "global random seed");
    app.add_option("--workers", workers_flag, "worker threads for per-document stages");
    app.add_option("--assets-dir", assets_flag, "signal asset directory");
    app.add_option("--rules", rules_flag, "filter rule config (overrides defaults)");

    auto add_io = [&](CLI::App* cmd) {
        cmd->add_option("--input", input, "input path (default stdin)");
        cmd->add_option("--output", output, "output path (default stdout)");
        cmd->add_option("--report", report_path, "report path (default stderr)");
    };

    auto* signals_cmd = app.add_subcommand("signals", "compute quality-signal records");
    add_io(signals_cmd);

    auto* filter_cmd = app.add_subcommand("filter", "keep documents passing the rule table");
    std::string verdicts_path;
    add_io(filter_cmd);
    filter_cmd->add_option("--verdicts", verdicts_path, "write per-document verdicts (JSONL)");

    auto* dedup_cmd = app.add_subcommand("dedup", "near-duplicate removal (MinHash/LSH)");
    std::string clusters_path, signatures_path;
    bool reuse_signatures = false;
    add_io(dedup_cmd);
    dedup_cmd->add_option("--clusters", clusters_path, "write duplicate clusters (JSONL)");
    dedup_cmd->add_option("--signatures", signatures_path, "signature sidecar file");
    dedup_cmd->add_flag("--reuse-signatures", reuse_signatures,
                        "load signatures from the sidecar instead of recomputing");

    auto* dedup_listings_cmd =
        app.add_subcommand("dedup-listings", "fuzzy exact dedup of listings");
    add_io(dedup_listings_cmd);

    auto* serialize_cmd = app.add_subcommand("serialize", "flatten records into training text");
    std::string mode = "listings", strategy_flag, field_order_flag;
    add_io(serialize_cmd);
    serialize_cmd->add_option("--mode", mode, "'listings' or 'pairs'");
    serialize_cmd->add_option("--strategy", strategy_flag,
                              "special_tags | natural_language_tags | no_tags");
    serialize_cmd->add_option("--field-order", field_order_flag, "fixed | randomized");

    auto* evalgen_cmd = app.add_subcommand("evalgen", "build e-commerce eval instances");
    std::string task = "is";
    int n_corrupt = 1;
    add_io(evalgen_cmd);
    evalgen_cmd->add_option("--task", task, "'is' (item selection) or 'ap' (aspect prediction)");
    evalgen_cmd->add_option("--n-corrupt-aspects", n_corrupt,
                            "aspect values replaced per corrupted candidate");

    auto* mix_cmd = app.add_subcommand("mix", "plan and interleave the data mixture");
    std::string mixture_path;
    bool validate_ratios = false, plan_only = false;
    mix_cmd->add_option("--mixture", mixture_path, "mixture config (JSON)")->required();
    mix_cmd->add_option("--output", output, "output path (default stdout)");
    mix_cmd->add_option("--report", report_path, "report path (default stderr)");
    mix_cmd->add_flag("--validate-ratios", validate_ratios,
                      "check resolved ratios against expected_ratios");
    mix_cmd->add_flag("--plan-only", plan_only, "resolve and print the plan, do not emit docs");

    auto* ckpt_cmd = app.add_subcommand("ckpt-avg", "average a trailing checkpoint window");
    std::string ckpt_dir;
    std::optional<std::uint64_t> last_n, last_iters;
    ckpt_cmd->add_option("--input", ckpt_dir, "checkpoint directory")->required();
    ckpt_cmd->add_option("--output", output, "averaged checkpoint path")->required();
    ckpt_cmd->add_option("--last-n", last_n, "average the last N checkpoints (default 20)");
    ckpt_cmd->add_option("--last-iters", last_iters,
                         "average checkpoints from the last K iterations");
    ckpt_cmd->add_option("--report", report_path, "report path (default stderr)");

    auto* stats_cmd = app.add_subcommand("stats", "render report files as text tables");
    std::vector<std::string> report_files;
    stats_cmd->add_option("files", report_files, "report JSON files")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        PipelineConfig cfg = PipelineConfig::load(config_path);
        if (seed_flag) cfg.seed = *seed_flag;
        if (workers_flag) cfg.workers = *workers_flag;
        if (!assets_flag.empty()) cfg.assets_dir = assets_flag;
        if (!rules_flag.empty()) cfg.rules_path = rules_flag;

        if (signals_cmd->parsed()) return cmd_signals(cfg, input, output, report_path);
        if (filter_cmd->parsed())
            return cmd_filter(cfg, input, output, report_path, verdicts_path);
        if (dedup_cmd->parsed())
            return cmd_dedup(cfg, input, output, report_path, clusters_path, signatures_path,
                             reuse_signatures);
        if (dedup_listings_cmd->parsed())
            return cmd_dedup_listings(cfg, input, output, report_path);
        if (serialize_cmd->parsed()) {
            if (!strategy_flag.empty()) cfg.strategy = strategy_flag;
            if (!field_order_flag.empty()) cfg.field_order = field_order_flag;
            return cmd_serialize(cfg, mode, input, output, report_path);
        }
        if (evalgen_cmd->parsed())
            return cmd_evalgen(cfg, task, n_corrupt, input, output, report_path);
        if (mix_cmd->parsed())
            return cmd_mix(cfg, mixture_path, output, report_path, validate_ratios, plan_only);
        if (ckpt_cmd->parsed())
            return cmd_ckpt_avg(ckpt_dir, output, last_n, last_iters, report_path);
        if (stats_cmd->parsed()) return cmd_stats(report_files);
    } catch (const std::exception& e) {
        std::cerr << json{{"error", {{"message", e.what()}}}}.dump() << "\n";
        return 1;
    }
    return 0;
}
