// Threshold filtering over quality-signal vectors: rule table, per-document
// verdicts with full provenance, and mergeable aggregate reports.

#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "curate/signals.hpp"

namespace curate {

class FilterConfigError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

enum class Comparison {
    kGreaterThan,
    kLessThan,
    kEqual,
    kInRange,         // strict on both ends
    kNotBlacklisted,  // boolean signal must be false
};

struct FilterRule {
    std::string signal;
    Comparison comparison = Comparison::kGreaterThan;
    double bound = 0.0;       // gt / lt / eq, and lower end of in-range
    double upper_bound = 0.0; // upper end of in-range
    bool enabled = true;

    // Human-readable bound, e.g. "> 0.65" or "in (3, 10)".
    std::string describe_bound() const;
    // True when `value` satisfies the rule.
    bool passes(double value) const;
};

struct FilterRuleSet {
    std::vector<FilterRule> rules;

    // The built-in default table.
    static FilterRuleSet defaults();

    // Human-editable config form (JSON, one entry per rule). Round-trips
    // losslessly. Throws FilterConfigError on unknown signals or malformed
    // comparisons; validation happens here, never at evaluation time.
    static FilterRuleSet from_json(const nlohmann::json& j);
    static FilterRuleSet load_file(const std::string& path);
    nlohmann::json to_json() const;
};

struct FailedRule {
    std::string rule;
    std::string value;  // observed signal value, or "absent"
    std::string bound;
};

struct FilterVerdict {
    std::string doc_id;
    bool kept = true;
    std::vector<FailedRule> failed_rules;
};

struct FilterReport {
    std::uint64_t total = 0;
    std::uint64_t kept = 0;
    std::uint64_t errors = 0;
    // rule name -> documents failing it (a document counts once per rule it
    // fails; rule "error" covers per-document processing failures).
    std::map<std::string, std::uint64_t> rule_rejections;

    void merge(const FilterReport& other);
    nlohmann::json to_json() const;
    // Aligned plain-text table.
    std::string to_table(const FilterRuleSet& rules) const;
};

// Evaluates every enabled rule; no short-circuit, so failed_rules is the
// complete list.
FilterVerdict apply_filters(const std::string& doc_id, const QualitySignals& signals,
                            const FilterRuleSet& rules);

// Streaming filter over documents. Kept documents are passed to `sink` in
// input order. Per-document signal errors reject the document under rule
// "error".
FilterReport filter_stream(const std::vector<Document>& docs, const FilterRuleSet& rules,
                           const SignalAssets& assets,
                           const std::function<void(const Document&)>& sink,
                           std::vector<FilterVerdict>* verdicts = nullptr);

}  // namespace curate
