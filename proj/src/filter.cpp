#include "curate/filter.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace curate {

namespace {

std::string format_number(double v) {
    if (v == std::floor(v) && std::abs(v) < 1e15) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.0f", v);
        return buf;
    }
    std::ostringstream ss;
    ss.precision(12);
    ss << v;
    return ss.str();
}

std::string comparison_name(Comparison c) {
    switch (c) {
        case Comparison::kGreaterThan: return "gt";
        case Comparison::kLessThan: return "lt";
        case Comparison::kEqual: return "eq";
        case Comparison::kInRange: return "in_range";
        case Comparison::kNotBlacklisted: return "not_blacklisted";
    }
    return "?";
}

Comparison comparison_from_name(const std::string& name) {
    if (name == "gt") return Comparison::kGreaterThan;
    if (name == "lt") return Comparison::kLessThan;
    if (name == "eq") return Comparison::kEqual;
    if (name == "in_range") return Comparison::kInRange;
    if (name == "not_blacklisted") return Comparison::kNotBlacklisted;
    throw FilterConfigError("unknown comparison '" + name + "'");
}

}  // namespace

std::string FilterRule::describe_bound() const {
    switch (comparison) {
        case Comparison::kGreaterThan: return "> " + format_number(bound);
        case Comparison::kLessThan: return "< " + format_number(bound);
        case Comparison::kEqual: return "== " + format_number(bound);
        case Comparison::kInRange:
            return "in (" + format_number(bound) + ", " + format_number(upper_bound) + ")";
        case Comparison::kNotBlacklisted: return "not blacklisted";
    }
    return "?";
}

bool FilterRule::passes(double value) const {
    switch (comparison) {
        case Comparison::kGreaterThan: return value > bound;
        case Comparison::kLessThan: return value < bound;
        case Comparison::kEqual: return value == bound;
        case Comparison::kInRange: return value > bound && value < upper_bound;
        case Comparison::kNotBlacklisted: return value == 0.0;
    }
    return false;
}

FilterRuleSet FilterRuleSet::defaults() {
    FilterRuleSet set;
    auto gt = [&](const std::string& s, double b) {
        set.rules.push_back({s, Comparison::kGreaterThan, b, 0.0, true});
    };
    auto lt = [&](const std::string& s, double b) {
        set.rules.push_back({s, Comparison::kLessThan, b, 0.0, true});
    };
    gt("ccnet_language_score", 0.65);
    gt("ccnet_length", 200);
    lt("rps_doc_frac_lines_end_with_ellipsis", 0.3);
    lt("rps_doc_frac_no_alph_words", 0.2);
    set.rules.push_back({"rps_doc_lorem_ipsum", Comparison::kEqual, 0.0, 0.0, true});
    set.rules.push_back({"rps_doc_mean_word_length", Comparison::kInRange, 3, 10, true});
    gt("rps_doc_stop_word_fraction", 0.0);
    lt("rps_doc_symbol_to_word_ratio", 0.1);
    set.rules.push_back({"rps_doc_word_count", Comparison::kInRange, 50, 100000, true});
    lt("rps_lines_start_with_bulletpoint", 0.9);
    const double dupe_bounds[] = {0.15, 0.14, 0.13, 0.12, 0.11, 0.10};
    for (int n = 5; n <= 10; ++n) {
        lt("rps_doc_frac_chars_dupe_" + std::to_string(n) + "grams", dupe_bounds[n - 5]);
    }
    const double top_bounds[] = {0.20, 0.18, 0.16};
    for (int n = 2; n <= 4; ++n) {
        lt("rps_doc_frac_chars_top_" + std::to_string(n) + "gram", top_bounds[n - 2]);
    }
    lt("rps_doc_ldnoobw_words", 5);
    set.rules.push_back({"rps_doc_ut1_blacklist", Comparison::kNotBlacklisted, 0.0, 0.0, true});
    return set;
}

FilterRuleSet FilterRuleSet::from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("rules") || !j["rules"].is_array()) {
        throw FilterConfigError("rule config must be an object with a 'rules' array");
    }
    FilterRuleSet set;
    for (const auto& item : j["rules"]) {
        FilterRule rule;
        if (!item.contains("signal") || !item["signal"].is_string()) {
            throw FilterConfigError("rule entry missing 'signal'");
        }
        rule.signal = item["signal"].get<std::string>();
        if (!is_known_signal(rule.signal)) {
            throw FilterConfigError("rule references unknown signal '" + rule.signal + "'");
        }
        rule.comparison = comparison_from_name(item.value("comparison", std::string("gt")));
        if (rule.comparison == Comparison::kInRange) {
            if (!item.contains("min") || !item.contains("max")) {
                throw FilterConfigError("in_range rule for '" + rule.signal +
                                        "' needs 'min' and 'max'");
            }
            rule.bound = item["min"].get<double>();
            rule.upper_bound = item["max"].get<double>();
        } else if (rule.comparison != Comparison::kNotBlacklisted) {
            if (!item.contains("bound")) {
                throw FilterConfigError("rule for '" + rule.signal + "' needs 'bound'");
            }
            rule.bound = item["bound"].get<double>();
        }
        rule.enabled = item.value("enabled", true);
        set.rules.push_back(std::move(rule));
    }
    return set;
}

FilterRuleSet FilterRuleSet::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FilterConfigError("cannot open rule config: " + path);
    nlohmann::json j = nlohmann::json::parse(in, nullptr, false);
    if (j.is_discarded()) throw FilterConfigError("malformed rule config: " + path);
    return from_json(j);
}

nlohmann::json FilterRuleSet::to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& rule : rules) {
        nlohmann::json item;
        item["signal"] = rule.signal;
        item["comparison"] = comparison_name(rule.comparison);
        if (rule.comparison == Comparison::kInRange) {
            item["min"] = rule.bound;
            item["max"] = rule.upper_bound;
        } else if (rule.comparison != Comparison::kNotBlacklisted) {
            item["bound"] = rule.bound;
        }
        item["enabled"] = rule.enabled;
        arr.push_back(std::move(item));
    }
    return nlohmann::json{{"rules", std::move(arr)}};
}

FilterVerdict apply_filters(const std::string& doc_id, const QualitySignals& signals,
                            const FilterRuleSet& rules) {
    FilterVerdict verdict;
    verdict.doc_id = doc_id;
    for (const auto& rule : rules.rules) {
        if (!rule.enabled) continue;
        std::optional<double> value = signals.value_of(rule.signal);
        if (!value) {
            verdict.failed_rules.push_back({rule.signal, "absent", rule.describe_bound()});
            continue;
        }
        if (!rule.passes(*value)) {
            verdict.failed_rules.push_back(
                {rule.signal, format_number(*value), rule.describe_bound()});
        }
    }
    verdict.kept = verdict.failed_rules.empty();
    return verdict;
}

void FilterReport::merge(const FilterReport& other) {
    total += other.total;
    kept += other.kept;
    errors += other.errors;
    for (const auto& [rule, count] : other.rule_rejections) {
        rule_rejections[rule] += count;
    }
}

nlohmann::json FilterReport::to_json() const {
    nlohmann::json j;
    j["type"] = "filter_report";
    j["total"] = total;
    j["kept"] = kept;
    j["rejected"] = total - kept;
    j["errors"] = errors;
    nlohmann::json rj = nlohmann::json::object();
    for (const auto& [rule, count] : rule_rejections) rj[rule] = count;
    j["rule_rejections"] = std::move(rj);
    return j;
}

std::string FilterReport::to_table(const FilterRuleSet& rules) const {
    std::size_t width = std::string("rule").size();
    for (const auto& rule : rules.rules) width = std::max(width, rule.signal.size());
    width = std::max(width, std::string("(error)").size());

    std::ostringstream out;
    auto row = [&](const std::string& name, const std::string& value) {
        out << "  " << name;
        for (std::size_t i = name.size(); i < width + 2; ++i) out << ' ';
        out << value << '\n';
    };
    out << "filter report\n";
    row("total", std::to_string(total));
    row("kept", std::to_string(kept));
    row("rejected", std::to_string(total - kept));
    out << "  rejections by rule\n";
    for (const auto& rule : rules.rules) {
        auto it = rule_rejections.find(rule.signal);
        std::uint64_t count = it == rule_rejections.end() ? 0 : it->second;
        row("  " + rule.signal, std::to_string(count));
    }
    if (errors) row("  (error)", std::to_string(errors));
    return out.str();
}

FilterReport filter_stream(const std::vector<Document>& docs, const FilterRuleSet& rules,
                           const SignalAssets& assets,
                           const std::function<void(const Document&)>& sink,
                           std::vector<FilterVerdict>* verdicts) {
    FilterReport report;
    for (const auto& doc : docs) {
        ++report.total;
        FilterVerdict verdict;
        try {
            QualitySignals signals = compute_signals(doc, assets);
            verdict = apply_filters(doc.id, signals, rules);
        } catch (const std::exception& e) {
            verdict.doc_id = doc.id;
            verdict.kept = false;
            verdict.failed_rules.push_back({"error", e.what(), ""});
            ++report.errors;
        }
        if (verdict.kept) {
            ++report.kept;
            if (sink) sink(doc);
        } else {
            for (const auto& failed : verdict.failed_rules) {
                ++report.rule_rejections[failed.rule];
            }
        }
        if (verdicts) verdicts->push_back(std::move(verdict));
    }
    return report;
}

}  // namespace curate
