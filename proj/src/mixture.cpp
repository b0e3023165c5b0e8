#include "curate/mixture.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace curate {

std::vector<DatasetDescriptor> DatasetDescriptor::from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("datasets") || !j["datasets"].is_array()) {
        throw MixtureError("mixture config must be an object with a 'datasets' array");
    }
    std::vector<DatasetDescriptor> out;
    for (const auto& item : j["datasets"]) {
        DatasetDescriptor d;
        if (!item.contains("name") || !item.contains("token_count")) {
            throw MixtureError("dataset entries need 'name' and 'token_count'");
        }
        d.name = item["name"].get<std::string>();
        d.token_count = item["token_count"].get<std::uint64_t>();
        if (d.token_count == 0) throw MixtureError("dataset '" + d.name + "' has no tokens");
        if (item.contains("target_ratio")) d.target_ratio = item["target_ratio"].get<double>();
        if (item.contains("oversample_epochs")) {
            d.oversample_epochs = item["oversample_epochs"].get<double>();
        }
        if (d.target_ratio && d.oversample_epochs) {
            throw MixtureError("dataset '" + d.name +
                               "' sets both target_ratio and oversample_epochs");
        }
        d.filler = item.value("filler", false);
        if (d.filler && (d.target_ratio || d.oversample_epochs)) {
            throw MixtureError("filler dataset '" + d.name + "' cannot have a constraint");
        }
        out.push_back(std::move(d));
    }
    return out;
}

const PlanEntry* MixturePlan::find(const std::string& name) const {
    for (const auto& entry : entries) {
        if (entry.name == name) return &entry;
    }
    return nullptr;
}

nlohmann::json MixturePlan::to_json() const {
    nlohmann::json j;
    j["type"] = "mixture_plan";
    j["total_budget"] = total_budget;
    j["interleave_seed"] = interleave_seed;
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& e : entries) {
        arr.push_back({{"name", e.name},
                       {"token_count", e.token_count},
                       {"ratio", e.ratio},
                       {"token_draw", e.token_draw},
                       {"epochs", e.epochs},
                       {"filler", e.filler}});
    }
    j["datasets"] = std::move(arr);
    return j;
}

std::string MixturePlan::to_table() const {
    std::size_t name_width = std::string("dataset").size();
    for (const auto& e : entries) name_width = std::max(name_width, e.name.size());
    std::ostringstream out;
    out << "mixture plan (budget " << total_budget << " tokens)\n";
    char buf[160];
    std::snprintf(buf, sizeof(buf), "  %-*s %10s %18s %8s\n", static_cast<int>(name_width),
                  "dataset", "ratio", "token draw", "epochs");
    out << buf;
    for (const auto& e : entries) {
        std::snprintf(buf, sizeof(buf), "  %-*s %9.2f%% %18llu %8.2f%s\n",
                      static_cast<int>(name_width), e.name.c_str(), e.ratio * 100.0,
                      static_cast<unsigned long long>(e.token_draw), e.epochs,
                      e.filler ? "  (filler)" : "");
        out << buf;
    }
    return out.str();
}

MixturePlan resolve_ratios(const std::vector<DatasetDescriptor>& datasets,
                           std::uint64_t total_budget) {
    if (total_budget == 0) throw MixtureError("total budget must be positive");
    std::size_t filler_count = 0;
    for (const auto& d : datasets) filler_count += d.filler ? 1 : 0;
    if (filler_count != 1) {
        throw MixtureError("exactly one dataset must be marked as filler, found " +
                           std::to_string(filler_count));
    }

    MixturePlan plan;
    plan.total_budget = total_budget;
    double constrained_sum = 0.0;
    std::vector<std::string> offenders;
    for (const auto& d : datasets) {
        PlanEntry entry;
        entry.name = d.name;
        entry.token_count = d.token_count;
        entry.filler = d.filler;
        if (d.target_ratio) {
            entry.ratio = *d.target_ratio;
        } else if (d.oversample_epochs) {
            entry.ratio = *d.oversample_epochs * static_cast<double>(d.token_count) /
                          static_cast<double>(total_budget);
        }
        if (!d.filler) {
            constrained_sum += entry.ratio;
            if (entry.ratio > 1.0) offenders.push_back(d.name);
        }
        plan.entries.push_back(std::move(entry));
    }
    if (constrained_sum > 1.0) {
        std::string msg = "constrained ratios sum to " + std::to_string(constrained_sum) +
                          " (> 1)";
        if (!offenders.empty()) {
            msg += "; oversized:";
            for (const auto& n : offenders) msg += " " + n;
        }
        throw MixtureError(msg);
    }
    for (auto& entry : plan.entries) {
        if (entry.filler) entry.ratio = 1.0 - constrained_sum;
        if (entry.ratio < 0.0) throw MixtureError("filler ratio is negative");
        entry.token_draw = static_cast<std::uint64_t>(
            std::llround(entry.ratio * static_cast<double>(total_budget)));
        entry.epochs = static_cast<double>(entry.token_draw) /
                       static_cast<double>(entry.token_count);
    }
    return plan;
}

std::uint64_t interleave_stream(const MixturePlan& plan, std::vector<DatasetStream>& streams,
                                const std::function<void(const InterleaveItem&)>& sink) {
    struct State {
        const PlanEntry* entry = nullptr;
        DatasetStream* stream = nullptr;
        std::uint64_t taken = 0;        // tokens emitted from this dataset
        std::uint64_t index = 0;        // docs emitted in the current pass
        std::uint64_t passes = 0;       // completed passes
        std::uint64_t max_passes = 0;   // ceil(epochs)
        bool done = false;
    };

    std::vector<State> states;
    for (auto& stream : streams) {
        const PlanEntry* entry = plan.find(stream.name);
        if (!entry) throw MixtureError("no plan entry for stream '" + stream.name + "'");
        State s;
        s.entry = entry;
        s.stream = &stream;
        s.max_passes = static_cast<std::uint64_t>(std::ceil(entry->epochs));
        if (s.max_passes == 0) s.max_passes = 1;
        s.done = entry->token_draw == 0;
        states.push_back(s);
    }
    // Deterministic tie-breaking by name.
    std::sort(states.begin(), states.end(),
              [](const State& a, const State& b) { return a.entry->name < b.entry->name; });

    std::uint64_t emitted = 0;
    while (emitted < plan.total_budget) {
        State* best = nullptr;
        double best_deficit = 0.0;
        for (auto& s : states) {
            if (s.done) continue;
            double deficit = s.entry->ratio * static_cast<double>(emitted) -
                             static_cast<double>(s.taken);
            if (!best || deficit > best_deficit) {
                best = &s;
                best_deficit = deficit;
            }
        }
        if (!best) break;  // every stream exhausted or satisfied

        auto tokens = best->stream->next();
        if (!tokens) {
            // End of a pass. Rewind if more passes are both needed and
            // allowed; otherwise this dataset must already have met its draw.
            ++best->passes;
            if (best->taken >= best->entry->token_draw) {
                best->done = true;
                continue;
            }
            if (best->passes >= best->max_passes) {
                throw MixtureError("dataset '" + best->entry->name +
                                   "' exhausted after " + std::to_string(best->passes) +
                                   " pass(es) before reaching its planned draw");
            }
            best->stream->rewind();
            best->index = 0;
            tokens = best->stream->next();
            if (!tokens) {
                throw MixtureError("dataset '" + best->entry->name +
                                   "' is empty after rewind");
            }
        }
        sink({best->entry->name, *tokens, best->index});
        ++best->index;
        best->taken += *tokens;
        emitted += *tokens;
        if (best->taken >= best->entry->token_draw) best->done = true;
    }
    return emitted;
}

std::vector<InterleaveItem> interleave(const MixturePlan& plan,
                                       std::vector<DatasetStream>& streams) {
    std::vector<InterleaveItem> out;
    interleave_stream(plan, streams, [&](const InterleaveItem& item) { out.push_back(item); });
    return out;
}

nlohmann::json RatioValidation::to_json() const {
    nlohmann::json j;
    j["type"] = "ratio_validation";
    j["all_ok"] = all_ok;
    if (!message.empty()) j["message"] = message;
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& c : checks) {
        arr.push_back({{"dataset", c.dataset},
                       {"expected_ratio", c.expected_ratio},
                       {"actual_ratio", c.actual_ratio},
                       {"ok", c.ok}});
    }
    j["checks"] = std::move(arr);
    return j;
}

std::string RatioValidation::to_table() const {
    if (!message.empty()) return "ratio validation: " + message + "\n";
    std::size_t name_width = std::string("dataset").size();
    for (const auto& c : checks) name_width = std::max(name_width, c.dataset.size());
    std::ostringstream out;
    out << "ratio validation\n";
    char buf[160];
    std::snprintf(buf, sizeof(buf), "  %-*s %10s %10s %6s\n", static_cast<int>(name_width),
                  "dataset", "expected", "actual", "ok");
    out << buf;
    for (const auto& c : checks) {
        std::snprintf(buf, sizeof(buf), "  %-*s %9.2f%% %9.2f%% %6s\n",
                      static_cast<int>(name_width), c.dataset.c_str(),
                      c.expected_ratio * 100.0, c.actual_ratio * 100.0,
                      c.ok ? "yes" : "NO");
        out << buf;
    }
    return out.str();
}

RatioValidation validate_expected_ratios(
    const MixturePlan& plan, const std::vector<std::pair<std::string, double>>& expected,
    double tolerance) {
    RatioValidation result;
    if (plan.entries.empty()) {
        result.message = "no datasets in plan";
        result.all_ok = false;
        return result;
    }
    result.all_ok = true;
    for (const auto& [name, ratio] : expected) {
        RatioCheck check;
        check.dataset = name;
        check.expected_ratio = ratio;
        const PlanEntry* entry = plan.find(name);
        if (!entry) {
            check.ok = false;
            result.all_ok = false;
        } else {
            check.actual_ratio = entry->ratio;
            check.ok = std::abs(entry->ratio - ratio) <= tolerance + 1e-12;
            result.all_ok = result.all_ok && check.ok;
        }
        result.checks.push_back(check);
    }
    return result;
}

}  // namespace curate
