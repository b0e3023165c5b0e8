// Data-mixture planning: resolve per-dataset sampling ratios and token
// budgets from a descriptor table, and interleave dataset streams
// deterministically so the emitted stream tracks the target ratios exactly.

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace curate {

class MixtureError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

struct DatasetDescriptor {
    std::string name;
    std::uint64_t token_count = 0;          // tokens available
    std::optional<double> target_ratio;     // fixed share of the budget
    std::optional<double> oversample_epochs; // e.g. 2.0 = seen twice
    bool filler = false;                     // absorbs the residual ratio

    static std::vector<DatasetDescriptor> from_json(const nlohmann::json& j);
};

struct PlanEntry {
    std::string name;
    std::uint64_t token_count = 0;
    double ratio = 0.0;
    std::uint64_t token_draw = 0;
    double epochs = 0.0;
    bool filler = false;
};

struct MixturePlan {
    std::uint64_t total_budget = 0;
    std::vector<PlanEntry> entries;  // descriptor order
    std::uint64_t interleave_seed = 0;

    const PlanEntry* find(const std::string& name) const;
    nlohmann::json to_json() const;
    std::string to_table() const;
};

// Oversampled datasets get ratio = epochs * token_count / budget; fixed-ratio
// datasets keep their ratio; the single filler absorbs the rest. Throws when
// constraints exceed the budget or the filler share would be negative.
MixturePlan resolve_ratios(const std::vector<DatasetDescriptor>& datasets,
                           std::uint64_t total_budget);

struct InterleaveItem {
    std::string dataset;
    std::uint64_t tokens = 0;
    std::uint64_t index_in_dataset = 0;  // position within the current pass
};

// A dataset stream: returns the next document's token count, or nullopt at
// end of stream. rewind() restarts the stream for another pass.
struct DatasetStream {
    std::string name;
    std::function<std::optional<std::uint64_t>()> next;
    std::function<void()> rewind;
};

// Deterministic weighted interleaving: each step emits one document from the
// dataset with the largest token deficit (ties by name). Streams restart when
// their planned epochs exceed completed passes; emission stops once the total
// budget is reached or every stream is done. The sink is invoked once per
// emitted document, immediately after the stream produced it; returns the
// total tokens emitted.
std::uint64_t interleave_stream(const MixturePlan& plan, std::vector<DatasetStream>& streams,
                                const std::function<void(const InterleaveItem&)>& sink);

// Buffered variant of interleave_stream.
std::vector<InterleaveItem> interleave(const MixturePlan& plan,
                                       std::vector<DatasetStream>& streams);

struct RatioCheck {
    std::string dataset;
    double expected_ratio = 0.0;
    double actual_ratio = 0.0;
    bool ok = false;
};

struct RatioValidation {
    std::vector<RatioCheck> checks;
    bool all_ok = false;
    std::string message;  // set when the plan cannot be checked

    nlohmann::json to_json() const;
    std::string to_table() const;
};

// Compares resolved ratios against expected values (fractions in [0,1]);
// tolerance is in ratio units (0.001 = 0.1 percentage points).
RatioValidation validate_expected_ratios(
    const MixturePlan& plan, const std::vector<std::pair<std::string, double>>& expected,
    double tolerance = 0.001);

}  // namespace curate
