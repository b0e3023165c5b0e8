// Trailing-window checkpoint averaging and the on-disk tensor format.
//
// File layout (little-endian throughout):
//   magic "TCKPT1"
//   u32 tensor count
//   u64 training iteration
//   per tensor: u32 name length, UTF-8 name, u32 rank, rank x u64 dims,
//               raw float32 data, row-major

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace curate {

class CheckpointError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

struct Tensor {
    std::string name;
    std::vector<std::uint64_t> shape;
    std::vector<float> data;  // row-major; size == product of shape

    std::uint64_t element_count() const;
};

struct TensorCheckpoint {
    std::uint64_t iteration = 0;
    std::vector<Tensor> tensors;  // file order preserved

    const Tensor* find(const std::string& name) const;
};

TensorCheckpoint read_checkpoint(const std::string& path);
void write_checkpoint(const std::string& path, const TensorCheckpoint& ckpt);

struct CheckpointRef {
    std::string path;
    std::uint64_t iteration = 0;
};

struct CheckpointSeries {
    // Sorted ascending by iteration, strictly increasing.
    std::vector<CheckpointRef> refs;

    // Scans a directory for checkpoint files and orders them by the
    // iteration recorded in their headers. Throws on duplicate iterations.
    static CheckpointSeries from_directory(const std::string& dir);
};

struct WindowPolicy {
    enum class Kind { kLastN, kLastIterations } kind = Kind::kLastN;
    std::uint64_t value = 20;
};

// Number of trailing checkpoints selected by the policy: last_n clamps to
// the series length; last_iterations counts checkpoints with iteration >=
// (final iteration - value).
std::size_t select_window(const CheckpointSeries& series, const WindowPolicy& policy);

// Elementwise mean over the last `window` checkpoints, accumulated in
// float64 and rounded to float32 once. All members must share an identical
// name/shape schema; the result carries the last checkpoint's iteration.
TensorCheckpoint average(const CheckpointSeries& series, std::size_t window);

}  // namespace curate
