#include "curate/checkpoint.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <filesystem>
#include <fstream>

namespace fs = std::filesystem;

namespace curate {

namespace {

constexpr char kMagic[6] = {'T', 'C', 'K', 'P', 'T', '1'};

static_assert(std::endian::native == std::endian::little,
              "checkpoint I/O assumes a little-endian host");

template <typename T>
void write_le(std::ostream& out, T value) {
    out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T read_le(std::istream& in, const std::string& path) {
    T value{};
    in.read(reinterpret_cast<char*>(&value), sizeof(T));
    if (in.gcount() != sizeof(T)) throw CheckpointError("truncated checkpoint: " + path);
    return value;
}

}  // namespace

std::uint64_t Tensor::element_count() const {
    std::uint64_t n = 1;
    for (std::uint64_t d : shape) n *= d;
    return n;
}

const Tensor* TensorCheckpoint::find(const std::string& name) const {
    for (const auto& t : tensors) {
        if (t.name == name) return &t;
    }
    return nullptr;
}

TensorCheckpoint read_checkpoint(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CheckpointError("cannot open checkpoint: " + path);
    char magic[6];
    in.read(magic, 6);
    if (in.gcount() != 6 || std::memcmp(magic, kMagic, 6) != 0) {
        throw CheckpointError("bad checkpoint magic in " + path);
    }
    TensorCheckpoint ckpt;
    auto tensor_count = read_le<std::uint32_t>(in, path);
    ckpt.iteration = read_le<std::uint64_t>(in, path);
    ckpt.tensors.reserve(tensor_count);
    for (std::uint32_t i = 0; i < tensor_count; ++i) {
        Tensor t;
        auto name_len = read_le<std::uint32_t>(in, path);
        t.name.resize(name_len);
        in.read(t.name.data(), name_len);
        if (in.gcount() != static_cast<std::streamsize>(name_len)) {
            throw CheckpointError("truncated checkpoint: " + path);
        }
        auto rank = read_le<std::uint32_t>(in, path);
        t.shape.resize(rank);
        for (std::uint32_t d = 0; d < rank; ++d) t.shape[d] = read_le<std::uint64_t>(in, path);
        std::uint64_t elements = t.element_count();
        t.data.resize(elements);
        if (elements > 0) {
            in.read(reinterpret_cast<char*>(t.data.data()),
                    static_cast<std::streamsize>(elements * sizeof(float)));
            if (in.gcount() != static_cast<std::streamsize>(elements * sizeof(float))) {
                throw CheckpointError("truncated tensor data in " + path);
            }
        }
        for (const auto& existing : ckpt.tensors) {
            if (existing.name == t.name) {
                throw CheckpointError("duplicate tensor name '" + t.name + "' in " + path);
            }
        }
        ckpt.tensors.push_back(std::move(t));
    }
    return ckpt;
}

void write_checkpoint(const std::string& path, const TensorCheckpoint& ckpt) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw CheckpointError("cannot open checkpoint for writing: " + path);
    out.write(kMagic, 6);
    write_le<std::uint32_t>(out, static_cast<std::uint32_t>(ckpt.tensors.size()));
    write_le<std::uint64_t>(out, ckpt.iteration);
    for (const auto& t : ckpt.tensors) {
        if (t.data.size() != t.element_count()) {
            throw CheckpointError("tensor '" + t.name + "' data does not match its shape");
        }
        write_le<std::uint32_t>(out, static_cast<std::uint32_t>(t.name.size()));
        out.write(t.name.data(), static_cast<std::streamsize>(t.name.size()));
        write_le<std::uint32_t>(out, static_cast<std::uint32_t>(t.shape.size()));
        for (std::uint64_t d : t.shape) write_le<std::uint64_t>(out, d);
        out.write(reinterpret_cast<const char*>(t.data.data()),
                  static_cast<std::streamsize>(t.data.size() * sizeof(float)));
    }
    if (!out) throw CheckpointError("failed writing checkpoint: " + path);
}

CheckpointSeries CheckpointSeries::from_directory(const std::string& dir) {
    if (!fs::is_directory(dir)) throw CheckpointError("not a directory: " + dir);
    CheckpointSeries series;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (!entry.is_regular_file()) continue;
        std::ifstream in(entry.path(), std::ios::binary);
        char magic[6];
        in.read(magic, 6);
        if (in.gcount() != 6 || std::memcmp(magic, kMagic, 6) != 0) continue;
        in.ignore(4);  // tensor count
        std::uint64_t iteration = read_le<std::uint64_t>(in, entry.path().string());
        series.refs.push_back({entry.path().string(), iteration});
    }
    std::sort(series.refs.begin(), series.refs.end(),
              [](const CheckpointRef& a, const CheckpointRef& b) {
                  return a.iteration < b.iteration;
              });
    for (std::size_t i = 1; i < series.refs.size(); ++i) {
        if (series.refs[i].iteration == series.refs[i - 1].iteration) {
            throw CheckpointError("duplicate iteration " +
                                  std::to_string(series.refs[i].iteration) + " in " + dir);
        }
    }
    return series;
}

std::size_t select_window(const CheckpointSeries& series, const WindowPolicy& policy) {
    if (series.refs.empty()) throw CheckpointError("empty checkpoint series");
    if (policy.kind == WindowPolicy::Kind::kLastN) {
        return std::min<std::size_t>(static_cast<std::size_t>(policy.value),
                                     series.refs.size());
    }
    std::uint64_t final_iter = series.refs.back().iteration;
    std::uint64_t cutoff = policy.value >= final_iter ? 0 : final_iter - policy.value;
    std::size_t count = 0;
    for (const auto& ref : series.refs) {
        if (ref.iteration >= cutoff) ++count;
    }
    return count;
}

TensorCheckpoint average(const CheckpointSeries& series, std::size_t window) {
    if (window < 1 || window > series.refs.size()) {
        throw CheckpointError("window " + std::to_string(window) +
                              " out of range for a series of " +
                              std::to_string(series.refs.size()) + " checkpoints");
    }
    const std::size_t first = series.refs.size() - window;

    TensorCheckpoint result = read_checkpoint(series.refs[first].path);
    std::vector<std::vector<double>> acc(result.tensors.size());
    for (std::size_t t = 0; t < result.tensors.size(); ++t) {
        const auto& data = result.tensors[t].data;
        acc[t].assign(data.begin(), data.end());
    }

    for (std::size_t i = first + 1; i < series.refs.size(); ++i) {
        TensorCheckpoint next = read_checkpoint(series.refs[i].path);
        if (next.tensors.size() != result.tensors.size()) {
            throw CheckpointError("checkpoint " + series.refs[i].path + " has " +
                                  std::to_string(next.tensors.size()) + " tensors, expected " +
                                  std::to_string(result.tensors.size()));
        }
        for (std::size_t t = 0; t < next.tensors.size(); ++t) {
            const Tensor& a = result.tensors[t];
            const Tensor& b = next.tensors[t];
            if (a.name != b.name || a.shape != b.shape) {
                throw CheckpointError("schema mismatch at tensor '" + a.name + "' in " +
                                      series.refs[i].path);
            }
            for (std::size_t e = 0; e < b.data.size(); ++e) {
                acc[t][e] += static_cast<double>(b.data[e]);
            }
        }
        result.iteration = next.iteration;
    }

    const double divisor = static_cast<double>(window);
    for (std::size_t t = 0; t < result.tensors.size(); ++t) {
        auto& data = result.tensors[t].data;
        for (std::size_t e = 0; e < data.size(); ++e) {
            data[e] = static_cast<float>(acc[t][e] / divisor);
        }
    }
    result.iteration = series.refs.back().iteration;
    return result;
}

}  // namespace curate
