#include "g2flow/checkpoint.hpp"

#include <bit>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <vector>

namespace g2flow {

static_assert(std::endian::native == std::endian::little,
              "checkpoint I/O assumes a little-endian host");

namespace {

constexpr char kMagic[4] = {'G', '2', 'C', 'K'};
constexpr std::uint64_t kHeaderBytes = 4 + 4 + 4 + 4 + 8 + 8 + 8;  // magic + 3 u32 + 3 f64

std::uint64_t payload_bytes(std::uint32_t dim, std::uint32_t n) {
  std::uint64_t modes = 1;
  for (std::uint32_t i = 0; i < dim; ++i) modes *= n;
  return static_cast<std::uint64_t>(dim) * modes * 16;  // complex f64 pairs
}

template <typename T>
void put(std::ofstream& os, const T& value) {
  os.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
bool get(std::ifstream& is, T& value) {
  is.read(reinterpret_cast<char*>(&value), sizeof(T));
  return static_cast<bool>(is);
}

CheckpointHeader read_header(std::ifstream& is, const std::string& path,
                             std::uint64_t file_size) {
  char magic[4];
  is.read(magic, 4);
  if (!is || std::memcmp(magic, kMagic, 4) != 0) {
    throw CheckpointError(path + ": bad magic (expected G2CK)", 0);
  }
  CheckpointHeader h;
  if (!get(is, h.version)) throw CheckpointError(path + ": truncated at byte " + std::to_string(file_size), file_size);
  if (h.version != 1) throw CheckpointError(path + ": unsupported version " + std::to_string(h.version), 4);
  if (!get(is, h.dim) || !get(is, h.n) || !get(is, h.alpha) || !get(is, h.nu) || !get(is, h.time)) {
    throw CheckpointError(path + ": truncated at byte " + std::to_string(file_size), file_size);
  }
  if (h.dim != 2 && h.dim != 3) throw CheckpointError(path + ": bad dim " + std::to_string(h.dim), 8);
  if (h.n < 8 || h.n % 2 != 0 || h.n > 4096) {
    throw CheckpointError(path + ": bad n " + std::to_string(h.n), 12);
  }
  return h;
}

}  // namespace

void save_checkpoint(const std::string& path, const Field& velocity, double alpha, double nu,
                     double time) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw CheckpointError(path + ": cannot open for writing", 0);

  const auto& g = velocity.grid();
  os.write(kMagic, 4);
  put(os, std::uint32_t{1});
  put(os, static_cast<std::uint32_t>(g.dim));
  put(os, static_cast<std::uint32_t>(g.n));
  put(os, alpha);
  put(os, nu);
  put(os, time);
  // component-major, row-major by axis order; complex<double> is a (re, im)
  // pair in memory, which is exactly the wire layout
  for (int c = 0; c < velocity.ncomp(); ++c) {
    os.write(reinterpret_cast<const char*>(velocity.data(c)),
             static_cast<std::streamsize>(g.mode_count() * sizeof(Complex)));
  }
  if (!os) throw CheckpointError(path + ": write failed", 0);
}

CheckpointHeader inspect_checkpoint(const std::string& path) {
  std::error_code ec;
  const std::uint64_t file_size = std::filesystem::file_size(path, ec);
  if (ec) throw CheckpointError(path + ": cannot stat file", 0);

  std::ifstream is(path, std::ios::binary);
  if (!is) throw CheckpointError(path + ": cannot open", 0);
  if (file_size < kHeaderBytes) {
    throw CheckpointError(path + ": truncated at byte " + std::to_string(file_size), file_size);
  }
  const CheckpointHeader h = read_header(is, path, file_size);
  const std::uint64_t expected = kHeaderBytes + payload_bytes(h.dim, h.n);
  if (file_size != expected) {
    throw CheckpointError(path + ": truncated at byte " + std::to_string(file_size) +
                              " (expected " + std::to_string(expected) + ")",
                          file_size);
  }
  return h;
}

Checkpoint load_checkpoint(const std::string& path) {
  const CheckpointHeader h = inspect_checkpoint(path);
  std::ifstream is(path, std::ios::binary);
  is.seekg(static_cast<std::streamoff>(kHeaderBytes));

  Checkpoint cp;
  cp.header = h;
  GridPtr grid = make_grid(static_cast<int>(h.dim), static_cast<int>(h.n));
  cp.velocity = Field::vector(grid);
  for (int c = 0; c < cp.velocity.ncomp(); ++c) {
    is.read(reinterpret_cast<char*>(cp.velocity.data(c)),
            static_cast<std::streamsize>(grid->mode_count() * sizeof(Complex)));
  }
  if (!is) throw CheckpointError(path + ": read failed", 0);
  return cp;
}

}  // namespace g2flow
