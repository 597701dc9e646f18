#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "g2flow/field.hpp"

namespace g2flow {

/// Binary checkpoint, bit-exact:
///   magic "G2CK", version u32, dim u32, n u32, alpha f64, nu f64, time f64,
///   then dim * n^dim velocity coefficients as little-endian f64 (re, im)
///   pairs, row-major by axis order, component-major.
struct CheckpointHeader {
  std::uint32_t version = 1;
  std::uint32_t dim = 0;
  std::uint32_t n = 0;
  double alpha = 0.0;
  double nu = 0.0;
  double time = 0.0;
};

class CheckpointError : public std::runtime_error {
 public:
  CheckpointError(const std::string& what, std::uint64_t byte_offset)
      : std::runtime_error(what), byte_offset_(byte_offset) {}
  std::uint64_t byte_offset() const { return byte_offset_; }

 private:
  std::uint64_t byte_offset_;
};

struct Checkpoint {
  CheckpointHeader header;
  Field velocity;
};

void save_checkpoint(const std::string& path, const Field& velocity, double alpha, double nu,
                     double time);

Checkpoint load_checkpoint(const std::string& path);

/// Header-and-size validation without materializing the field; throws
/// CheckpointError carrying the offending byte offset (truncation, bad magic,
/// unsupported version or sizes).
CheckpointHeader inspect_checkpoint(const std::string& path);

}  // namespace g2flow
