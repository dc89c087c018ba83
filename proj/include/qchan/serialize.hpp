#ifndef QCHAN_SERIALIZE_HPP
#define QCHAN_SERIALIZE_HPP

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>

#include "qchan/ensemble_spec.hpp"
#include "qchan/types.hpp"

namespace qchan {

// QCRM container layout (all little-endian):
//   bytes 0..3   magic "QCRM"
//   u64          rows
//   u64          cols
//   f64 pairs    (re, im) of each entry, row-major
// The JSON variant is {"format": "QCRM", "rows": r, "cols": c,
// "data": [re00, im00, re01, im01, ...]} in the same order.

void write_qcrm(std::ostream& out, const MatrixXcd& m);
MatrixXcd read_qcrm(std::istream& in);

void save_qcrm(const std::filesystem::path& path, const MatrixXcd& m);
MatrixXcd load_qcrm(const std::filesystem::path& path);

std::string to_qcrm_json(const MatrixXcd& m);
MatrixXcd from_qcrm_json(const std::string& text);

/// Metadata written next to a serialized Choi matrix.
struct SampleSidecar {
  EnsembleSpec spec;
  std::uint64_t master_seed = 0;
  std::uint64_t stream_index = 0;

  friend bool operator==(const SampleSidecar&, const SampleSidecar&) = default;
};

std::string to_json(const SampleSidecar& sidecar);
SampleSidecar sidecar_from_json(const std::string& text);

}  // namespace qchan

#endif  // QCHAN_SERIALIZE_HPP
