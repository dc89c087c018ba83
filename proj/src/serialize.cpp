#include "qchan/serialize.hpp"

#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

#include <json.hpp>

namespace qchan {

namespace {

constexpr std::array<char, 4> kMagic{'Q', 'C', 'R', 'M'};

template <class T>
void put_le(std::ostream& out, T value) {
  static_assert(sizeof(T) == 8);
  std::uint64_t bits;
  std::memcpy(&bits, &value, 8);
  if constexpr (std::endian::native == std::endian::big) bits = __builtin_bswap64(bits);
  out.write(reinterpret_cast<const char*>(&bits), 8);
}

template <class T>
T get_le(std::istream& in) {
  std::uint64_t bits = 0;
  in.read(reinterpret_cast<char*>(&bits), 8);
  if (!in) throw Error("QCRM: truncated stream");
  if constexpr (std::endian::native == std::endian::big) bits = __builtin_bswap64(bits);
  T value;
  std::memcpy(&value, &bits, 8);
  return value;
}

}  // namespace

void write_qcrm(std::ostream& out, const MatrixXcd& m) {
  out.write(kMagic.data(), kMagic.size());
  put_le<std::uint64_t>(out, static_cast<std::uint64_t>(m.rows()));
  put_le<std::uint64_t>(out, static_cast<std::uint64_t>(m.cols()));
  for (Index r = 0; r < m.rows(); ++r) {
    for (Index c = 0; c < m.cols(); ++c) {
      put_le<double>(out, m(r, c).real());
      put_le<double>(out, m(r, c).imag());
    }
  }
  if (!out) throw Error("QCRM: write failed");
}

MatrixXcd read_qcrm(std::istream& in) {
  std::array<char, 4> magic{};
  in.read(magic.data(), magic.size());
  if (!in || magic != kMagic) throw Error("QCRM: bad magic bytes");
  const auto rows = get_le<std::uint64_t>(in);
  const auto cols = get_le<std::uint64_t>(in);
  constexpr std::uint64_t kMaxEntries = std::uint64_t{1} << 34;
  if (rows != 0 && cols > kMaxEntries / rows) {
    throw Error(detail::concat("QCRM: implausible shape ", rows, "x", cols));
  }
  MatrixXcd m(static_cast<Index>(rows), static_cast<Index>(cols));
  for (Index r = 0; r < m.rows(); ++r) {
    for (Index c = 0; c < m.cols(); ++c) {
      const double re = get_le<double>(in);
      const double im = get_le<double>(in);
      m(r, c) = {re, im};
    }
  }
  return m;
}

void save_qcrm(const std::filesystem::path& path, const MatrixXcd& m) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  write_qcrm(out, m);
}

MatrixXcd load_qcrm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  return read_qcrm(in);
}

std::string to_qcrm_json(const MatrixXcd& m) {
  nlohmann::json j;
  j["format"] = "QCRM";
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  std::vector<double> data;
  data.reserve(static_cast<std::size_t>(2 * m.size()));
  for (Index r = 0; r < m.rows(); ++r) {
    for (Index c = 0; c < m.cols(); ++c) {
      data.push_back(m(r, c).real());
      data.push_back(m(r, c).imag());
    }
  }
  j["data"] = std::move(data);
  return j.dump();
}

MatrixXcd from_qcrm_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  if (j.value("format", "") != "QCRM") throw Error("QCRM json: missing format tag");
  const auto rows = j.at("rows").get<Index>();
  const auto cols = j.at("cols").get<Index>();
  const auto& data = j.at("data");
  if (rows < 0 || cols < 0 || static_cast<Index>(data.size()) != 2 * rows * cols) {
    throw Error(detail::concat("QCRM json: ", data.size(), " numbers for a ", rows, "x", cols,
                               " matrix"));
  }
  MatrixXcd m(rows, cols);
  std::size_t k = 0;
  for (Index r = 0; r < rows; ++r) {
    for (Index c = 0; c < cols; ++c, k += 2) {
      m(r, c) = {data[k].get<double>(), data[k + 1].get<double>()};
    }
  }
  return m;
}

std::string to_json(const SampleSidecar& sidecar) {
  nlohmann::json j;
  j["kind"] = std::string(to_string(sidecar.spec.kind));
  j["d1"] = sidecar.spec.d1;
  j["d2"] = sidecar.spec.d2;
  j["s"] = sidecar.spec.s;
  j["t"] = sidecar.spec.t;
  j["master_seed"] = sidecar.master_seed;
  j["stream_index"] = sidecar.stream_index;
  return j.dump(2);
}

SampleSidecar sidecar_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  SampleSidecar out;
  const auto kind = parse_ensemble_kind(j.at("kind").get<std::string>());
  if (!kind) throw Error("sidecar: unknown ensemble kind " + j.at("kind").dump());
  out.spec.kind = *kind;
  out.spec.d1 = j.at("d1").get<Index>();
  out.spec.d2 = j.at("d2").get<Index>();
  out.spec.s = j.at("s").get<Index>();
  out.spec.t = j.at("t").get<double>();
  out.master_seed = j.at("master_seed").get<std::uint64_t>();
  out.stream_index = j.at("stream_index").get<std::uint64_t>();
  return out;
}

}  // namespace qchan
