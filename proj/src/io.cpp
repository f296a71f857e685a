#include "ftconv/io.hpp"

#include <cstring>
#include <fstream>

#include <json.hpp>

namespace ftconv {

namespace {

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  return in;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  return out;
}

template <class Scalar>
CplxArray<Scalar> read_interleaved(const std::string& path) {
  std::ifstream in = open_in(path);
  in.seekg(0, std::ios::end);
  const auto bytes = static_cast<std::size_t>(in.tellg());
  in.seekg(0);
  const std::size_t sample_bytes = 2 * sizeof(Scalar);
  if (bytes % sample_bytes != 0)
    throw std::runtime_error("truncated complex sample file: " + path);
  const Index n = static_cast<Index>(bytes / sample_bytes);
  CplxArray<Scalar> data(n);
  in.read(reinterpret_cast<char*>(data.data()), static_cast<std::streamsize>(bytes));
  if (!in) throw std::runtime_error("read failed: " + path);
  return data;
}

template <class Scalar>
void write_interleaved(const std::string& path, const CplxArray<Scalar>& data) {
  std::ofstream out = open_out(path);
  out.write(reinterpret_cast<const char*>(data.data()),
            static_cast<std::streamsize>(data.size() * 2 * sizeof(Scalar)));
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace

CArrayF read_cf32(const std::string& path) {
  CArrayF data = read_interleaved<float>(path);
  require_finite(data, path.c_str());
  return data;
}

void write_cf32(const std::string& path, const CArrayF& data) {
  write_interleaved<float>(path, data);
}

CArrayD read_cf64(const std::string& path) {
  CArrayD data = read_interleaved<double>(path);
  require_finite(data, path.c_str());
  return data;
}

void write_cf64(const std::string& path, const CArrayD& data) {
  write_interleaved<double>(path, data);
}

FilterBank read_bank_cf32(const std::string& path, Index filters, Index taps) {
  if (filters < 1 || taps < 1)
    throw std::invalid_argument("read_bank_cf32: filters and taps must be >= 1");
  const CArrayF flat = read_interleaved<float>(path);
  if (flat.size() != filters * taps)
    throw std::runtime_error("bank file " + path + " holds " +
                             std::to_string(flat.size()) + " samples, expected " +
                             std::to_string(filters * taps));
  std::vector<CArrayF> templates;
  templates.reserve(static_cast<std::size_t>(filters));
  for (Index m = 0; m < filters; ++m) {
    CArrayF h = flat.segment(m * taps, taps);
    if (!h.isFinite().all())
      throw std::runtime_error("bank file " + path + ": filter " +
                               std::to_string(m + 1) + " has non-finite taps");
    templates.push_back(std::move(h));
  }
  return make_filter_bank(std::move(templates));
}

void write_fop(const std::string& path, const FilterOutputPlane& fop) {
  std::ofstream out = open_out(path);
  const char magic[4] = {'F', 'O', 'P', '1'};
  const std::uint32_t rows = static_cast<std::uint32_t>(fop.row_count());
  const std::uint32_t cols = static_cast<std::uint32_t>(fop.cols());
  const std::uint32_t reserved = 0;
  out.write(magic, 4);
  out.write(reinterpret_cast<const char*>(&rows), 4);
  out.write(reinterpret_cast<const char*>(&cols), 4);
  out.write(reinterpret_cast<const char*>(&reserved), 4);
  for (const auto& row : fop.rows) {
    if (row.size() != static_cast<Index>(cols))
      throw std::runtime_error("write_fop: ragged rows");
    out.write(reinterpret_cast<const char*>(row.data()),
              static_cast<std::streamsize>(row.size() * sizeof(float)));
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

FilterOutputPlane read_fop(const std::string& path) {
  std::ifstream in = open_in(path);
  char magic[4];
  std::uint32_t rows = 0, cols = 0, reserved = 0;
  in.read(magic, 4);
  in.read(reinterpret_cast<char*>(&rows), 4);
  in.read(reinterpret_cast<char*>(&cols), 4);
  in.read(reinterpret_cast<char*>(&reserved), 4);
  if (!in || std::memcmp(magic, "FOP1", 4) != 0)
    throw std::runtime_error("not a FOP file: " + path);
  FilterOutputPlane fop;
  fop.rows.resize(rows);
  for (auto& row : fop.rows) {
    row.resize(cols);
    in.read(reinterpret_cast<char*>(row.data()),
            static_cast<std::streamsize>(cols * sizeof(float)));
  }
  if (!in) throw std::runtime_error("truncated FOP file: " + path);
  return fop;
}

void write_fop_csv(const std::string& path, const FilterOutputPlane& fop) {
  std::ofstream out = open_out(path);
  for (const auto& row : fop.rows) {
    for (Index i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      out << row[i];
    }
    out << '\n';
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

DeviceModel load_device_model(const std::string& path) {
  std::ifstream in = open_in(path);
  nlohmann::json j;
  in >> j;
  DeviceModel device;
  device.n_dsp = j.value("n_dsp", device.n_dsp);
  device.dsp_per_complex_mult =
      j.value("dsp_per_complex_mult", device.dsp_per_complex_mult);
  device.bank_count = j.value("bank_count", device.bank_count);
  device.bank_bus_width_bits =
      j.value("bank_bus_width_bits", device.bank_bus_width_bits);
  device.bank_rate_mhz = j.value("bank_rate_mhz", device.bank_rate_mhz);
  device.quarter_rate_factor =
      j.value("quarter_rate_factor", device.quarter_rate_factor);
  device.allow_fft_dsp_extrapolation =
      j.value("allow_fft_dsp_extrapolation", device.allow_fft_dsp_extrapolation);
  if (j.contains("fft_dsp_table")) {
    device.fft_dsp_table.clear();
    for (const auto& entry : j.at("fft_dsp_table")) {
      if (!entry.is_array() || entry.size() != 3)
        throw std::runtime_error("device model " + path +
                                 ": fft_dsp_table entries must be [n_ft, pc, blocks]");
      device.fft_dsp_table[{entry[0].get<Index>(), entry[1].get<int>()}] =
          entry[2].get<int>();
    }
  }
  if (device.n_dsp < 4 || device.bank_count < 1)
    throw std::runtime_error("device model " + path + ": invalid resource counts");
  return device;
}

}  // namespace ftconv
