#pragma once

#include <string>

#include "ftconv/costmodel.hpp"
#include "ftconv/fdfir.hpp"

namespace ftconv {

// Raw interleaved little-endian float samples: re, im, re, im, ...
// .cf32 holds single precision, .cf64 double precision.
CArrayF read_cf32(const std::string& path);
void write_cf32(const std::string& path, const CArrayF& data);
CArrayD read_cf64(const std::string& path);
void write_cf64(const std::string& path, const CArrayD& data);

/// Bank file: M templates of K taps each, concatenated, cf32 layout.
FilterBank read_bank_cf32(const std::string& path, Index filters, Index taps);

// FOP container: 16-byte header (magic "FOP1", u32 rows, u32 cols,
// u32 reserved, little-endian) followed by row-major float32 data.
void write_fop(const std::string& path, const FilterOutputPlane& fop);
FilterOutputPlane read_fop(const std::string& path);

void write_fop_csv(const std::string& path, const FilterOutputPlane& fop);

/// JSON device description; missing keys keep the shipped defaults.
/// fft_dsp_table entries are [n_ft, points_per_cycle, blocks] triples.
DeviceModel load_device_model(const std::string& path);

}  // namespace ftconv
