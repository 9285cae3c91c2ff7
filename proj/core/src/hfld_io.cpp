#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <limits>
#include <sstream>
#include <string>

#include "surftex/error.hpp"
#include "surftex/heightfield.hpp"

namespace surftex {
namespace {

constexpr std::string_view kMagic = "HFLD";
constexpr std::size_t kMaxHeader = 256;

std::string format_spacing(double spacing) {
  std::array<char, 64> buf{};
  std::snprintf(buf.data(), buf.size(), "%.17g", spacing);
  return buf.data();
}

}  // namespace

void write_hfld(const HeightField& field, const std::filesystem::path& path) {
  std::string payload;
  payload.reserve(field.size() * 4);
  for (double v : field.values()) {
    const auto f = static_cast<float>(v);
    if (!std::isfinite(f))
      fail(ErrorCode::non_finite, "value " + std::to_string(v) + " does not fit binary32");
    const auto bits = std::bit_cast<std::uint32_t>(f);
    for (int shift = 0; shift < 32; shift += 8)
      payload.push_back(static_cast<char>((bits >> shift) & 0xFFu));
  }

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorCode::io, "cannot open " + path.string() + " for writing");
  out << kMagic << " v1 " << field.width() << ' ' << field.height() << ' '
      << format_spacing(field.spacing_um()) << '\n';
  out.write(payload.data(), static_cast<std::streamsize>(payload.size()));
  out.flush();
  if (!out) fail(ErrorCode::io, "write to " + path.string() + " failed");
}

HeightField read_hfld(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::io, "cannot open " + path.string());
  const std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

  if (bytes.size() < kMagic.size() + 1 || bytes.compare(0, kMagic.size(), kMagic) != 0 ||
      bytes[kMagic.size()] != ' ')
    fail(ErrorCode::bad_magic, path.string() + " is not an HFLD file");

  const auto eol = bytes.find('\n');
  if (eol == std::string::npos || eol > kMaxHeader)
    fail(ErrorCode::bad_header, "header line missing or too long in " + path.string());

  std::istringstream header(bytes.substr(kMagic.size() + 1, eol - kMagic.size() - 1));
  std::string version;
  long width = 0;
  long height = 0;
  std::string spacing_text;
  header >> version >> width >> height >> spacing_text;
  std::string extra;
  if (!header || version != "v1" || (header >> extra) || width < 1 || height < 1 ||
      width > std::numeric_limits<int>::max() || height > std::numeric_limits<int>::max())
    fail(ErrorCode::bad_header, "malformed header in " + path.string());
  char* end = nullptr;
  const double spacing = std::strtod(spacing_text.c_str(), &end);
  if (end == spacing_text.c_str() || *end != '\0' || !(spacing > 0.0) || !std::isfinite(spacing))
    fail(ErrorCode::bad_header, "bad spacing '" + spacing_text + "' in " + path.string());

  const auto count = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  const std::size_t available = bytes.size() - eol - 1;
  if (available < count * 4)
    fail(ErrorCode::truncated, path.string() + " holds " + std::to_string(available) +
                                   " payload bytes, expected " + std::to_string(count * 4));
  if (available > count * 4)
    fail(ErrorCode::trailing_data, path.string() + " has bytes past the payload");

  std::vector<double> data(count);
  const auto* p = reinterpret_cast<const unsigned char*>(bytes.data() + eol + 1);
  for (std::size_t i = 0; i < count; ++i, p += 4) {
    const std::uint32_t bits = std::uint32_t{p[0]} | (std::uint32_t{p[1]} << 8) |
                               (std::uint32_t{p[2]} << 16) | (std::uint32_t{p[3]} << 24);
    const auto f = std::bit_cast<float>(bits);
    if (!std::isfinite(f))
      fail(ErrorCode::non_finite, "sample " + std::to_string(i) + " of " + path.string() +
                                      " is NaN or Inf");
    data[i] = f;
  }
  return HeightField(static_cast<int>(width), static_cast<int>(height), spacing, std::move(data));
}

HeightField read_ascii_matrix(const std::filesystem::path& path, double spacing_um) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::io, "cannot open " + path.string());
  std::vector<double> data;
  int width = -1;
  int height = 0;
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream row(line);
    int count = 0;
    std::string token;
    while (row >> token) {
      char* end = nullptr;
      const double v = std::strtod(token.c_str(), &end);
      if (end == token.c_str() || *end != '\0')
        fail(ErrorCode::bad_header, "not a number: '" + token + "' in " + path.string());
      data.push_back(v);
      ++count;
    }
    if (width < 0) width = count;
    if (count != width)
      fail(ErrorCode::size_mismatch, "ragged row " + std::to_string(height + 1) + " in " +
                                         path.string());
    ++height;
  }
  if (height == 0) fail(ErrorCode::truncated, path.string() + " contains no rows");
  return HeightField(width, height, spacing_um, std::move(data));
}

}  // namespace surftex
