#include <algorithm>
#include <bit>
#include <cstring>
#include <fstream>
#include <functional>
#include <numeric>
#include <sstream>

#include "cripser/io.hpp"

namespace cripser {

static_assert(std::endian::native == std::endian::little,
              "binary readers assume a little-endian host");

std::size_t Tensor::size() const {
  return std::accumulate(shape.begin(), shape.end(), std::size_t{1}, std::multiplies<>());
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return std::move(ss).str();
}

void write_file(const std::filesystem::path& path, std::string_view bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error("write failed: " + path.string());
}

namespace {

constexpr std::string_view kNpyMagic = "\x93NUMPY";

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\n'))
    s.remove_suffix(1);
  return s;
}

// Value text following `'key':` in the header dictionary.
std::string_view header_value(std::string_view header, std::string_view key) {
  const std::string quoted1 = "'" + std::string(key) + "'";
  const std::string quoted2 = "\"" + std::string(key) + "\"";
  auto pos = header.find(quoted1);
  std::size_t klen = quoted1.size();
  if (pos == std::string_view::npos) {
    pos = header.find(quoted2);
    klen = quoted2.size();
  }
  if (pos == std::string_view::npos) throw FormatError("NPY header lacks '" + std::string(key) + "'");
  auto colon = header.find(':', pos + klen);
  if (colon == std::string_view::npos) throw FormatError("malformed NPY header");
  std::string_view rest = header.substr(colon + 1);
  rest = trim(rest);
  std::size_t end = 0;
  if (!rest.empty() && rest.front() == '(') {
    end = rest.find(')');
    if (end == std::string_view::npos) throw FormatError("malformed NPY shape");
    return rest.substr(0, end + 1);
  }
  if (!rest.empty() && (rest.front() == '\'' || rest.front() == '"')) {
    end = rest.find(rest.front(), 1);
    if (end == std::string_view::npos) throw FormatError("malformed NPY header string");
    return rest.substr(1, end - 1);
  }
  end = rest.find_first_of(",}");
  return trim(rest.substr(0, end));
}

std::vector<std::size_t> parse_shape(std::string_view s) {
  if (s.size() < 2 || s.front() != '(' || s.back() != ')') throw FormatError("malformed NPY shape");
  s = s.substr(1, s.size() - 2);
  std::vector<std::size_t> shape;
  while (true) {
    s = trim(s);
    if (s.empty()) break;
    const auto comma = s.find(',');
    const std::string_view tok = trim(s.substr(0, comma));
    if (tok.empty()) break;
    std::size_t v = 0;
    for (char ch : tok) {
      if (ch < '0' || ch > '9') throw FormatError("malformed NPY shape entry '" + std::string(tok) + "'");
      v = v * 10 + static_cast<std::size_t>(ch - '0');
    }
    shape.push_back(v);
    if (comma == std::string_view::npos) break;
    s = s.substr(comma + 1);
  }
  return shape;
}

template <class T>
void widen(std::string_view payload, std::vector<double>& out) {
  for (std::size_t i = 0; i < out.size(); ++i) {
    T v;
    std::memcpy(&v, payload.data() + i * sizeof(T), sizeof(T));
    out[i] = static_cast<double>(v);
  }
}

}  // namespace

Tensor parse_npy(std::string_view bytes) {
  if (bytes.size() < 10 || bytes.substr(0, 6) != kNpyMagic)
    throw FormatError("not an NPY file (bad magic)");
  const auto major = static_cast<unsigned char>(bytes[6]);
  std::size_t header_len = 0;
  std::size_t offset = 0;
  if (major == 1) {
    std::uint16_t len;
    std::memcpy(&len, bytes.data() + 8, 2);
    header_len = len;
    offset = 10;
  } else if (major == 2 || major == 3) {
    if (bytes.size() < 12) throw FormatError("truncated NPY header");
    std::uint32_t len;
    std::memcpy(&len, bytes.data() + 8, 4);
    header_len = len;
    offset = 12;
  } else {
    throw FormatError("unsupported NPY version " + std::to_string(major));
  }
  if (bytes.size() < offset + header_len) throw FormatError("truncated NPY header");
  const std::string_view header = bytes.substr(offset, header_len);

  const std::string_view descr = header_value(header, "descr");
  if (header_value(header, "fortran_order") != "False")
    throw FormatError("Fortran-ordered NPY arrays are not supported");

  Tensor t;
  t.shape = parse_shape(header_value(header, "shape"));
  t.data.resize(t.size());

  if (descr.size() < 3) throw FormatError("unsupported NPY dtype '" + std::string(descr) + "'");
  const char order = descr[0];
  const std::string_view kind = descr.substr(1);
  const bool single_byte = kind == "u1" || kind == "i1" || kind == "b1";
  if (order != '<' && !(single_byte && (order == '|' || order == '<')))
    throw FormatError("unsupported NPY dtype '" + std::string(descr) + "' (need little-endian)");

  std::size_t item = 0;
  if (kind == "f8" || kind == "i8" || kind == "u8") item = 8;
  else if (kind == "f4" || kind == "i4" || kind == "u4") item = 4;
  else if (kind == "i2" || kind == "u2") item = 2;
  else if (single_byte) item = 1;
  else throw FormatError("unsupported NPY dtype '" + std::string(descr) + "'");

  const std::size_t data_off = offset + header_len;
  if (bytes.size() - data_off < t.data.size() * item) throw FormatError("truncated NPY payload");
  const std::string_view payload = bytes.substr(data_off);

  if (kind == "f8") widen<double>(payload, t.data);
  else if (kind == "f4") widen<float>(payload, t.data);
  else if (kind == "i8") widen<std::int64_t>(payload, t.data);
  else if (kind == "u8") widen<std::uint64_t>(payload, t.data);
  else if (kind == "i4") widen<std::int32_t>(payload, t.data);
  else if (kind == "u4") widen<std::uint32_t>(payload, t.data);
  else if (kind == "i2") widen<std::int16_t>(payload, t.data);
  else if (kind == "u2") widen<std::uint16_t>(payload, t.data);
  else if (kind == "i1") widen<std::int8_t>(payload, t.data);
  else widen<std::uint8_t>(payload, t.data);
  return t;
}

Tensor read_npy_array(const std::filesystem::path& path) {
  try {
    return parse_npy(read_file(path));
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

std::string serialize_npy(const Tensor& t) {
  if (t.data.size() != t.size()) throw std::invalid_argument("tensor data does not match shape");
  std::string shape = "(";
  for (std::size_t i = 0; i < t.shape.size(); ++i) {
    if (i) shape += ", ";
    shape += std::to_string(t.shape[i]);
  }
  if (t.shape.size() == 1) shape += ",";
  shape += ")";
  std::string header = "{'descr': '<f8', 'fortran_order': False, 'shape': " + shape + ", }";

  // Pad with spaces and a final newline so the data starts on a 64-byte boundary.
  std::size_t prefix = 10;
  std::size_t total = prefix + header.size() + 1;
  if ((total + 63) / 64 * 64 - prefix > 0xffff) prefix = 12;
  total = prefix + header.size() + 1;
  const std::size_t padded = (total + 63) / 64 * 64;
  header.append(padded - total, ' ');
  header.push_back('\n');

  std::string out(kNpyMagic);
  out.push_back(static_cast<char>(prefix == 10 ? 1 : 2));
  out.push_back('\0');
  if (prefix == 10) {
    const auto len = static_cast<std::uint16_t>(header.size());
    out.append(reinterpret_cast<const char*>(&len), 2);
  } else {
    const auto len = static_cast<std::uint32_t>(header.size());
    out.append(reinterpret_cast<const char*>(&len), 4);
  }
  out += header;
  out.append(reinterpret_cast<const char*>(t.data.data()), t.data.size() * sizeof(double));
  return out;
}

void write_npy(const std::filesystem::path& path, const Tensor& t) {
  write_file(path, serialize_npy(t));
}

Image image_from_array(const Tensor& t, double infinity_threshold) {
  if (t.shape.empty() || t.shape.size() > 3)
    throw FormatError("expected a 1-3 dimensional array, got " + std::to_string(t.shape.size()) +
                      " dimensions");
  std::vector<std::size_t> dims(t.shape.rbegin(), t.shape.rend());
  return make_image(t.data, dims, infinity_threshold);
}

Image read_npy(const std::filesystem::path& path, double infinity_threshold) {
  return image_from_array(read_npy_array(path), infinity_threshold);
}

std::vector<std::size_t> array_shape(const Image& img) {
  const GridShape& s = img.shape();
  std::vector<std::size_t> dims{s.nx, s.ny, s.nz};
  dims.resize(static_cast<std::size_t>(img.ndim()));
  return {dims.rbegin(), dims.rend()};
}

Tensor image_to_array(const Image& img) {
  return Tensor{array_shape(img), std::vector<double>(img.values().begin(), img.values().end())};
}

Image read_image(const std::filesystem::path& path, double infinity_threshold) {
  const std::string bytes = read_file(path);
  if (bytes.starts_with(kNpyMagic)) {
    try {
      return image_from_array(parse_npy(bytes), infinity_threshold);
    } catch (const FormatError& e) {
      throw FormatError(path.string() + ": " + e.what());
    }
  }
  if (auto type = dipha_file_type(path)) {
    if (*type != kDiphaImageData)
      throw FormatError(path.string() + ": DIPHA file is not image data");
    return read_dipha_image(path, infinity_threshold);
  }
  throw FormatError(path.string() + ": neither an NPY nor a DIPHA image file");
}

}  // namespace cripser
