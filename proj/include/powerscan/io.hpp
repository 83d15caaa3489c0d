#pragma once

#include <charconv>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace powerscan {

class io_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  const char* ws = " \t\r\f\v";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

}  // namespace detail

// Text format: one integer per line; blank lines are skipped and `#` starts
// a comment. Malformed lines are reported with their line number.
inline std::vector<std::int64_t> read_values_text(
    std::istream& in, const std::string& name = "<stream>") {
  std::vector<std::int64_t> values;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view body{line};
    if (const auto hash = body.find('#'); hash != std::string_view::npos)
      body = body.substr(0, hash);
    body = detail::trim(body);
    if (body.empty()) continue;

    std::int64_t value = 0;
    const auto res = std::from_chars(body.data(), body.data() + body.size(),
                                     value);
    if (res.ec != std::errc{} || res.ptr != body.data() + body.size())
      throw io_error(name + ":" + std::to_string(lineno) +
                     ": malformed integer '" + std::string(body) + "'");
    values.push_back(value);
  }
  if (in.bad()) throw io_error(name + ": read failure");
  return values;
}

inline std::vector<std::int64_t> read_values_text_file(
    const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error(path + ": cannot open for reading");
  return read_values_text(in, path);
}

inline void write_values_text(std::ostream& out,
                              const std::vector<std::int64_t>& values) {
  for (const auto v : values) out << v << '\n';
  if (!out) throw io_error("write failure");
}

inline void write_values_text_file(const std::string& path,
                                   const std::vector<std::int64_t>& values) {
  std::ofstream out(path);
  if (!out) throw io_error(path + ": cannot open for writing");
  write_values_text(out, values);
  out.flush();
  if (!out) throw io_error(path + ": write failure");
}

// Binary format: uint64 little-endian count, then that many int64
// little-endian values.
inline void write_values_binary_file(const std::string& path,
                                     const std::vector<std::int64_t>& values) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw io_error(path + ": cannot open for writing");
  const std::uint64_t count = values.size();
  char buf[8];
  std::memcpy(buf, &count, 8);
  out.write(buf, 8);
  for (const auto v : values) {
    std::memcpy(buf, &v, 8);
    out.write(buf, 8);
  }
  out.flush();
  if (!out) throw io_error(path + ": write failure");
}

inline std::vector<std::int64_t> read_values_binary_file(
    const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error(path + ": cannot open for reading");
  char buf[8];
  if (!in.read(buf, 8)) throw io_error(path + ": truncated header");
  std::uint64_t count = 0;
  std::memcpy(&count, buf, 8);
  if (count > (std::uint64_t{1} << 40))
    throw io_error(path + ": implausible value count");
  std::vector<std::int64_t> values(count);
  for (auto& v : values) {
    if (!in.read(buf, 8)) throw io_error(path + ": truncated data");
    std::memcpy(&v, buf, 8);
  }
  return values;
}

}  // namespace powerscan
