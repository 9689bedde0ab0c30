#include "cfaug/io_util.hpp"

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <system_error>

#include "cfaug/error.hpp"
#include "cfaug/random.hpp"

namespace fs = std::filesystem;

namespace cfaug {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error::io("cannot open file for reading: " + path);
  std::ostringstream out;
  out << in.rdbuf();
  if (in.bad()) throw Error::io("read failed: " + path);
  return out.str();
}

void write_file_atomic(const std::string& path, const std::string& content) {
  fs::path target(path);
  if (target.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(target.parent_path(), ec);
    if (ec) throw Error::io("cannot create directory " + target.parent_path().string() + ": " + ec.message());
  }
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error::io("cannot open file for writing: " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw Error::io("write failed: " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) throw Error::io("rename " + tmp.string() + " -> " + path + ": " + ec.message());
}

std::uint64_t file_fingerprint(const std::string& path) {
  return fnv1a64(read_file(path));
}

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc{}) throw Error::io("double formatting failed");
  return std::string(buf, ptr);
}

}  // namespace cfaug
