#include "covquiz/atomic_file.hpp"

#include <fstream>
#include <sstream>
#include <system_error>

#include "covquiz/error.hpp"

namespace covquiz {
namespace fs = std::filesystem;

namespace {

fs::path temp_sibling(const fs::path& path) {
  fs::path tmp = path;
  tmp += ".tmp";
  return tmp;
}

void write_raw(const fs::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.close();
  if (!out) throw IoError("failed writing " + path.string());
}

}  // namespace

std::string read_text_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file_atomic(const fs::path& path, std::string_view content) {
  FileBatch batch;
  batch.add(path, std::string(content));
  batch.commit();
}

void FileBatch::add(fs::path path, std::string content) { files_.emplace_back(std::move(path), std::move(content)); }

void FileBatch::commit() {
  std::vector<fs::path> staged;
  auto discard = [&] {
    std::error_code ec;
    for (const auto& p : staged) fs::remove(p, ec);
  };
  try {
    for (const auto& [path, content] : files_) {
      fs::path tmp = temp_sibling(path);
      staged.push_back(tmp);
      write_raw(tmp, content);
    }
  } catch (...) {
    discard();
    throw;
  }
  for (const auto& [path, content] : files_) {
    std::error_code ec;
    fs::rename(temp_sibling(path), path, ec);
    if (ec) {
      discard();
      throw IoError("cannot rename into " + path.string() + ": " + ec.message());
    }
  }
  files_.clear();
}

}  // namespace covquiz
