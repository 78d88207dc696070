#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace covquiz {

/// Reads a whole file. Throws IoError.
std::string read_text_file(const std::filesystem::path& path);

/// Writes `content` to a sibling temporary file and renames it over `path`,
/// so readers never observe a partial file. Throws IoError.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

/// Stages several files and renames them into place only after every write
/// succeeded. On failure the staged files are removed and IoError is thrown.
class FileBatch {
 public:
  void add(std::filesystem::path path, std::string content);
  void commit();

 private:
  std::vector<std::pair<std::filesystem::path, std::string>> files_;
};

}  // namespace covquiz
