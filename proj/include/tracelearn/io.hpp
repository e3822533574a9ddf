#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

namespace tracelearn {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::filesystem::path& path);

// Writes to "<path>.tmp" in the same directory, then renames over the target
// so concurrent readers never observe a partial file.
void write_file_atomic(const std::filesystem::path& path,
                       std::string_view content);

}  // namespace tracelearn
