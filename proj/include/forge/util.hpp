#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace forge {

// Single error type for the whole library; the CLI maps it to a nonzero exit.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

[[noreturn]] void fail(const std::string& msg);

// Worker-thread budget: BITEXT_FORGE_THREADS, 0 or unset = auto.
unsigned worker_threads();

std::string read_file(const std::filesystem::path& path);

// Writes to a sibling temp file and renames into place, so a failed run
// never leaves a partial artifact at the target path.
void atomic_write_file(const std::filesystem::path& path, std::string_view contents);

std::vector<std::string> split_lines(std::string_view text);

bool valid_utf8(std::string_view s);

std::string format_double(double v);

}  // namespace forge
