#pragma once

#include <atomic>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

namespace forge::test {

// Unique scratch directory, removed on destruction.
struct TempDir {
  std::filesystem::path path;

  TempDir() {
    static std::atomic<unsigned> counter{0};
    path = std::filesystem::temp_directory_path() /
           ("forge_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  std::filesystem::path file(const std::string& name, const std::string& contents) const {
    std::filesystem::path p = path / name;
    std::ofstream out(p, std::ios::binary);
    out << contents;
    return p;
  }
};

inline std::string read_all(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline std::vector<std::string> random_tokens(std::mt19937& rng, std::size_t min_len,
                                              std::size_t max_len, std::size_t vocab) {
  std::uniform_int_distribution<std::size_t> len_dist(min_len, max_len);
  std::uniform_int_distribution<std::size_t> word_dist(0, vocab - 1);
  std::vector<std::string> out(len_dist(rng));
  for (auto& tok : out) tok = "w" + std::to_string(word_dist(rng));
  return out;
}

}  // namespace forge::test
