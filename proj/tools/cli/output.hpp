#pragma once

#include <filesystem>
#include <functional>
#include <vector>

namespace surftex::cli {

/// Collects the outputs of one command. Each file is written to a temporary
/// sibling first; commit() renames them all into place. If commit() is never
/// reached, or fails halfway, every temporary and every already renamed
/// output is removed.
class OutputSet {
 public:
  OutputSet() = default;
  OutputSet(const OutputSet&) = delete;
  OutputSet& operator=(const OutputSet&) = delete;
  ~OutputSet();

  /// Runs `write` on a temporary path that becomes `target` on commit.
  void stage(const std::filesystem::path& target,
             const std::function<void(const std::filesystem::path&)>& write);
  void commit();

 private:
  struct Entry {
    std::filesystem::path target;
    std::filesystem::path temp;
  };
  std::vector<Entry> entries_;
  std::vector<std::filesystem::path> committed_;
  bool done_ = false;
};

}  // namespace surftex::cli
