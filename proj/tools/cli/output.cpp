#include "cli/output.hpp"

#include <system_error>

#include "surftex/error.hpp"

namespace surftex::cli {

OutputSet::~OutputSet() {
  if (done_) return;
  std::error_code ec;
  for (const auto& e : entries_) std::filesystem::remove(e.temp, ec);
  for (const auto& p : committed_) std::filesystem::remove(p, ec);
}

void OutputSet::stage(const std::filesystem::path& target,
                      const std::function<void(const std::filesystem::path&)>& write) {
  auto temp = target;
  temp += ".partial";
  entries_.push_back({target, temp});
  write(temp);
}

void OutputSet::commit() {
  for (const auto& e : entries_) {
    std::error_code ec;
    std::filesystem::rename(e.temp, e.target, ec);
    if (ec) fail(ErrorCode::io, "cannot move output into place: " + e.target.string());
    committed_.push_back(e.target);
  }
  done_ = true;
}

}  // namespace surftex::cli
