#pragma once

// Warning channel shared by the solver and its backends. Emitted as
// `warn key=value` lines; safe to use from concurrent recursion branches.

#include <cstdint>
#include <map>
#include <mutex>
#include <ostream>
#include <string>
#include <vector>

namespace stmwis {

class Diagnostics {
 public:
  void warn(const std::string& key, const std::string& value) {
    std::lock_guard lock(mu_);
    if (++counts_[key] <= kKeepPerKey) lines_.push_back("warn " + key + "=" + value);
  }

  std::uint64_t count(const std::string& key) const {
    std::lock_guard lock(mu_);
    auto it = counts_.find(key);
    return it == counts_.end() ? 0 : it->second;
  }

  std::map<std::string, std::uint64_t> counts() const {
    std::lock_guard lock(mu_);
    return counts_;
  }

  // Retained lines, then one summary line per key that overflowed.
  void write(std::ostream& out) const {
    std::lock_guard lock(mu_);
    for (const auto& l : lines_) out << l << '\n';
    for (const auto& [k, c] : counts_) {
      if (c > kKeepPerKey) out << "warn " << k << "_total=" << c << '\n';
    }
  }

 private:
  static constexpr std::uint64_t kKeepPerKey = 5;
  mutable std::mutex mu_;
  std::map<std::string, std::uint64_t> counts_;
  std::vector<std::string> lines_;
};

}  // namespace stmwis
