#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace vptk {

using StateId = std::uint32_t;
using StackId = std::uint32_t;

/// Dense ids for a finite set of names (states, stack symbols).
class NameTable {
 public:
  NameTable() = default;
  explicit NameTable(const std::vector<std::string>& names) {
    for (const auto& n : names) intern(n);
  }

  /// Id of `name`, adding it if new.
  std::uint32_t intern(const std::string& name) {
    auto [it, inserted] =
        index_.try_emplace(name, static_cast<std::uint32_t>(names_.size()));
    if (inserted) names_.push_back(name);
    return it->second;
  }

  /// Adds a new name derived from `base`, priming it until it is unused.
  std::uint32_t fresh(std::string base) {
    while (index_.count(base) != 0) base += '\'';
    return intern(base);
  }

  std::optional<std::uint32_t> find(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  const std::string& name(std::uint32_t id) const { return names_.at(id); }
  std::size_t size() const noexcept { return names_.size(); }
  const std::vector<std::string>& names() const noexcept { return names_; }

  friend bool operator==(const NameTable& a, const NameTable& b) {
    return a.names_ == b.names_;
  }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, std::uint32_t> index_;
};

}  // namespace vptk
