#pragma once

#include <string>
#include <utility>
#include <vector>

namespace cspan {

struct Verdict {
  std::string name;
  bool ok = true;
  std::string detail;

  static Verdict pass(std::string name, std::string detail = {}) { return {std::move(name), true, std::move(detail)}; }
  static Verdict fail(std::string name, std::string detail) { return {std::move(name), false, std::move(detail)}; }

  bool operator==(const Verdict&) const = default;
};

inline bool all_ok(const std::vector<Verdict>& vs) {
  for (const auto& v : vs)
    if (!v.ok) return false;
  return true;
}

inline const Verdict* first_failure(const std::vector<Verdict>& vs) {
  for (const auto& v : vs)
    if (!v.ok) return &v;
  return nullptr;
}

}  // namespace cspan
