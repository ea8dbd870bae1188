#pragma once

#include <algorithm>
#include <string>
#include <vector>

namespace grover {

struct Check {
  std::string name;
  bool passed = false;
  double residual = 0.0;
};

struct VerificationReport {
  std::vector<Check> checks;

  void add(std::string name, double residual, double tol) {
    checks.push_back({std::move(name), residual <= tol, residual});
  }
  void add_flag(std::string name, bool passed) {
    checks.push_back({std::move(name), passed, 0.0});
  }

  bool passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
  }

  const Check* find(const std::string& name) const {
    for (const auto& c : checks)
      if (c.name == name) return &c;
    return nullptr;
  }

  bool passed(const std::string& name) const {
    const Check* c = find(name);
    return c != nullptr && c->passed;
  }
};

}  // namespace grover
