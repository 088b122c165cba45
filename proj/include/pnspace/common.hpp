// Copyright 2026 The pnspace Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pnspace {

inline constexpr const char* kVersion = "1.0.0";

/// Extended reals use IEEE +inf as the sentinel for +∞.
inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Bisection tolerance for root finding.
inline constexpr double kTolRoot = 1e-9;
/// Proper-tail tolerance for exact backends.
inline constexpr double kTolTail = 1e-9;
/// Proper-tail tolerance for sampled checks.
inline constexpr double kTolTailSampled = 1e-6;
/// Unboundedness probe used by quasi-inverses of analytic profiles.
inline constexpr double kUnboundedProbe = 1e9;

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A documented hypothesis of a check does not hold.
/// `hypothesis()` names the failed check so callers can report it.
class PreconditionError : public std::logic_error {
 public:
  PreconditionError(std::string hypothesis, const std::string& what)
      : std::logic_error(hypothesis + ": " + what),
        hypothesis_(std::move(hypothesis)) {}
  const std::string& hypothesis() const noexcept { return hypothesis_; }

 private:
  std::string hypothesis_;
};

/// Object construction rejected (degenerate inputs, parameter domains,
/// hypothesis violations found while validating a space).
class ConstructionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Structured outcome of a numerical check.
///
/// Metrics keep insertion order so that serialized reports are stable.
struct Verdict {
  std::string check;
  bool pass = false;
  std::string message;
  std::vector<std::pair<std::string, double>> metrics;
  std::vector<std::string> witnesses;
  std::vector<std::pair<double, double>> trajectory;  // (n, d_S)
  std::optional<std::uint64_t> seed;
  std::size_t samples = 0;

  Verdict() = default;
  Verdict(std::string name, bool ok) : check(std::move(name)), pass(ok) {}

  Verdict& metric(const std::string& key, double value) {
    for (auto& kv : metrics) {
      if (kv.first == key) {
        kv.second = value;
        return *this;
      }
    }
    metrics.emplace_back(key, value);
    return *this;
  }

  std::optional<double> get(const std::string& key) const {
    for (const auto& kv : metrics)
      if (kv.first == key) return kv.second;
    return std::nullopt;
  }

  Verdict& witness(std::string w) {
    witnesses.push_back(std::move(w));
    return *this;
  }
};

namespace detail {

inline std::string fmt_double(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

template <typename... Args>
std::string concat(const Args&... args) {
  std::ostringstream os;
  os.precision(12);
  (os << ... << args);
  return os.str();
}

inline bool in_unit(double v) { return v >= 0.0 && v <= 1.0; }

inline std::vector<double> linspace(double a, double b, std::size_t n) {
  std::vector<double> out;
  out.reserve(n);
  if (n == 1) {
    out.push_back(a);
    return out;
  }
  for (std::size_t i = 0; i < n; ++i)
    out.push_back(a + (b - a) * static_cast<double>(i) /
                          static_cast<double>(n - 1));
  return out;
}

inline std::vector<double> logspace(double a, double b, std::size_t n) {
  std::vector<double> out;
  for (double e : linspace(std::log10(a), std::log10(b), n))
    out.push_back(std::pow(10.0, e));
  return out;
}

}  // namespace detail
}  // namespace pnspace
