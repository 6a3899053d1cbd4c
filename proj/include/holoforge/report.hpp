#pragma once

#include <chrono>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "holoforge/matrix.hpp"

namespace holoforge {

namespace detail {

template <typename T>
std::string show(const T& v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

inline std::string show(bool v) { return v ? "true" : "false"; }
inline std::string show(const std::string& v) { return v; }
inline std::string show(const Matrix& m) { return m.serialize(); }

template <typename A, typename B>
std::string show(const std::pair<A, B>& v) {
  return "(" + show(v.first) + ", " + show(v.second) + ")";
}

template <typename T>
std::string show(const std::vector<T>& v) {
  std::ostringstream os;
  os << '[';
  for (size_t i = 0; i < v.size(); ++i) os << (i ? " " : "") << show(v[i]);
  os << ']';
  return os.str();
}

}  // namespace detail

struct Assertion {
  std::string name;
  std::string expected;
  std::string actual;
  bool pass = false;
};

struct RunReport {
  std::string command;
  std::vector<std::pair<std::string, std::string>> inputs;
  std::vector<Assertion> assertions;
  double wall_seconds = 0.0;

  bool pass() const {
    for (const Assertion& a : assertions)
      if (!a.pass) return false;
    return true;
  }

  void input(std::string key, std::string value) {
    inputs.emplace_back(std::move(key), std::move(value));
  }

  template <typename T, typename U>
  void expect_eq(std::string name, const T& expected, const U& actual) {
    Assertion a;
    a.name = std::move(name);
    a.expected = detail::show(expected);
    a.actual = detail::show(actual);
    a.pass = (a.expected == a.actual);
    assertions.push_back(std::move(a));
  }

  void expect_true(std::string name, bool condition, std::string detail_text = "") {
    Assertion a;
    a.name = std::move(name);
    a.expected = "true";
    a.actual = condition ? "true" : (detail_text.empty() ? "false" : "false: " + detail_text);
    a.pass = condition;
    assertions.push_back(std::move(a));
  }

  void note(std::string name, std::string value) {
    Assertion a;
    a.name = std::move(name);
    a.expected = value;
    a.actual = std::move(value);
    a.pass = true;
    assertions.push_back(std::move(a));
  }

  std::string text() const {
    std::ostringstream os;
    os << "== " << command << " ==\n";
    for (const auto& [k, v] : inputs) os << "input " << k << ": " << v << '\n';
    for (const Assertion& a : assertions) {
      os << (a.pass ? "  ok   " : "  FAIL ") << a.name;
      if (!a.pass) os << "  expected: " << a.expected << "  actual: " << a.actual;
      os << '\n';
    }
    os << (pass() ? "PASS" : "FAIL") << " (" << assertions.size() << " assertions, " << wall_seconds
       << "s)\n";
    return os.str();
  }

  nlohmann::json json() const {
    nlohmann::json j;
    j["command"] = command;
    j["inputs"] = nlohmann::json::object();
    for (const auto& [k, v] : inputs) j["inputs"][k] = v;
    j["assertions"] = nlohmann::json::array();
    for (const Assertion& a : assertions)
      j["assertions"].push_back(
          {{"name", a.name}, {"expected", a.expected}, {"actual", a.actual}, {"pass", a.pass}});
    j["pass"] = pass();
    j["wall_seconds"] = wall_seconds;
    return j;
  }
};

class WallTimer {
 public:
  WallTimer() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

}  // namespace holoforge
