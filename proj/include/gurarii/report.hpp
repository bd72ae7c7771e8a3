#pragma once

// A list of exact checks, each with the bound being checked in words, the
// bound's value and the computed value.

#include <string>
#include <vector>

#include "gurarii/exactlin.hpp"

namespace gurarii {

struct Check {
  std::string name;
  std::string bound;     // e.g. "||F o i' - j' o T|| = 0"
  std::string claimed;   // the bound's right-hand side
  std::string computed;  // the computed left-hand side
  bool pass = false;
};

class Report {
 public:
  /// computed <= claimed
  bool le(std::string name, std::string bound, const Rat& computed, const Rat& claimed);
  /// computed < claimed
  bool lt(std::string name, std::string bound, const Rat& computed, const Rat& claimed);
  /// computed == claimed
  bool eq(std::string name, std::string bound, const Rat& computed, const Rat& claimed);
  /// A yes/no check, recorded as claimed "true".
  bool holds(std::string name, std::string bound, bool ok);

  void note(std::string text) { notes_.push_back(std::move(text)); }
  void merge(const Report& other, const std::string& prefix = "");

  bool pass() const;
  const std::vector<Check>& checks() const { return checks_; }
  const std::vector<std::string>& notes() const { return notes_; }
  /// Names of failed checks, for messages.
  std::vector<std::string> failures() const;

 private:
  std::vector<Check> checks_;
  std::vector<std::string> notes_;
};

}  // namespace gurarii
