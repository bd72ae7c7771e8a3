#include "gurarii/report.hpp"

namespace gurarii {

namespace {

bool add(std::vector<Check>& out, std::string name, std::string bound, const Rat& computed, const Rat& claimed,
         bool ok) {
  out.push_back(Check{std::move(name), std::move(bound), to_string(claimed), to_string(computed), ok});
  return ok;
}

}  // namespace

bool Report::le(std::string name, std::string bound, const Rat& computed, const Rat& claimed) {
  return add(checks_, std::move(name), std::move(bound), computed, claimed, computed <= claimed);
}

bool Report::lt(std::string name, std::string bound, const Rat& computed, const Rat& claimed) {
  return add(checks_, std::move(name), std::move(bound), computed, claimed, computed < claimed);
}

bool Report::eq(std::string name, std::string bound, const Rat& computed, const Rat& claimed) {
  return add(checks_, std::move(name), std::move(bound), computed, claimed, computed == claimed);
}

bool Report::holds(std::string name, std::string bound, bool ok) {
  checks_.push_back(Check{std::move(name), std::move(bound), "true", ok ? "true" : "false", ok});
  return ok;
}

void Report::merge(const Report& other, const std::string& prefix) {
  for (Check c : other.checks_) {
    c.name = prefix + c.name;
    checks_.push_back(std::move(c));
  }
  for (const auto& n : other.notes_) notes_.push_back(prefix + n);
}

bool Report::pass() const {
  for (const auto& c : checks_) {
    if (!c.pass) return false;
  }
  return true;
}

std::vector<std::string> Report::failures() const {
  std::vector<std::string> out;
  for (const auto& c : checks_) {
    if (!c.pass) out.push_back(c.name + ": " + c.bound + " (computed " + c.computed + ", bound " + c.claimed + ")");
  }
  return out;
}

}  // namespace gurarii
