#include "algd/context.hpp"

#include <set>

#include "algd/errors.hpp"

namespace algd {

Context::Context(std::vector<std::string> names) : names_(std::move(names)) {
  if (static_cast<int>(names_.size()) > kMaxVars)
    throw ValidationError("at most " + std::to_string(kMaxVars) + " variables per chart");
  std::set<std::string> seen;
  for (const auto& n : names_) {
    if (n.empty()) throw ValidationError("empty variable name");
    if (!seen.insert(n).second) throw ValidationError("duplicate variable name '" + n + "'");
  }
}

int Context::index_of(const std::string& name) const {
  for (int i = 0; i < dim(); ++i)
    if (names_[i] == name) return i;
  throw UnknownVariable("unknown variable '" + name + "'");
}

bool Context::has(const std::string& name) const {
  for (const auto& n : names_)
    if (n == name) return true;
  return false;
}

ContextPtr make_context(std::vector<std::string> names) {
  return std::make_shared<const Context>(std::move(names));
}

ContextPtr standard_context(int n) {
  std::vector<std::string> names;
  for (int i = 1; i <= n; ++i) names.push_back("x" + std::to_string(i));
  return make_context(std::move(names));
}

void require_same(const ContextPtr& a, const ContextPtr& b) {
  if (a == b) return;
  if (!a || !b || !(*a == *b)) throw ContextMismatch("objects live on different charts");
}

}  // namespace algd
