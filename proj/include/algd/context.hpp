#pragma once

#include <memory>
#include <string>
#include <vector>

namespace algd {

// Hard cap on chart dimension; exponent vectors are fixed-size arrays.
constexpr int kMaxVars = 8;

// Ordered coordinate names of a chart.
class Context {
 public:
  explicit Context(std::vector<std::string> names);

  int dim() const { return static_cast<int>(names_.size()); }
  const std::string& name(int i) const { return names_.at(i); }
  const std::vector<std::string>& names() const { return names_; }
  // throws UnknownVariable
  int index_of(const std::string& name) const;
  bool has(const std::string& name) const;

  bool operator==(const Context& o) const { return names_ == o.names_; }

 private:
  std::vector<std::string> names_;
};

using ContextPtr = std::shared_ptr<const Context>;

ContextPtr make_context(std::vector<std::string> names);
// Context x1..xn.
ContextPtr standard_context(int n);

// throws ContextMismatch unless a and b describe the same coordinates
void require_same(const ContextPtr& a, const ContextPtr& b);

}  // namespace algd
