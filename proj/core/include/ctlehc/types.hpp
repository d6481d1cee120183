#pragma once

#include <boost/rational.hpp>

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

// Boost before 1.75 recurses forever on rational == integer under the C++20
// rewritten-comparison rules. Exact non-template overloads take precedence.
namespace boost {
#define CTLEHC_RATIONAL_EQ(I)                                                                               \
  inline bool operator==(const rational<std::int64_t>& a, I b) { return a == rational<std::int64_t>(b); } \
  inline bool operator==(I b, const rational<std::int64_t>& a) { return a == rational<std::int64_t>(b); } \
  inline bool operator!=(const rational<std::int64_t>& a, I b) { return !(a == rational<std::int64_t>(b)); } \
  inline bool operator!=(I b, const rational<std::int64_t>& a) { return !(a == rational<std::int64_t>(b)); }
CTLEHC_RATIONAL_EQ(int)
CTLEHC_RATIONAL_EQ(long)
CTLEHC_RATIONAL_EQ(long long)
#undef CTLEHC_RATIONAL_EQ
}  // namespace boost

namespace ctlehc {

using Value = boost::rational<std::int64_t>;

std::string value_str(const Value& v);

struct SourceSpan {
  int line = 0;
  int col = 0;
  int end_line = 0;
  int end_col = 0;
};

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& msg, SourceSpan span);
  const SourceSpan& span() const { return span_; }

 private:
  SourceSpan span_;
};

enum class SortKind { Bool, Int, Rat, Loc };

class Sort {
 public:
  Sort() = default;
  static Sort boolean();
  static Sort integer();
  static Sort rational();
  static Sort location(std::vector<std::string> labels);

  SortKind kind() const { return kind_; }
  bool numeric() const { return kind_ == SortKind::Int || kind_ == SortKind::Rat; }
  const std::vector<std::string>& labels() const;
  std::optional<std::size_t> label_index(std::string_view label) const;
  std::string str() const;

  friend bool operator==(const Sort& a, const Sort& b);

 private:
  SortKind kind_ = SortKind::Bool;
  std::shared_ptr<const std::vector<std::string>> labels_;
};

// Identity is (name, prime, copy). The sort travels along for typing.
struct Var {
  std::string name;
  Sort sort;
  int prime = 0;
  int copy = -1;

  std::string display() const;
  Var primed(int by = 1) const;
  Var with_prime(int p) const;
  Var copied(int i) const;
  Var base() const;

  friend bool operator==(const Var& a, const Var& b) {
    return a.name == b.name && a.prime == b.prime && a.copy == b.copy;
  }
  friend bool operator<(const Var& a, const Var& b) {
    if (a.name != b.name) return a.name < b.name;
    if (a.copy != b.copy) return a.copy < b.copy;
    return a.prime < b.prime;
  }
};

std::vector<Var> primed_all(const std::vector<Var>& vs, int by = 1);
std::vector<Var> copied_all(const std::vector<Var>& vs, int i);

// Render a value according to its sort (labels by name, bools as true/false).
std::string value_str(const Value& v, const Sort& s);

}  // namespace ctlehc
