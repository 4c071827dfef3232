#ifndef IFN_SIGTEXT_HPP
#define IFN_SIGTEXT_HPP

#include <cctype>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ifn/core.hpp"
#include "ifn/error.hpp"

// Signature text grammar:
//
//   signature := term ( '+' term )*         whitespace ignored around tokens
//   term      := [ integer ] cycle
//   cycle     := compact | extended
//   compact   := letter+                    one node per letter
//   extended  := '(' ident ( ',' ident )* ')'
//   integer   := [1-9][0-9]*                omitted means 1

namespace ifn {

namespace detail {

class SignatureParser {
 public:
  explicit SignatureParser(std::string_view text) : text_(text) {}

  std::vector<RawTerm> parse() {
    skip_space();
    if (pos_ == text_.size()) throw Error(ErrorCode::EmptySignature, "signature text is blank");
    std::vector<RawTerm> terms;
    terms.push_back(term());
    skip_space();
    while (pos_ < text_.size()) {
      if (text_[pos_] != '+') fail("expected '+' between terms");
      ++pos_;
      skip_space();
      terms.push_back(term());
      skip_space();
    }
    return terms;
  }

 private:
  static bool is_letter(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
  static bool is_digit(char c) { return c >= '0' && c <= '9'; }

  [[noreturn]] void fail(const std::string& what) const { throw SyntaxError(pos_, what); }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  RawTerm term() {
    Coefficient coefficient = 1;
    if (pos_ < text_.size() && is_digit(text_[pos_])) {
      if (text_[pos_] == '0') fail("coefficient must start with a nonzero digit");
      const std::size_t start = pos_;
      coefficient = 0;
      while (pos_ < text_.size() && is_digit(text_[pos_])) {
        const int d = text_[pos_] - '0';
        if (coefficient > (std::numeric_limits<Coefficient>::max() - d) / 10) {
          pos_ = start;
          fail("coefficient too large");
        }
        coefficient = coefficient * 10 + d;
        ++pos_;
      }
      skip_space();
    }
    if (pos_ == text_.size()) fail("expected a cycle");
    std::vector<NodeId> nodes;
    const std::size_t cycle_start = pos_;
    if (text_[pos_] == '(') {
      ++pos_;
      skip_space();
      nodes.push_back(ident());
      skip_space();
      while (pos_ < text_.size() && text_[pos_] == ',') {
        ++pos_;
        skip_space();
        nodes.push_back(ident());
        skip_space();
      }
      if (pos_ == text_.size() || text_[pos_] != ')') fail("expected ',' or ')'");
      ++pos_;
    } else if (is_letter(text_[pos_])) {
      while (pos_ < text_.size() && is_letter(text_[pos_])) {
        nodes.emplace_back(std::string(1, text_[pos_]));
        ++pos_;
      }
    } else {
      fail("expected a cycle");
    }
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      for (std::size_t j = i + 1; j < nodes.size(); ++j) {
        if (nodes[i] == nodes[j]) {
          throw Error(ErrorCode::DuplicateNodeInCycle, "node \"" + nodes[i].label() +
                                                           "\" repeats in cycle at position " +
                                                           std::to_string(cycle_start));
        }
      }
    }
    return RawTerm{coefficient, std::move(nodes)};
  }

  NodeId ident() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && !is_forbidden_label_char(text_[pos_]) &&
           !std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
    if (pos_ == start) fail("expected a node label");
    if (is_digit(text_[start])) {
      pos_ = start;
      fail("node label may not start with a digit");
    }
    return NodeId(std::string(text_.substr(start, pos_ - start)));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline Signature parse_signature(std::string_view text) {
  const auto raw = detail::SignatureParser(text).parse();
  return Signature::normalize(std::span<const RawTerm>(raw));
}

/// Whether every label can be written in the one-letter-per-node form.
inline bool all_letters(std::span<const NodeId> nodes) {
  for (const auto& n : nodes) {
    if (!n.is_letter()) return false;
  }
  return true;
}

/// Renders a node sequence as "abc" or "(n1,n2)".
inline std::string render_nodes(std::span<const NodeId> nodes, bool compact) {
  std::string out;
  if (compact) {
    for (const auto& n : nodes) out += n.label();
    return out;
  }
  out += '(';
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (i) out += ',';
    out += nodes[i].label();
  }
  out += ')';
  return out;
}

inline std::string render_signature(const Signature& sig) {
  const auto nodes = sig.nodes();
  const bool compact = all_letters(nodes);
  std::string out;
  for (std::size_t i = 0; i < sig.terms().size(); ++i) {
    const auto& term = sig.terms()[i];
    if (i) out += " + ";
    if (term.coefficient != 1) out += std::to_string(term.coefficient);
    out += render_nodes(term.cycle.nodes(), compact);
  }
  return out;
}

}  // namespace ifn

#endif  // IFN_SIGTEXT_HPP
