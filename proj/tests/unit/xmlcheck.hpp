#ifndef CURV_XMLCHECK_HPP
#define CURV_XMLCHECK_HPP

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace curvtest {

/// Minimal well-formedness scan: every open tag is closed in order,
/// attributes are quoted, exactly one root element.
inline bool xmlWellFormed(const std::string& path, std::string* error = nullptr) {
  std::ifstream in(path);
  if (!in) {
    if (error) *error = "cannot open " + path;
    return false;
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  const std::string text = ss.str();

  auto fail = [&](const std::string& msg) {
    if (error) *error = msg;
    return false;
  };

  std::vector<std::string> stack;
  int rootCount = 0;
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] != '<') {
      ++i;
      continue;
    }
    const std::size_t end = text.find('>', i);
    if (end == std::string::npos) return fail("unterminated tag");
    std::string tag = text.substr(i + 1, end - i - 1);
    i = end + 1;
    if (tag.empty()) return fail("empty tag");
    if (tag.front() == '?') continue; // declaration
    if (tag.front() == '!') continue; // comment/doctype
    if (tag.front() == '/') {
      const std::string name = tag.substr(1);
      if (stack.empty() || stack.back() != name)
        return fail("mismatched closing tag " + name);
      stack.pop_back();
      continue;
    }
    const bool selfClosing = tag.back() == '/';
    if (selfClosing) tag.pop_back();
    const std::size_t space = tag.find_first_of(" \t\n");
    const std::string name = space == std::string::npos ? tag : tag.substr(0, space);
    if (name.empty()) return fail("nameless tag");
    // quoted attributes: count quotes; must be even
    long quotes = 0;
    for (char c : tag)
      if (c == '"') ++quotes;
    if (quotes % 2) return fail("unbalanced attribute quotes in " + name);
    if (stack.empty()) {
      if (++rootCount > 1) return fail("multiple root elements");
    }
    if (!selfClosing) stack.push_back(name);
  }
  if (!stack.empty()) return fail("unclosed tag " + stack.back());
  return rootCount == 1;
}

} // namespace curvtest

#endif
