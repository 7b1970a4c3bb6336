#pragma once

// Lenient HTML parser producing a small DOM. It recovers from the usual
// real-world damage (unclosed tags, stray end tags, unquoted attributes) the
// way browsers roughly do, but it is not a conforming HTML5 tree builder.

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace uac::html {

struct Attribute {
  std::string name;  // lowercased
  std::string value;
};

class Node {
 public:
  enum class Kind { document, element, text, comment };

  Node(Kind kind, std::string name_or_text);

  Kind kind() const { return kind_; }
  bool is_element() const { return kind_ == Kind::element; }
  bool is_text() const { return kind_ == Kind::text; }

  // Lowercased tag name for elements, empty otherwise.
  const std::string& tag() const { return tag_; }
  // Character data for text and comment nodes.
  const std::string& text() const { return text_; }

  const std::vector<Attribute>& attributes() const { return attributes_; }
  const std::string* attr(std::string_view name) const;
  bool has_attr(std::string_view name) const { return attr(name) != nullptr; }
  // Attribute value or empty string.
  std::string attr_or_empty(std::string_view name) const;
  // Whitespace-separated tokens of the class attribute.
  std::vector<std::string> class_tokens() const;

  const Node* parent() const { return parent_; }
  const std::vector<std::unique_ptr<Node>>& children() const { return children_; }

  // Concatenated descendant text.
  std::string text_content() const;
  // True if a direct text child holds non-whitespace characters.
  bool has_direct_text() const;

  // Document order position among all nodes; used for stable identifiers.
  std::size_t order() const { return order_; }

 private:
  friend class TreeBuilder;

  Kind kind_;
  std::string tag_;
  std::string text_;
  std::vector<Attribute> attributes_;
  Node* parent_ = nullptr;
  std::vector<std::unique_ptr<Node>> children_;
  std::size_t order_ = 0;
};

class Document {
 public:
  explicit Document(std::unique_ptr<Node> root);

  const Node& root() const { return *root_; }
  const Node* element_by_id(std::string_view id) const;
  // First element with the given tag in document order.
  const Node* first(std::string_view tag) const;
  std::vector<const Node*> elements_by_tag(std::string_view tag) const;

 private:
  std::unique_ptr<Node> root_;
  std::unordered_map<std::string, const Node*> ids_;
};

struct ParseLimits {
  std::size_t max_depth = 512;
};

// Throws MalformedDocument for binary input or nesting beyond the limit.
Document parse(std::string_view html, const ParseLimits& limits = {});

// Decodes character references (&amp;, &#160;, &#x2014;, ...).
std::string decode_entities(std::string_view text);

// Pre-order walk over elements below (and including) `node`.
void for_each_element(const Node& node, const std::function<void(const Node&)>& visit);

std::string to_lower(std::string_view s);
std::string_view trim(std::string_view s);
bool iequals(std::string_view a, std::string_view b);
bool icontains(std::string_view haystack, std::string_view needle);

}  // namespace uac::html
