#include "uac/html.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <utility>

#include "uac/errors.hpp"

namespace uac::html {

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f'; }
bool is_alpha(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }

template <std::size_t N>
bool in(std::string_view tag, const std::array<std::string_view, N>& set) {
  return std::find(set.begin(), set.end(), tag) != set.end();
}

constexpr std::array<std::string_view, 16> kVoid = {
    "area", "base", "br",   "col",  "embed", "hr",     "img",   "input",
    "link", "meta", "param", "source", "track", "wbr", "keygen", "basefont"};

// Content is not markup; entities are not decoded.
constexpr std::array<std::string_view, 6> kRawText = {"script", "style",    "xmp",
                                                      "iframe", "noembed", "noframes"};
// Content is not markup; entities are decoded.
constexpr std::array<std::string_view, 2> kEscapableRawText = {"textarea", "title"};

constexpr std::array<std::string_view, 29> kClosesParagraph = {
    "address", "article", "aside",   "blockquote", "details", "div",  "dl",   "fieldset",
    "figcaption", "figure", "footer", "form",      "h1",      "h2",   "h3",   "h4",
    "h5",      "h6",      "header",  "hgroup",     "hr",      "main", "menu", "nav",
    "ol",      "p",       "pre",     "section",    "table"};

constexpr std::array<std::string_view, 10> kButtonScope = {
    "button", "table", "td", "th", "caption", "html", "object", "template", "marquee", "applet"};

constexpr std::array<std::string_view, 6> kHeadings = {"h1", "h2", "h3", "h4", "h5", "h6"};

void append_utf8(std::string& out, unsigned long cp) {
  if (cp == 0 || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) cp = 0xFFFD;
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

const std::unordered_map<std::string_view, unsigned long>& named_entities() {
  static const std::unordered_map<std::string_view, unsigned long> table = {
      {"amp", '&'},      {"lt", '<'},       {"gt", '>'},       {"quot", '"'},
      {"apos", '\''},    {"nbsp", 0xA0},    {"copy", 0xA9},    {"reg", 0xAE},
      {"trade", 0x2122}, {"hellip", 0x2026}, {"mdash", 0x2014}, {"ndash", 0x2013},
      {"laquo", 0xAB},   {"raquo", 0xBB},   {"lsquo", 0x2018}, {"rsquo", 0x2019},
      {"ldquo", 0x201C}, {"rdquo", 0x201D}, {"bull", 0x2022},  {"middot", 0xB7},
      {"times", 0xD7},   {"rarr", 0x2192},  {"larr", 0x2190},  {"euro", 0x20AC},
      {"deg", 0xB0},     {"sect", 0xA7},    {"shy", 0xAD},     {"thinsp", 0x2009},
      {"ensp", 0x2002},  {"emsp", 0x2003},  {"zwnj", 0x200C},  {"zwj", 0x200D}};
  return table;
}

}  // namespace

Node::Node(Kind kind, std::string name_or_text) : kind_(kind) {
  if (kind == Kind::element) {
    tag_ = std::move(name_or_text);
  } else {
    text_ = std::move(name_or_text);
  }
}

const std::string* Node::attr(std::string_view name) const {
  for (const auto& a : attributes_) {
    if (a.name == name) return &a.value;
  }
  return nullptr;
}

std::string Node::attr_or_empty(std::string_view name) const {
  const std::string* v = attr(name);
  return v ? *v : std::string{};
}

std::vector<std::string> Node::class_tokens() const {
  std::vector<std::string> tokens;
  const std::string* cls = attr("class");
  if (!cls) return tokens;
  std::size_t i = 0;
  while (i < cls->size()) {
    while (i < cls->size() && is_space((*cls)[i])) ++i;
    std::size_t start = i;
    while (i < cls->size() && !is_space((*cls)[i])) ++i;
    if (i > start) tokens.emplace_back(cls->substr(start, i - start));
  }
  return tokens;
}

std::string Node::text_content() const {
  if (kind_ == Kind::text) return text_;
  std::string out;
  for (const auto& child : children_) {
    if (child->kind_ == Kind::comment) continue;
    out += child->text_content();
  }
  return out;
}

bool Node::has_direct_text() const {
  for (const auto& child : children_) {
    if (child->is_text() && !trim(child->text_).empty()) return true;
  }
  return false;
}

class TreeBuilder {
 public:
  explicit TreeBuilder(const ParseLimits& limits)
      : limits_(limits), root_(std::make_unique<Node>(Node::Kind::document, std::string{})) {
    root_->order_ = next_order_++;
    stack_.push_back(root_.get());
  }

  void start_tag(std::string tag, std::vector<Attribute> attrs, bool self_closing) {
    if (tag == "html" || tag == "head" || tag == "body") {
      if (Node* open = find_open(tag)) {
        for (auto& a : attrs) {
          if (!open->attr(a.name)) open->attributes_.push_back(std::move(a));
        }
        return;
      }
    }
    apply_implicit_closes(tag);

    auto node = std::make_unique<Node>(Node::Kind::element, tag);
    node->attributes_ = std::move(attrs);
    Node* raw = append(std::move(node));
    if (self_closing || in(tag, kVoid)) return;
    if (stack_.size() >= limits_.max_depth) {
      throw MalformedDocument("element nesting exceeds " + std::to_string(limits_.max_depth) +
                              " levels");
    }
    stack_.push_back(raw);
  }

  void end_tag(std::string_view tag) {
    for (std::size_t i = stack_.size(); i-- > 1;) {
      if (stack_[i]->tag_ == tag) {
        stack_.resize(i);
        return;
      }
    }
    // Stray end tag: ignored.
  }

  void text(std::string data) {
    if (data.empty()) return;
    Node* current = stack_.back();
    if (!current->children_.empty() && current->children_.back()->is_text()) {
      current->children_.back()->text_ += data;
      return;
    }
    append(std::make_unique<Node>(Node::Kind::text, std::move(data)));
  }

  void comment(std::string data) {
    append(std::make_unique<Node>(Node::Kind::comment, std::move(data)));
  }

  std::unique_ptr<Node> finish() { return std::move(root_); }

 private:
  Node* append(std::unique_ptr<Node> node) {
    Node* current = stack_.back();
    node->parent_ = current;
    node->order_ = next_order_++;
    current->children_.push_back(std::move(node));
    return current->children_.back().get();
  }

  Node* find_open(std::string_view tag) {
    for (std::size_t i = stack_.size(); i-- > 1;) {
      if (stack_[i]->tag_ == tag) return stack_[i];
    }
    return nullptr;
  }

  // Pops up to and including the nearest open element in `targets`, unless a
  // `barrier` element is reached first.
  template <std::size_t N, std::size_t M>
  bool close_in_scope(const std::array<std::string_view, N>& targets,
                      const std::array<std::string_view, M>& barriers) {
    for (std::size_t i = stack_.size(); i-- > 1;) {
      const std::string& t = stack_[i]->tag_;
      if (in(t, targets)) {
        stack_.resize(i);
        return true;
      }
      if (in(t, barriers)) return false;
    }
    return false;
  }

  void apply_implicit_closes(const std::string& tag) {
    static constexpr std::array<std::string_view, 1> kP = {"p"};
    static constexpr std::array<std::string_view, 1> kLi = {"li"};
    static constexpr std::array<std::string_view, 7> kListBarrier = {
        "ul", "ol", "menu", "table", "td", "th", "body"};
    static constexpr std::array<std::string_view, 2> kDefinition = {"dd", "dt"};
    static constexpr std::array<std::string_view, 5> kDefinitionBarrier = {
        "dl", "table", "td", "th", "body"};
    static constexpr std::array<std::string_view, 3> kCell = {"td", "th", "tr"};
    static constexpr std::array<std::string_view, 2> kCellOnly = {"td", "th"};
    static constexpr std::array<std::string_view, 4> kSection = {"table", "tbody", "thead",
                                                                 "tfoot"};
    static constexpr std::array<std::string_view, 5> kRowBarrier = {"tr", "table", "tbody",
                                                                    "thead", "tfoot"};
    static constexpr std::array<std::string_view, 6> kSectionTargets = {
        "td", "th", "tr", "tbody", "thead", "tfoot"};
    static constexpr std::array<std::string_view, 1> kTable = {"table"};

    if (in(tag, kClosesParagraph) || tag == "li" || tag == "dd" || tag == "dt") {
      close_in_scope(kP, kButtonScope);
    }
    if (in(tag, kHeadings) && in(stack_.back()->tag_, kHeadings)) stack_.pop_back();

    if (tag == "li") {
      close_in_scope(kLi, kListBarrier);
    } else if (tag == "dd" || tag == "dt") {
      close_in_scope(kDefinition, kDefinitionBarrier);
    } else if (tag == "option") {
      if (stack_.back()->tag_ == "option") stack_.pop_back();
    } else if (tag == "optgroup") {
      if (stack_.back()->tag_ == "option") stack_.pop_back();
      if (stack_.back()->tag_ == "optgroup") stack_.pop_back();
    } else if (tag == "tr") {
      while (close_in_scope(kCell, kSection)) {
      }
    } else if (tag == "td" || tag == "th") {
      while (close_in_scope(kCellOnly, kRowBarrier)) {
      }
    } else if (tag == "tbody" || tag == "thead" || tag == "tfoot") {
      while (close_in_scope(kSectionTargets, kTable)) {
      }
    }
  }

  ParseLimits limits_;
  std::unique_ptr<Node> root_;
  std::vector<Node*> stack_;
  std::size_t next_order_ = 0;
};

namespace {

class Tokenizer {
 public:
  Tokenizer(std::string_view input, TreeBuilder& builder) : in_(input), out_(builder) {}

  void run() {
    while (pos_ < in_.size()) {
      if (in_[pos_] != '<') {
        std::size_t next = in_.find('<', pos_);
        if (next == std::string_view::npos) next = in_.size();
        out_.text(decode_entities(in_.substr(pos_, next - pos_)));
        pos_ = next;
        continue;
      }
      if (starts_with("<!--")) {
        comment();
      } else if (starts_with("</") && pos_ + 2 < in_.size() && is_alpha(in_[pos_ + 2])) {
        end_tag();
      } else if (starts_with("<!") || starts_with("<?") || starts_with("</")) {
        bogus();
      } else if (pos_ + 1 < in_.size() && is_alpha(in_[pos_ + 1])) {
        start_tag();
      } else {
        out_.text("<");
        ++pos_;
      }
    }
  }

 private:
  bool starts_with(std::string_view s) const { return in_.substr(pos_, s.size()) == s; }

  void comment() {
    std::size_t end = in_.find("-->", pos_ + 4);
    if (end == std::string_view::npos) {
      out_.comment(std::string(in_.substr(pos_ + 4)));
      pos_ = in_.size();
      return;
    }
    out_.comment(std::string(in_.substr(pos_ + 4, end - pos_ - 4)));
    pos_ = end + 3;
  }

  void bogus() {
    std::size_t end = in_.find('>', pos_);
    pos_ = end == std::string_view::npos ? in_.size() : end + 1;
  }

  std::string read_name() {
    std::size_t start = pos_;
    while (pos_ < in_.size() && !is_space(in_[pos_]) && in_[pos_] != '>' && in_[pos_] != '/') {
      ++pos_;
    }
    return to_lower(in_.substr(start, pos_ - start));
  }

  void skip_space() {
    while (pos_ < in_.size() && is_space(in_[pos_])) ++pos_;
  }

  void end_tag() {
    pos_ += 2;
    std::string name = read_name();
    bogus();
    out_.end_tag(name);
  }

  void start_tag() {
    ++pos_;
    std::string name = read_name();
    std::vector<Attribute> attrs;
    bool self_closing = false;
    while (true) {
      skip_space();
      if (pos_ >= in_.size()) return;  // truncated tag is dropped
      char c = in_[pos_];
      if (c == '>') {
        ++pos_;
        break;
      }
      if (c == '/') {
        ++pos_;
        if (pos_ < in_.size() && in_[pos_] == '>') {
          self_closing = true;
          ++pos_;
          break;
        }
        continue;
      }
      std::size_t start = pos_;
      while (pos_ < in_.size() && !is_space(in_[pos_]) && in_[pos_] != '=' && in_[pos_] != '>' &&
             !(in_[pos_] == '/' && pos_ > start)) {
        ++pos_;
      }
      std::string attr_name = to_lower(in_.substr(start, pos_ - start));
      skip_space();
      std::string value;
      if (pos_ < in_.size() && in_[pos_] == '=') {
        ++pos_;
        skip_space();
        value = read_attribute_value();
      }
      bool seen = std::any_of(attrs.begin(), attrs.end(),
                              [&](const Attribute& a) { return a.name == attr_name; });
      if (!seen && !attr_name.empty()) attrs.push_back({std::move(attr_name), std::move(value)});
    }

    out_.start_tag(name, std::move(attrs), self_closing);
    if (!self_closing && (in(name, kRawText) || in(name, kEscapableRawText))) {
      raw_text(name, in(name, kEscapableRawText));
    }
  }

  std::string read_attribute_value() {
    if (pos_ >= in_.size()) return {};
    char quote = in_[pos_];
    if (quote == '"' || quote == '\'') {
      std::size_t end = in_.find(quote, pos_ + 1);
      if (end == std::string_view::npos) end = in_.size();
      std::string value = decode_entities(in_.substr(pos_ + 1, end - pos_ - 1));
      pos_ = std::min(end + 1, in_.size());
      return value;
    }
    std::size_t start = pos_;
    while (pos_ < in_.size() && !is_space(in_[pos_]) && in_[pos_] != '>') ++pos_;
    return decode_entities(in_.substr(start, pos_ - start));
  }

  void raw_text(const std::string& tag, bool decode) {
    std::size_t search = pos_;
    std::size_t end = std::string_view::npos;
    while (true) {
      std::size_t candidate = in_.find("</", search);
      if (candidate == std::string_view::npos) break;
      std::size_t after = candidate + 2 + tag.size();
      if (iequals(in_.substr(candidate + 2, tag.size()), tag) &&
          (after >= in_.size() || is_space(in_[after]) || in_[after] == '>' || in_[after] == '/')) {
        end = candidate;
        break;
      }
      search = candidate + 2;
    }
    std::string_view body = in_.substr(pos_, end == std::string_view::npos ? in_.npos : end - pos_);
    out_.text(decode ? decode_entities(body) : std::string(body));
    if (end == std::string_view::npos) {
      pos_ = in_.size();
      out_.end_tag(tag);
      return;
    }
    pos_ = end;
    end_tag();
  }

  std::string_view in_;
  TreeBuilder& out_;
  std::size_t pos_ = 0;
};

}  // namespace

Document::Document(std::unique_ptr<Node> root) : root_(std::move(root)) {
  for_each_element(*root_, [this](const Node& n) {
    if (const std::string* id = n.attr("id"); id && !id->empty()) ids_.try_emplace(*id, &n);
  });
}

const Node* Document::element_by_id(std::string_view id) const {
  auto it = ids_.find(std::string(id));
  return it == ids_.end() ? nullptr : it->second;
}

const Node* Document::first(std::string_view tag) const {
  const Node* found = nullptr;
  for_each_element(*root_, [&](const Node& n) {
    if (!found && n.tag() == tag) found = &n;
  });
  return found;
}

std::vector<const Node*> Document::elements_by_tag(std::string_view tag) const {
  std::vector<const Node*> out;
  for_each_element(*root_, [&](const Node& n) {
    if (n.tag() == tag) out.push_back(&n);
  });
  return out;
}

Document parse(std::string_view html, const ParseLimits& limits) {
  if (html.find('\0') != std::string_view::npos) {
    throw MalformedDocument("input contains NUL bytes; not an HTML text document");
  }
  TreeBuilder builder(limits);
  Tokenizer(html, builder).run();
  return Document(builder.finish());
}

std::string decode_entities(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] != '&') {
      out += text[i++];
      continue;
    }
    std::size_t semi = text.find(';', i + 1);
    if (semi == std::string_view::npos || semi - i > 12) {
      out += text[i++];
      continue;
    }
    std::string_view ref = text.substr(i + 1, semi - i - 1);
    if (!ref.empty() && ref[0] == '#') {
      unsigned long cp = 0;
      bool hex = ref.size() > 1 && (ref[1] == 'x' || ref[1] == 'X');
      std::string_view digits = ref.substr(hex ? 2 : 1);
      bool ok = !digits.empty();
      for (char c : digits) {
        int d = -1;
        if (c >= '0' && c <= '9') d = c - '0';
        else if (hex && c >= 'a' && c <= 'f') d = c - 'a' + 10;
        else if (hex && c >= 'A' && c <= 'F') d = c - 'A' + 10;
        if (d < 0) {
          ok = false;
          break;
        }
        cp = cp * (hex ? 16 : 10) + static_cast<unsigned long>(d);
        if (cp > 0x10FFFF) cp = 0x110000;
      }
      if (ok) {
        append_utf8(out, cp);
        i = semi + 1;
        continue;
      }
    } else if (auto it = named_entities().find(ref); it != named_entities().end()) {
      append_utf8(out, it->second);
      i = semi + 1;
      continue;
    }
    out += text[i++];
  }
  return out;
}

void for_each_element(const Node& node, const std::function<void(const Node&)>& visit) {
  if (node.is_element()) visit(node);
  for (const auto& child : node.children()) {
    if (child->is_element()) for_each_element(*child, visit);
  }
}

std::string to_lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::tolower(static_cast<unsigned char>(x)) ==
                  std::tolower(static_cast<unsigned char>(y));
         });
}

bool icontains(std::string_view haystack, std::string_view needle) {
  return to_lower(haystack).find(to_lower(needle)) != std::string::npos;
}

}  // namespace uac::html
