#include "uac/css.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <tuple>

namespace uac {

namespace {

using html::iequals;
using html::to_lower;
using html::trim;

struct NamedColor {
  std::string_view name;
  std::uint32_t rgb;
};

constexpr std::array<NamedColor, 148> kNamedColors = {{
    {"aliceblue", 0xF0F8FF},      {"antiquewhite", 0xFAEBD7},   {"aqua", 0x00FFFF},
    {"aquamarine", 0x7FFFD4},     {"azure", 0xF0FFFF},          {"beige", 0xF5F5DC},
    {"bisque", 0xFFE4C4},         {"black", 0x000000},          {"blanchedalmond", 0xFFEBCD},
    {"blue", 0x0000FF},           {"blueviolet", 0x8A2BE2},     {"brown", 0xA52A2A},
    {"burlywood", 0xDEB887},      {"cadetblue", 0x5F9EA0},      {"chartreuse", 0x7FFF00},
    {"chocolate", 0xD2691E},      {"coral", 0xFF7F50},          {"cornflowerblue", 0x6495ED},
    {"cornsilk", 0xFFF8DC},       {"crimson", 0xDC143C},        {"cyan", 0x00FFFF},
    {"darkblue", 0x00008B},       {"darkcyan", 0x008B8B},       {"darkgoldenrod", 0xB8860B},
    {"darkgray", 0xA9A9A9},       {"darkgreen", 0x006400},      {"darkgrey", 0xA9A9A9},
    {"darkkhaki", 0xBDB76B},      {"darkmagenta", 0x8B008B},    {"darkolivegreen", 0x556B2F},
    {"darkorange", 0xFF8C00},     {"darkorchid", 0x9932CC},     {"darkred", 0x8B0000},
    {"darksalmon", 0xE9967A},     {"darkseagreen", 0x8FBC8F},   {"darkslateblue", 0x483D8B},
    {"darkslategray", 0x2F4F4F},  {"darkslategrey", 0x2F4F4F},  {"darkturquoise", 0x00CED1},
    {"darkviolet", 0x9400D3},     {"deeppink", 0xFF1493},       {"deepskyblue", 0x00BFFF},
    {"dimgray", 0x696969},        {"dimgrey", 0x696969},        {"dodgerblue", 0x1E90FF},
    {"firebrick", 0xB22222},      {"floralwhite", 0xFFFAF0},    {"forestgreen", 0x228B22},
    {"fuchsia", 0xFF00FF},        {"gainsboro", 0xDCDCDC},      {"ghostwhite", 0xF8F8FF},
    {"gold", 0xFFD700},           {"goldenrod", 0xDAA520},      {"gray", 0x808080},
    {"green", 0x008000},          {"greenyellow", 0xADFF2F},    {"grey", 0x808080},
    {"honeydew", 0xF0FFF0},       {"hotpink", 0xFF69B4},        {"indianred", 0xCD5C5C},
    {"indigo", 0x4B0082},         {"ivory", 0xFFFFF0},          {"khaki", 0xF0E68C},
    {"lavender", 0xE6E6FA},       {"lavenderblush", 0xFFF0F5},  {"lawngreen", 0x7CFC00},
    {"lemonchiffon", 0xFFFACD},   {"lightblue", 0xADD8E6},      {"lightcoral", 0xF08080},
    {"lightcyan", 0xE0FFFF},      {"lightgoldenrodyellow", 0xFAFAD2}, {"lightgray", 0xD3D3D3},
    {"lightgreen", 0x90EE90},     {"lightgrey", 0xD3D3D3},      {"lightpink", 0xFFB6C1},
    {"lightsalmon", 0xFFA07A},    {"lightseagreen", 0x20B2AA},  {"lightskyblue", 0x87CEFA},
    {"lightslategray", 0x778899}, {"lightslategrey", 0x778899}, {"lightsteelblue", 0xB0C4DE},
    {"lightyellow", 0xFFFFE0},    {"lime", 0x00FF00},           {"limegreen", 0x32CD32},
    {"linen", 0xFAF0E6},          {"magenta", 0xFF00FF},        {"maroon", 0x800000},
    {"mediumaquamarine", 0x66CDAA}, {"mediumblue", 0x0000CD},   {"mediumorchid", 0xBA55D3},
    {"mediumpurple", 0x9370DB},   {"mediumseagreen", 0x3CB371}, {"mediumslateblue", 0x7B68EE},
    {"mediumspringgreen", 0x00FA9A}, {"mediumturquoise", 0x48D1CC}, {"mediumvioletred", 0xC71585},
    {"midnightblue", 0x191970},   {"mintcream", 0xF5FFFA},      {"mistyrose", 0xFFE4E1},
    {"moccasin", 0xFFE4B5},       {"navajowhite", 0xFFDEAD},    {"navy", 0x000080},
    {"oldlace", 0xFDF5E6},        {"olive", 0x808000},          {"olivedrab", 0x6B8E23},
    {"orange", 0xFFA500},         {"orangered", 0xFF4500},      {"orchid", 0xDA70D6},
    {"palegoldenrod", 0xEEE8AA},  {"palegreen", 0x98FB98},      {"paleturquoise", 0xAFEEEE},
    {"palevioletred", 0xDB7093},  {"papayawhip", 0xFFEFD5},     {"peachpuff", 0xFFDAB9},
    {"peru", 0xCD853F},           {"pink", 0xFFC0CB},           {"plum", 0xDDA0DD},
    {"powderblue", 0xB0E0E6},     {"purple", 0x800080},         {"rebeccapurple", 0x663399},
    {"red", 0xFF0000},            {"rosybrown", 0xBC8F8F},      {"royalblue", 0x4169E1},
    {"saddlebrown", 0x8B4513},    {"salmon", 0xFA8072},         {"sandybrown", 0xF4A460},
    {"seagreen", 0x2E8B57},       {"seashell", 0xFFF5EE},       {"sienna", 0xA0522D},
    {"silver", 0xC0C0C0},         {"skyblue", 0x87CEEB},        {"slateblue", 0x6A5ACD},
    {"slategray", 0x708090},      {"slategrey", 0x708090},      {"snow", 0xFFFAFA},
    {"springgreen", 0x00FF7F},    {"steelblue", 0x4682B4},      {"tan", 0xD2B48C},
    {"teal", 0x008080},           {"thistle", 0xD8BFD8},        {"tomato", 0xFF6347},
    {"turquoise", 0x40E0D0},      {"violet", 0xEE82EE},         {"wheat", 0xF5DEB3},
    {"white", 0xFFFFFF},          {"whitesmoke", 0xF5F5F5},     {"yellow", 0xFFFF00},
    {"yellowgreen", 0x9ACD32},
}};

int hex_digit(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

std::optional<double> parse_number(std::string_view s) {
  s = trim(s);
  if (s.empty()) return std::nullopt;
  if (s.front() == '+') s.remove_prefix(1);
  double v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

// One rgb()/rgba() channel: "128" or "50%".
std::optional<double> parse_channel(std::string_view s) {
  s = trim(s);
  if (!s.empty() && s.back() == '%') {
    auto v = parse_number(s.substr(0, s.size() - 1));
    if (!v) return std::nullopt;
    return std::clamp(*v * 2.55, 0.0, 255.0);
  }
  auto v = parse_number(s);
  if (!v) return std::nullopt;
  return std::clamp(*v, 0.0, 255.0);
}

std::optional<double> parse_alpha(std::string_view s) {
  s = trim(s);
  if (!s.empty() && s.back() == '%') {
    auto v = parse_number(s.substr(0, s.size() - 1));
    if (!v) return std::nullopt;
    return std::clamp(*v / 100.0, 0.0, 1.0);
  }
  auto v = parse_number(s);
  if (!v) return std::nullopt;
  return std::clamp(*v, 0.0, 1.0);
}

std::optional<Rgba> parse_functional(std::string_view args) {
  // Accepts both comma and space/slash separated forms.
  std::vector<std::string_view> parts;
  std::size_t i = 0;
  while (i < args.size()) {
    while (i < args.size() && (args[i] == ' ' || args[i] == ',' || args[i] == '/')) ++i;
    std::size_t start = i;
    while (i < args.size() && args[i] != ' ' && args[i] != ',' && args[i] != '/') ++i;
    if (i > start) parts.push_back(args.substr(start, i - start));
  }
  if (parts.size() != 3 && parts.size() != 4) return std::nullopt;
  auto r = parse_channel(parts[0]);
  auto g = parse_channel(parts[1]);
  auto b = parse_channel(parts[2]);
  std::optional<double> a = 1.0;
  if (parts.size() == 4) a = parse_alpha(parts[3]);
  if (!r || !g || !b || !a) return std::nullopt;
  return Rgba{*r, *g, *b, *a};
}

std::uint8_t round_channel(double v) {
  return static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L));
}

}  // namespace

std::string Rgb::hex() const {
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02X%02X%02X", r, g, b);
  return buf;
}

Rgb Rgb::from_hex(std::uint32_t rrggbb) {
  return Rgb{static_cast<std::uint8_t>((rrggbb >> 16) & 0xFF),
             static_cast<std::uint8_t>((rrggbb >> 8) & 0xFF),
             static_cast<std::uint8_t>(rrggbb & 0xFF)};
}

Rgb composite(const Rgba& top, const Rgb& backdrop) {
  double a = std::clamp(top.a, 0.0, 1.0);
  return Rgb{round_channel(top.r * a + backdrop.r * (1 - a)),
             round_channel(top.g * a + backdrop.g * (1 - a)),
             round_channel(top.b * a + backdrop.b * (1 - a))};
}

std::optional<Rgba> parse_color(std::string_view value) {
  std::string v = to_lower(trim(value));
  if (v.empty()) return std::nullopt;
  if (v == "transparent") return Rgba{0, 0, 0, 0};
  if (v[0] == '#') {
    std::string_view h = std::string_view(v).substr(1);
    for (char c : h) {
      if (hex_digit(c) < 0) return std::nullopt;
    }
    auto pair = [&](std::size_t i) { return hex_digit(h[i]) * 16 + hex_digit(h[i + 1]); };
    auto single = [&](std::size_t i) { return hex_digit(h[i]) * 17; };
    switch (h.size()) {
      case 3:
        return Rgba{double(single(0)), double(single(1)), double(single(2)), 1};
      case 4:
        return Rgba{double(single(0)), double(single(1)), double(single(2)), single(3) / 255.0};
      case 6:
        return Rgba{double(pair(0)), double(pair(2)), double(pair(4)), 1};
      case 8:
        return Rgba{double(pair(0)), double(pair(2)), double(pair(4)), pair(6) / 255.0};
      default:
        return std::nullopt;
    }
  }
  if ((v.starts_with("rgb(") || v.starts_with("rgba(")) && v.back() == ')') {
    std::size_t open = v.find('(');
    return parse_functional(std::string_view(v).substr(open + 1, v.size() - open - 2));
  }
  for (const auto& named : kNamedColors) {
    if (named.name == v) {
      Rgb c = Rgb::from_hex(named.rgb);
      return Rgba{double(c.r), double(c.g), double(c.b), 1};
    }
  }
  return std::nullopt;
}

}  // namespace uac

namespace uac::css {

namespace {

using html::iequals;
using html::to_lower;
using html::trim;

std::string strip_comments(std::string_view css) {
  std::string out;
  std::size_t i = 0;
  while (i < css.size()) {
    if (css.substr(i, 2) == "/*") {
      std::size_t end = css.find("*/", i + 2);
      if (end == std::string_view::npos) break;
      i = end + 2;
      continue;
    }
    out += css[i++];
  }
  return out;
}

// Index just past the brace matching the '{' at `open`.
std::size_t skip_block(std::string_view s, std::size_t open) {
  int depth = 0;
  for (std::size_t i = open; i < s.size(); ++i) {
    if (s[i] == '{') ++depth;
    if (s[i] == '}' && --depth == 0) return i + 1;
  }
  return s.size();
}

bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' ||
         static_cast<unsigned char>(c) >= 0x80;
}

const std::unordered_map<std::string_view, double>& keyword_sizes() {
  static const std::unordered_map<std::string_view, double> sizes = {
      {"xx-small", 9},  {"x-small", 10}, {"small", 13},     {"medium", 16},
      {"large", 18},    {"x-large", 24}, {"xx-large", 32},  {"xxx-large", 48}};
  return sizes;
}

std::optional<double> parse_font_size(std::string_view raw, double parent_px) {
  std::string v = to_lower(trim(raw));
  if (v == "inherit") return parent_px;
  if (v == "initial") return 16.0;
  if (v == "smaller") return parent_px / 1.2;
  if (v == "larger") return parent_px * 1.2;
  if (auto it = keyword_sizes().find(v); it != keyword_sizes().end()) return it->second;
  std::size_t unit_at = 0;
  while (unit_at < v.size() && (std::isdigit(static_cast<unsigned char>(v[unit_at])) ||
                                v[unit_at] == '.' || v[unit_at] == '+')) {
    ++unit_at;
  }
  if (unit_at == 0) return std::nullopt;
  double n = 0;
  auto [ptr, ec] = std::from_chars(v.data() + (v[0] == '+' ? 1 : 0), v.data() + unit_at, n);
  if (ec != std::errc{} || ptr != v.data() + unit_at) return std::nullopt;
  std::string_view unit = std::string_view(v).substr(unit_at);
  if (unit == "px" || (unit.empty() && n == 0)) return n;
  if (unit == "pt") return n * 96.0 / 72.0;
  if (unit == "pc") return n * 16.0;
  if (unit == "em") return n * parent_px;
  if (unit == "rem") return n * 16.0;
  if (unit == "%") return n * parent_px / 100.0;
  if (unit == "ex" || unit == "ch") return n * parent_px / 2.0;
  return std::nullopt;
}

std::optional<int> parse_font_weight(std::string_view raw, int parent) {
  std::string v = to_lower(trim(raw));
  if (v == "normal" || v == "initial") return 400;
  if (v == "bold") return 700;
  if (v == "inherit") return parent;
  if (v == "bolder") return parent < 600 ? 700 : 900;
  if (v == "lighter") return parent > 500 ? 400 : 100;
  int n = 0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), n);
  if (ec == std::errc{} && ptr == v.data() + v.size() && n >= 1 && n <= 1000) return n;
  return std::nullopt;
}

// Splits a shorthand value into whitespace tokens, keeping parentheses intact.
std::vector<std::string> value_tokens(std::string_view v) {
  std::vector<std::string> out;
  std::string current;
  int depth = 0;
  for (char c : v) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (depth == 0 && (c == ' ' || c == '\t' || c == '\n')) {
      if (!current.empty()) out.push_back(std::move(current));
      current.clear();
      continue;
    }
    current += c;
  }
  if (!current.empty()) out.push_back(std::move(current));
  return out;
}

struct Ranked {
  const Declaration* decl = nullptr;
  std::tuple<bool, bool, int, std::size_t> key{};
};

constexpr std::array<std::string_view, 14> kNonRendered = {
    "head",  "title", "script", "style", "template", "noscript", "meta",
    "link",  "base",  "datalist", "param", "source", "track",  "area"};

double ua_font_scale(std::string_view tag) {
  if (tag == "h1") return 2.0;
  if (tag == "h2") return 1.5;
  if (tag == "h3") return 1.17;
  if (tag == "h5") return 0.83;
  if (tag == "h6") return 0.67;
  if (tag == "small" || tag == "sub" || tag == "sup") return 1 / 1.2;
  if (tag == "big") return 1.2;
  return 1.0;
}

bool ua_bold(std::string_view tag) {
  return tag == "h1" || tag == "h2" || tag == "h3" || tag == "h4" || tag == "h5" || tag == "h6" ||
         tag == "b" || tag == "strong" || tag == "th";
}

class Resolver {
 public:
  explicit Resolver(const Stylesheet& sheet) : sheet_(sheet) {}

  StyleMap run(const html::Document& doc) {
    ComputedStyle root;
    for (const auto& child : doc.root().children()) {
      if (child->is_element()) visit(*child, root, false);
    }
    return std::move(styles_);
  }

 private:
  void visit(const html::Node& el, const ComputedStyle& parent, bool parent_visibility_hidden) {
    std::unordered_map<std::string, Ranked> winners;
    auto offer = [&](const Declaration& d, bool inline_style, int spec, std::size_t order) {
      Ranked candidate{&d, {d.important, inline_style, spec, order}};
      auto [it, inserted] = winners.try_emplace(d.property, candidate);
      if (!inserted && candidate.key >= it->second.key) it->second = candidate;
    };
    for (const auto& rule : sheet_.rules) {
      if (!rule.selector.matches(el)) continue;
      for (const auto& d : rule.declarations) offer(d, false, rule.selector.specificity(), rule.order);
    }
    std::vector<Declaration> inline_decls;
    if (const std::string* style = el.attr("style")) inline_decls = parse_declarations(*style);
    for (const auto& d : inline_decls) offer(d, true, 0, 0);

    auto value_of = [&](std::string_view prop) -> const std::string* {
      auto it = winners.find(std::string(prop));
      return it == winners.end() ? nullptr : &it->second.decl->value;
    };

    const std::string& tag = el.tag();
    ComputedStyle cs;
    cs.color = parent.color;
    cs.font_size_px = parent.font_size_px * ua_font_scale(tag);
    cs.font_weight = ua_bold(tag) ? std::max(parent.font_weight, 700) : parent.font_weight;

    // `parent.hidden` carries only display:none here; see for_children below.
    bool display_none = parent.hidden;
    display_none = display_none || std::find(kNonRendered.begin(), kNonRendered.end(), tag) !=
                                       kNonRendered.end();
    display_none = display_none || el.has_attr("hidden") ||
                   (tag == "input" && iequals(el.attr_or_empty("type"), "hidden"));
    bool visibility_hidden = parent_visibility_hidden;

    // Presentational attributes sit below every author rule.
    std::optional<Rgba> background;
    if (tag == "font") {
      if (auto c = parse_color(el.attr_or_empty("color"))) cs.color = *c;
    }
    if (const std::string* bg = el.attr("bgcolor")) background = parse_color(*bg);
    if (tag == "body") {
      if (auto c = parse_color(el.attr_or_empty("text"))) cs.color = *c;
    }

    if (const std::string* v = value_of("font")) {
      for (const auto& tok : value_tokens(*v)) {
        std::string_view t = tok;
        if (auto slash = t.find('/'); slash != std::string_view::npos) t = t.substr(0, slash);
        if (auto w = parse_font_weight(t, parent.font_weight)) cs.font_weight = *w;
        else if (auto s = parse_font_size(t, parent.font_size_px)) cs.font_size_px = *s;
      }
    }
    if (const std::string* v = value_of("font-size")) {
      if (auto s = parse_font_size(*v, parent.font_size_px)) cs.font_size_px = *s;
    }
    if (const std::string* v = value_of("font-weight")) {
      if (auto w = parse_font_weight(*v, parent.font_weight)) cs.font_weight = *w;
    }
    if (const std::string* v = value_of("color")) {
      std::string c = to_lower(trim(*v));
      if (c == "initial") cs.color = Rgba{0, 0, 0, 1};
      else if (c != "inherit" && c != "currentcolor") {
        if (auto parsed = parse_color(c)) cs.color = *parsed;
      }
    }
    if (const std::string* v = value_of("background")) {
      for (const auto& tok : value_tokens(*v)) {
        if (auto c = parse_color(tok)) {
          background = c;
          break;
        }
      }
    }
    if (const std::string* v = value_of("background-color")) {
      std::string c = to_lower(trim(*v));
      if (c == "inherit") background = Rgba{double(parent.background.r), double(parent.background.g),
                                            double(parent.background.b), 1};
      else if (auto parsed = parse_color(c)) background = parsed;
    }
    if (const std::string* v = value_of("display")) {
      if (iequals(trim(*v), "none")) display_none = true;
    }
    if (const std::string* v = value_of("visibility")) {
      std::string vis = to_lower(trim(*v));
      if (vis == "hidden" || vis == "collapse") visibility_hidden = true;
      if (vis == "visible") visibility_hidden = false;
    }

    cs.background = background ? composite(*background, parent.background) : parent.background;
    cs.foreground = composite(cs.color, cs.background);
    cs.hidden = display_none || visibility_hidden;
    // Children of a display:none subtree stay hidden whatever they declare.
    ComputedStyle for_children = cs;
    for_children.hidden = display_none;
    styles_.emplace(&el, cs);

    for (const auto& child : el.children()) {
      if (!child->is_element()) continue;
      visit(*child, for_children, visibility_hidden);
    }
  }

  const Stylesheet& sheet_;
  StyleMap styles_;
};

}  // namespace

int SimpleSelector::specificity() const {
  int tag_part = (!tag.empty() && tag != "*") ? 1 : 0;
  return (id.empty() ? 0 : 10000) + static_cast<int>(classes.size()) * 100 + tag_part;
}

bool SimpleSelector::matches(const html::Node& element) const {
  if (!element.is_element()) return false;
  if (!tag.empty() && tag != "*" && element.tag() != tag) return false;
  if (!id.empty() && element.attr_or_empty("id") != id) return false;
  if (!classes.empty()) {
    auto tokens = element.class_tokens();
    for (const auto& c : classes) {
      if (std::find(tokens.begin(), tokens.end(), c) == tokens.end()) return false;
    }
  }
  return true;
}

std::optional<SimpleSelector> parse_selector(std::string_view text) {
  text = trim(text);
  if (text.empty()) return std::nullopt;
  SimpleSelector sel;
  std::size_t i = 0;
  if (text[0] == '*') {
    sel.tag = "*";
    i = 1;
  } else {
    while (i < text.size() && is_ident_char(text[i])) ++i;
    sel.tag = to_lower(text.substr(0, i));
  }
  while (i < text.size()) {
    char kind = text[i];
    if (kind != '.' && kind != '#') return std::nullopt;
    std::size_t start = ++i;
    while (i < text.size() && is_ident_char(text[i])) ++i;
    if (i == start) return std::nullopt;
    std::string name(text.substr(start, i - start));
    if (kind == '.') {
      sel.classes.push_back(std::move(name));
    } else {
      if (!sel.id.empty()) return std::nullopt;
      sel.id = std::move(name);
    }
  }
  return sel;
}

std::vector<Declaration> parse_declarations(std::string_view block) {
  std::vector<Declaration> out;
  std::size_t i = 0;
  while (i < block.size()) {
    std::size_t start = i;
    int depth = 0;
    char quote = 0;
    for (; i < block.size(); ++i) {
      char c = block[i];
      if (quote) {
        if (c == quote) quote = 0;
        continue;
      }
      if (c == '"' || c == '\'') quote = c;
      else if (c == '(') ++depth;
      else if (c == ')') --depth;
      else if (c == ';' && depth <= 0) break;
    }
    std::string_view item = trim(block.substr(start, i - start));
    ++i;
    std::size_t colon = item.find(':');
    if (colon == std::string_view::npos) continue;
    Declaration d;
    d.property = to_lower(trim(item.substr(0, colon)));
    std::string_view value = trim(item.substr(colon + 1));
    if (auto bang = value.rfind('!'); bang != std::string_view::npos &&
                                      iequals(trim(value.substr(bang + 1)), "important")) {
      d.important = true;
      value = trim(value.substr(0, bang));
    }
    d.value = std::string(value);
    if (!d.property.empty()) out.push_back(std::move(d));
  }
  return out;
}

void Stylesheet::append(std::string_view raw) {
  std::string css = strip_comments(raw);
  std::string_view s = css;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    if (i >= s.size()) break;
    if (s[i] == '@') {
      std::size_t brace = s.find('{', i);
      std::size_t semi = s.find(';', i);
      if (semi != std::string_view::npos && (brace == std::string_view::npos || semi < brace)) {
        i = semi + 1;
      } else if (brace != std::string_view::npos) {
        i = skip_block(s, brace);
      } else {
        break;
      }
      continue;
    }
    std::size_t brace = s.find('{', i);
    if (brace == std::string_view::npos) break;
    std::size_t close = s.find('}', brace);
    if (close == std::string_view::npos) close = s.size();
    std::string_view selectors = s.substr(i, brace - i);
    auto decls = parse_declarations(s.substr(brace + 1, close - brace - 1));
    std::size_t order = rules.size();
    std::size_t start = 0;
    while (start <= selectors.size()) {
      std::size_t comma = selectors.find(',', start);
      if (comma == std::string_view::npos) comma = selectors.size();
      if (auto sel = parse_selector(selectors.substr(start, comma - start))) {
        rules.push_back(Rule{std::move(*sel), decls, order});
      } else {
        ++unsupported_selectors;
      }
      start = comma + 1;
    }
    i = close + 1;
  }
}

StyleMap resolve_styles(const html::Document& doc, const Stylesheet& sheet) {
  return Resolver(sheet).run(doc);
}

}  // namespace uac::css
