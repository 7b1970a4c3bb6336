#pragma once

// Colors and the small CSS cascade used for contrast analysis: UA defaults,
// inheritance, <style> rules with simple selectors, inline style attributes.

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "uac/html.hpp"

namespace uac {

// Opaque 8-bit sRGB color.
struct Rgb {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;

  friend auto operator<=>(const Rgb&, const Rgb&) = default;

  std::string hex() const;  // "#RRGGBB"
  static Rgb from_hex(std::uint32_t rrggbb);
};

// sRGB with straight alpha, channels 0-255, alpha 0-1.
struct Rgba {
  double r = 0;
  double g = 0;
  double b = 0;
  double a = 1;

  bool opaque() const { return a >= 1.0; }
};

// Source-over composite of `top` onto an opaque backdrop.
Rgb composite(const Rgba& top, const Rgb& backdrop);

// Parses hex, rgb()/rgba(), named colors and `transparent`.
std::optional<Rgba> parse_color(std::string_view value);

}  // namespace uac

namespace uac::css {

struct Declaration {
  std::string property;  // lowercased
  std::string value;
  bool important = false;
};

// tag / .class / #id compound, no combinators.
struct SimpleSelector {
  std::string tag;  // empty or "*" matches any
  std::vector<std::string> classes;
  std::string id;

  int specificity() const;  // id*10000 + class*100 + tag
  bool matches(const html::Node& element) const;
};

struct Rule {
  SimpleSelector selector;
  std::vector<Declaration> declarations;
  std::size_t order = 0;
};

struct Stylesheet {
  std::vector<Rule> rules;
  // Rules dropped because they need selector features the resolver lacks.
  std::size_t unsupported_selectors = 0;

  void append(std::string_view css);
};

std::vector<Declaration> parse_declarations(std::string_view block);
std::optional<SimpleSelector> parse_selector(std::string_view text);

struct ComputedStyle {
  Rgba color{0, 0, 0, 1};
  Rgb background{255, 255, 255};  // effective backdrop after compositing ancestors
  Rgb foreground{0, 0, 0};        // `color` composited onto `background`
  double font_size_px = 16.0;
  int font_weight = 400;
  bool hidden = false;  // display:none, visibility:hidden, [hidden] or non-rendered
};

using StyleMap = std::unordered_map<const html::Node*, ComputedStyle>;

// Computes styles for every element of the document.
StyleMap resolve_styles(const html::Document& doc, const Stylesheet& sheet);

}  // namespace uac::css
