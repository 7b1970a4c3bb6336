#include "doctest.h"

#include "uac/css.hpp"

using namespace uac;

namespace {

const css::ComputedStyle& style_of(const css::StyleMap& styles, const html::Node* node) {
  REQUIRE(node);
  return styles.at(node);
}

}  // namespace

TEST_CASE("color parsing") {
  CHECK(parse_color("#fff")->r == 255);
  auto c = parse_color("#336699");
  REQUIRE(c);
  CHECK(c->r == 0x33);
  CHECK(c->g == 0x66);
  CHECK(c->b == 0x99);
  CHECK(parse_color("rgb(10, 20, 30)")->g == 20);
  CHECK(parse_color("rgba(0,0,0,0.5)")->a == doctest::Approx(0.5));
  CHECK(parse_color("#0008")->a == doctest::Approx(0x88 / 255.0));
  CHECK(parse_color("RebeccaPurple")->b == 0x99);
  CHECK(parse_color("transparent")->a == 0);
  CHECK_FALSE(parse_color("#12"));
  CHECK_FALSE(parse_color("notacolor"));
}

TEST_CASE("compositing") {
  Rgb white{255, 255, 255};
  CHECK(composite(Rgba{0, 0, 0, 1}, white) == Rgb{0, 0, 0});
  CHECK(composite(Rgba{0, 0, 0, 0}, white) == white);
  Rgb half = composite(Rgba{0, 0, 0, 0.5}, white);
  CHECK(half.r >= 127);
  CHECK(half.r <= 128);
  CHECK(Rgb::from_hex(0x123456).hex() == "#123456");
}

TEST_CASE("selector parsing and specificity") {
  auto s = css::parse_selector("p.note.big#x");
  REQUIRE(s);
  CHECK(s->tag == "p");
  CHECK(s->classes.size() == 2);
  CHECK(s->id == "x");
  CHECK(s->specificity() == 10201);
  CHECK_FALSE(css::parse_selector("div p"));
  CHECK_FALSE(css::parse_selector("a:hover"));
}

TEST_CASE("declarations honour !important") {
  auto decls = css::parse_declarations("color: red !important; background:#fff;; bad");
  REQUIRE(decls.size() == 2);
  CHECK(decls[0].property == "color");
  CHECK(decls[0].important);
  CHECK(decls[1].value == "#fff");
}

TEST_CASE("stylesheet skips at-rules and counts unsupported selectors") {
  css::Stylesheet sheet;
  sheet.append("/* c */ @media print { p { color: red } } p { color: blue } div > p { color: green }"
               " h1, .x { color: #000 }");
  CHECK(sheet.unsupported_selectors == 1);
  CHECK(sheet.rules.size() == 3);
}

TEST_CASE("cascade: specificity, order, inline, important") {
  css::Stylesheet sheet;
  sheet.append("p { color: #111111 } .a { color: #222222 } p { color: #333333 }"
               " #i { color: #444444 } .imp { color: #555555 !important }");
  auto doc = html::parse(R"(<p id="plain">x</p><p class="a">x</p><p id="i" class="a">x</p>)"
                         R"(<p class="a" style="color:#666666">x</p>)"
                         R"(<p class="imp" style="color:#777777">x</p>)");
  auto styles = css::resolve_styles(doc, sheet);
  auto ps = doc.elements_by_tag("p");
  CHECK(style_of(styles, ps[0]).foreground.hex() == "#333333");
  CHECK(style_of(styles, ps[1]).foreground.hex() == "#222222");
  CHECK(style_of(styles, ps[2]).foreground.hex() == "#444444");
  CHECK(style_of(styles, ps[3]).foreground.hex() == "#666666");
  CHECK(style_of(styles, ps[4]).foreground.hex() == "#555555");
}

TEST_CASE("inheritance and background compositing") {
  css::Stylesheet sheet;
  sheet.append("body { color: #fff; background: #000 } .panel { background-color: rgba(255,255,255,0.5) }");
  auto doc = html::parse(R"(<body><div class="panel"><span>x</span></div><p>y</p></body>)");
  auto styles = css::resolve_styles(doc, sheet);
  const auto& span = style_of(styles, doc.first("span"));
  CHECK(span.foreground == Rgb{255, 255, 255});
  CHECK(span.background.r >= 127);
  CHECK(span.background.r <= 128);
  CHECK(style_of(styles, doc.first("p")).background == Rgb{0, 0, 0});
}

TEST_CASE("UA font defaults") {
  auto doc = html::parse("<h1>a</h1><h2>b</h2><p><strong>c</strong></p><p style='font-size:2em'>d</p>");
  auto styles = css::resolve_styles(doc, {});
  CHECK(style_of(styles, doc.first("h1")).font_size_px == doctest::Approx(32));
  CHECK(style_of(styles, doc.first("h1")).font_weight == 700);
  CHECK(style_of(styles, doc.first("h2")).font_size_px == doctest::Approx(24));
  CHECK(style_of(styles, doc.first("strong")).font_weight == 700);
  CHECK(style_of(styles, doc.elements_by_tag("p")[1]).font_size_px == doctest::Approx(32));
}

TEST_CASE("hidden elements") {
  auto doc = html::parse(R"(<div style="display:none"><p>a</p></div>)"
                         R"(<div style="visibility:hidden"><p style="visibility:visible">b</p></div>)"
                         R"(<p hidden>c</p><script>d</script><input type="hidden">)");
  auto styles = css::resolve_styles(doc, {});
  auto ps = doc.elements_by_tag("p");
  CHECK(style_of(styles, ps[0]).hidden);
  CHECK_FALSE(style_of(styles, ps[1]).hidden);
  CHECK(style_of(styles, ps[2]).hidden);
  CHECK(style_of(styles, doc.first("script")).hidden);
  CHECK(style_of(styles, doc.first("input")).hidden);
}

TEST_CASE("presentational attributes") {
  auto doc = html::parse(R"(<body text="#ffffff" bgcolor="#000080"><font color="yellow">x</font><p>y</p></body>)");
  auto styles = css::resolve_styles(doc, {});
  CHECK(style_of(styles, doc.first("font")).foreground == Rgb{255, 255, 0});
  CHECK(style_of(styles, doc.first("p")).foreground == Rgb{255, 255, 255});
  CHECK(style_of(styles, doc.first("p")).background == Rgb{0, 0, 128});
}
