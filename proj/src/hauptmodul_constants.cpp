#include "ncmf/hauptmodul.hpp"

namespace ncmf {

namespace {

struct RawConstants {
  const char* group;
  int width;
  const char* u_power;
  const char* description;
  std::array<const char*, 8> c;
};

// c-constants divided by the matching power of u.
constexpr RawConstants kTable[] = {
    {"G1", 4, "-1/823543", "u = (-7)^(1/4)/7^2",
     {"168", "256", "10896", "-264", "160", "-28968", "-5900544", "184"}},
    {"G3", 3, "-2/823543", "u = (-2/7)^(1/3)/7^2",
     {"-462", "-444", "-148284", "-516", "-1422", "822204", "-185029704", "996"}},
    {"H1", 5, "-1/823543", "u = (-7^3)^(1/5)/7^2",
     {"28", "51", "-636", "-97", "-18", "-2979", "-111348", "92"}},
    {"H3", 2, "-1/823543", "u = (-7)^(1/2)/7^4",
     {"-952", "96", "-205797696", "-5048", "-5904", "426314304", "-2498515200000", "7048"}},
    {"U1", 6, "15060/823543+21156/823543*z3", "u = ((1763 zeta3 + 1255) 2^2 3/7^7)^(1/6)",
     {"-10-8*z3", "-6-6*z3", "-20-28*z3", "8+10*z3", "-8-4*z3", "12-60*z3", "-276+60*z3", "6"}},
    {"U6", 1, "", "u = ((3 zeta3 + 1)/7)^7",
     {"-4944-1368*z3", "238944+59472*z3", "1457337024+738742464*z3", "1968-1368*z3",
      "-512496-128520*z3", "-13411016640-5453272512*z3", "-38174900673024-8345692154880*z3",
      "5424+3816*z3"}},
};

FieldElement parse_constant(std::string_view text) {
  // accepts "a", "a+b*z3", "a-b*z3" with integer parts
  auto zpos = text.find("*z3");
  if (zpos == std::string_view::npos) return FieldElement(Rational(std::string(text)));
  std::size_t split = text.find_first_of("+-", 1);
  Rational a(std::string(text.substr(0, split)));
  std::string b(text.substr(split, zpos - split));
  if (b.front() == '+') b.erase(0, 1);
  return FieldElement(a, Rational(b));
}

FieldElement u6_power() {
  FieldElement base = (FieldElement(3) * FieldElement::zeta3() + FieldElement(1)) / FieldElement(7);
  FieldElement p(1);
  for (int i = 0; i < 7; ++i) p *= base;
  return p;
}

GroupConstants from_raw(const RawConstants& raw) {
  GroupConstants k;
  k.u.group = GroupId::parse(raw.group);
  k.u.width = raw.width;
  k.u.u_power = std::string_view(raw.u_power).empty() ? u6_power() : parse_field_element(raw.u_power);
  k.u.description = raw.description;
  k.eq.group = k.u.group;
  k.eq.exponent = 7 - raw.width;
  for (std::size_t i = 0; i < 8; ++i) k.eq.c[i] = parse_constant(raw.c[i]);
  if (k.u.u_power.tag() == FieldTag::QZeta3) {
    for (auto& c : k.eq.c) c = c.with_tag(FieldTag::QZeta3);
  }
  return k;
}

}  // namespace

FieldTag GroupConstants::field() const { return u.u_power.tag(); }

GroupConstants load_constants(const GroupId& id) {
  // V_j data is the zeta3 -> zeta3^2 image of the U data
  if (id.family == 'V' && (id.point == 1 || id.point == 6)) {
    GroupConstants k = load_constants(GroupId{'U', id.point});
    k.u.group = id;
    k.eq.group = id;
    k.u.u_power = k.u.u_power.conjugate();
    k.u.description = "complex conjugate of the " + GroupId{'U', id.point}.name() + " value: " +
                      k.u.description;
    for (auto& c : k.eq.c) c = c.conjugate();
    return k;
  }
  for (const auto& raw : kTable) {
    if (GroupId::parse(raw.group) == id) return from_raw(raw);
  }
  throw GroupError("no hauptmodul constants for " + id.name() + "; use a canonical group");
}

}  // namespace ncmf
