#include "curvekit/catalog.hpp"

#include <vector>

#include "curvekit/errors.hpp"
#include "curvekit/expr.hpp"

namespace curvekit {

namespace {

struct Spec {
  const char* slug;
  const char* name;
  const char* u;
  const char* v;
  const char* text;
  int figure;
  const char* parent;
  TransformKind kind;
  const char* pivot;
  const char* replaced;
  const char* new_var;
  long center;
  Viewport vp;
};

constexpr TransformKind BD = TransformKind::BlowDown;
constexpr TransformKind BU = TransformKind::BlowUp;

// clang-format off
const Spec kSpecs[] = {
  {"circle-unit", "Circunferencia unidad", "x", "y",
   "x^2+y^2-1=0", 1, nullptr, BD, "", "", "", 0,
   {-1.5, 1.5, -1.5, 1.5, 512, 512}},
  {"circle-shifted", "Circunferencia de centro (2,0) y radio 2", "x", "y",
   "x^2-4x+y^2=0", 6, nullptr, BD, "", "", "", 0,
   {-1.0, 5.0, -3.0, 3.0, 512, 512}},
  {"lemniscata-huygens", "Lemniscata de Huygens", "x", "z",
   "x^4+z^2-x^2=0", 2, "circle-unit", BD, "x", "y", "z", 0,
   {-1.5, 1.5, -1.0, 1.0, 512, 512}},
  {"piriforme", "Curva piriforme", "x", "z",
   "x^4-4x^3+z^2=0", 7, "circle-shifted", BD, "x", "y", "z", 0,
   {-1.0, 5.0, -6.0, 6.0, 512, 512}},
  {"labios", "Curva en forma de labios", "x", "t",
   "x^6-12x^5+48x^4-64x^3+t^2=0", 8, "piriforme", BD, "x", "z", "t", 4,
   {-1.0, 5.0, -9.0, 9.0, 512, 512}},
  {"cardioide", "Cardioide", "x", "y",
   "(x^2+y^2+x)^2-x^2-y^2=0", 9, nullptr, BD, "", "", "", 0,
   {-2.5, 1.0, -1.75, 1.75, 512, 512}},
  {"corazon", "Curva en forma de corazon", "x", "z",
   "x^8+10x^7+40x^6+80x^5+2x^4z^2+80x^4+32x^3+10x^3z^2+15x^2z^2+4xz^2+z^4-4z^2=0", 10,
   "cardioide", BD, "x", "y", "z", -2,
   {-2.5, 0.75, -2.5, 2.5, 512, 512}},
  {"tricuspide", "Curva tricuspide (deltoide)", "x", "y",
   "3(x^2+y^2)^2+8x(3y^2-x^2)+6x^2+6y^2-1=0", 11, nullptr, BD, "", "", "", 0,
   {-1.2, 1.4, -1.3, 1.3, 512, 512}},
  {"punta-de-flecha", "Curva en forma de punta de flecha", "x", "z",
   "3x^2z^4+6x^2z^2+3x^2-6xz^4+24xz^2-2x+3z^4+6z^2-1=0", 12,
   "tricuspide", BU, "x", "y", "z", 1,
   {-0.8, 1.2, -1.0, 1.0, 512, 512}},
  {"pisciforme", "Curva pisciforme", "x", "t",
   "3x^6-2x^5+6x^4t^2-x^4+24x^3t^2+3x^2t^4+6x^2t^2-6xt^4+3t^4=0", 13,
   "punta-de-flecha", BD, "x", "z", "t", 0,
   {-0.6, 1.2, -0.6, 0.6, 512, 512}},
};
// clang-format on

std::vector<CatalogEntry> build() {
  std::vector<CatalogEntry> out;
  for (const Spec& s : kSpecs) {
    CatalogEntry e{s.slug, s.name, s.u, s.v, s.text, parse_curve(s.text, s.u, s.v),
                   s.figure, std::nullopt, std::nullopt, s.vp};
    if (s.parent) {
      e.parent = s.parent;
      e.derivation = TransformStep{s.kind, s.pivot, s.replaced, s.new_var, BigRat(s.center), false};
    }
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace

std::span<const CatalogEntry> list_catalog() {
  static const std::vector<CatalogEntry> entries = build();
  return entries;
}

const CatalogEntry& lookup_curve(std::string_view slug) {
  for (const auto& e : list_catalog())
    if (e.slug == slug) return e;
  throw CurveError(Errc::NotFound, "no catalog curve named '" + std::string(slug) + "'");
}

}  // namespace curvekit
