#include "delzant/render.hpp"

#include <set>
#include <sstream>

#include "delzant/error.hpp"

namespace delzant {

namespace {

constexpr long kCanvas = 400;  // longest side of the drawing area, in px

struct Piece {
  Polytope polytope;
  std::set<std::size_t> dashed;
};

struct Label {
  RatVec at;
  std::string text;
};

// Exact q rounded half-up to three decimals.
std::string decimal(const Rational& q) {
  Rational scaled = q * 1000 + Rational(1, 2);
  Integer r = scaled.get_num() / scaled.get_den();
  if (scaled < 0 && r * scaled.get_den() != scaled.get_num()) r -= 1;  // floor
  bool negative = r < 0;
  Integer a = negative ? Integer(-r) : r;
  Integer whole = a / 1000, frac = a % 1000;
  std::string f = frac.get_str();
  while (f.size() < 3) f = "0" + f;
  return std::string(negative ? "-" : "") + whole.get_str() + "." + f;
}

const char* subscript(char digit) {
  static const char* table[] = {"₀", "₁", "₂", "₃", "₄", "₅", "₆", "₇", "₈", "₉"};
  return table[digit - '0'];
}

std::string scene_svg(const std::vector<Piece>& pieces, const std::vector<Label>& labels) {
  Rational xmin, xmax, ymin, ymax;
  bool first = true;
  for (const auto& piece : pieces)
    for (const auto& v : piece.polytope.vertices()) {
      if (first) {
        xmin = xmax = v[0];
        ymin = ymax = v[1];
        first = false;
      }
      xmin = std::min(xmin, v[0]);
      xmax = std::max(xmax, v[0]);
      ymin = std::min(ymin, v[1]);
      ymax = std::max(ymax, v[1]);
    }
  Rational span = std::max(Rational(xmax - xmin), Rational(ymax - ymin));
  Rational margin = span / 10;
  Rational scale = Rational(kCanvas) / span;
  Rational width = (xmax - xmin + 2 * margin) * scale;
  Rational height = (ymax - ymin + 2 * margin) * scale;
  auto sx = [&](const Rational& x) { return decimal((x - xmin + margin) * scale); };
  auto sy = [&](const Rational& y) { return decimal((ymax - y + margin) * scale); };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << decimal(width) << "\" height=\"" << decimal(height)
      << "\" viewBox=\"0 0 " << decimal(width) << " " << decimal(height) << "\">\n";
  out << "<g fill=\"none\" stroke=\"black\" stroke-width=\"2\">\n";
  for (const auto& piece : pieces) {
    const auto& p = piece.polytope;
    for (std::size_t f = 0; f < p.halfspaces().size(); ++f) {
      auto vs = p.facet_vertices(f);
      const auto& a = p.vertices()[vs.at(0)];
      const auto& b = p.vertices()[vs.at(1)];
      out << "<line x1=\"" << sx(a[0]) << "\" y1=\"" << sy(a[1]) << "\" x2=\"" << sx(b[0]) << "\" y2=\"" << sy(b[1]) << "\"";
      if (piece.dashed.count(f)) out << " stroke-dasharray=\"8 4\"";
      out << "/>\n";
    }
  }
  out << "</g>\n";
  for (const auto& label : labels)
    out << "<text x=\"" << sx(label.at[0]) << "\" y=\"" << sy(label.at[1])
        << "\" font-family=\"serif\" font-size=\"16\" text-anchor=\"middle\">" << label.text << "</text>\n";
  out << "</svg>\n";
  return out.str();
}

RatVec facet_midpoint(const Polytope& p, std::size_t f) {
  auto vs = p.facet_vertices(f);
  RatVec mid = add(p.vertices()[vs.at(0)], p.vertices()[vs.at(1)]);
  for (auto& q : mid) q /= 2;
  return mid;
}

}  // namespace

std::string weight_label(const Rational& c, const IntVec& m) {
  std::size_t nonzero = 0, axis = 0;
  for (std::size_t i = 0; i < m.size(); ++i)
    if (m[i] != 0) {
      ++nonzero;
      axis = i;
    }
  if (nonzero == 1 && abs(m[axis]) == 1) {
    std::string out = m[axis] > 0 ? "−" : "";
    out += to_string(c) + "·t";
    for (char d : std::to_string(axis + 1)) out += subscript(d);
    return out + "*";
  }
  std::string out = "−" + to_string(c) + "·(";
  for (std::size_t i = 0; i < m.size(); ++i) out += (i ? ", " : "") + m[i].get_str();
  return out + ")*";
}

std::string render_svg(const Polytope& p) {
  if (p.dim() != 2) throw Error(ErrorCode::UnsupportedDimension, "render needs a 2-dimensional input, got dim " + std::to_string(p.dim()));
  return scene_svg({{p, {}}}, {});
}

std::string render_svg(const BPolytope& bp) {
  if (bp.dim() != 2) throw Error(ErrorCode::UnsupportedDimension, "render needs a 2-dimensional input, got dim " + std::to_string(bp.dim()));
  auto drawing = glued_drawing(bp);
  const auto& g = bp.graph();
  std::vector<Piece> pieces;
  std::map<std::size_t, std::vector<RatVec>> ends;
  for (std::size_t k = 0; k < drawing.order.size(); ++k) {
    const auto& comp = bp.component(drawing.order[k]);
    Piece piece{drawing.drawn[k], {}};
    for (const auto& [e, f] : comp.infinity_facets) {
      piece.dashed.insert(f);
      ends[e].push_back(facet_midpoint(piece.polytope, f));
    }
    pieces.push_back(std::move(piece));
  }
  std::vector<Label> labels;
  for (const auto& [e, mids] : ends) {
    RatVec at = add(mids.at(0), mids.at(1));
    for (auto& q : at) q /= 2;
    labels.push_back({at, weight_label(g.edges[e].c, g.edges[e].m)});
  }
  return scene_svg(pieces, labels);
}

}  // namespace delzant
