#pragma once

// Arc-diagram rendering: the text runs along a horizontal baseline, each
// repeated substring draws gray arcs above it joining consecutive
// occurrences (stroke thickening with substring length), and each match
// partition mirrors red arcs below it, one per piece. The output is a
// standalone SVG document, byte-identical for identical inputs.

#include <algorithm>
#include <cstdio>
#include <string>
#include <vector>

#include "gfm/core.hpp"
#include "gfm/repindex.hpp"

namespace gfm {

struct ArcSvgOptions {
  int cell = 18;          ///< horizontal pixels per symbol
  int max_symbols = 512;  ///< layout budget; longer texts are refused
  bool labels = true;     ///< print each token under its position
};

namespace detail {

/// Fixed one-decimal float formatting keeps the document reproducible.
inline std::string f1(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", v);
  return buf;
}

inline std::string xml_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

/// Arc anchored on the line y, bowing up or down by its own radius.
inline void append_arc(std::string& out, double x1, double x2, double y,
                       bool upward, double stroke_w, const std::string& color,
                       const std::string& opacity) {
  const double r = (x2 - x1) / 2.0;
  out += "<path d=\"M " + f1(x1) + " " + f1(y) + " A " + f1(r) + " " + f1(r) +
         " 0 0 " + (upward ? "0" : "1") + " " + f1(x2) + " " + f1(y) +
         "\" fill=\"none\" stroke=\"" + color + "\" stroke-width=\"" +
         f1(stroke_w) + "\" stroke-opacity=\"" + opacity + "\"/>\n";
}

}  // namespace detail

/// Renders the diagram. Matches may be empty, leaving the upper half only.
/// Throws EmptyInputError for an empty text and TooLargeError when the text
/// exceeds the layout budget.
inline std::string render_arc_svg(const SymbolString& text,
                                  const std::vector<Repetition>& reps,
                                  const std::vector<MatchPartition>& matches,
                                  const ArcSvgOptions& opt = {}) {
  const int n = static_cast<int>(text.size());
  if (n == 0) throw EmptyInputError("cannot draw an empty text");
  if (n > opt.max_symbols)
    throw TooLargeError("text exceeds the arc-diagram layout budget");

  const double margin = 10.0;
  const double cell = static_cast<double>(opt.cell);
  const auto center = [&](int i) { return margin + (i + 0.5) * cell; };

  // the tallest arc on each side fixes that side's band height
  int max_up_span = 0;
  for (const Repetition& rep : reps)
    for (std::size_t k = 0; k + 1 < rep.positions.size(); ++k)
      max_up_span = std::max(max_up_span, rep.positions[k + 1] - rep.positions[k]);
  int max_down_span = 0;
  for (const MatchPartition& mp : matches)
    for (std::size_t j = 0; j + 1 < mp.bounds.size(); ++j)
      max_down_span = std::max(max_down_span, mp.bounds[j + 1] - 1 - mp.bounds[j]);

  const double up_h = max_up_span * cell / 2.0 + 8.0;
  const double down_h =
      matches.empty() ? 0.0
                      : max_down_span * cell / 2.0 + 8.0 +
                            3.0 * static_cast<double>(
                                      std::min<std::size_t>(matches.size(), 8));
  const double label_band = opt.labels ? 16.0 : 4.0;
  const double y_up = margin + up_h;          // anchor line for upper arcs
  const double y_down = y_up + label_band;    // anchor line for lower arcs
  const double width = 2.0 * margin + n * cell;
  const double height = y_down + down_h + margin;

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
         detail::f1(width) + "\" height=\"" + detail::f1(height) +
         "\" viewBox=\"0 0 " + detail::f1(width) + " " + detail::f1(height) +
         "\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";

  // repetition structure: one arc per consecutive occurrence pair
  for (const Repetition& rep : reps) {
    const double stroke = std::min(1.0 + 0.6 * (rep.length - 1), 8.0);
    for (std::size_t k = 0; k + 1 < rep.positions.size(); ++k)
      detail::append_arc(svg, center(rep.positions[k]),
                         center(rep.positions[k + 1]), y_up, true, stroke,
                         "#9a9a9a", "0.55");
  }

  // symbol labels between the two anchor lines
  if (opt.labels) {
    for (int i = 0; i < n; ++i) {
      const std::string tok = detail::xml_escape(text.token(text[i]));
      const int fs = tok.size() > 1 ? 7 : 10;
      svg += "<text x=\"" + detail::f1(center(i)) + "\" y=\"" +
             detail::f1(y_up + 12.0) + "\" text-anchor=\"middle\" font-family=\"monospace\" font-size=\"" +
             std::to_string(fs) + "\">" + tok + "</text>\n";
    }
  }

  // matches mirrored below in red hues, one arc (or dot) per piece
  static const char* kReds[6] = {"#c62828", "#e53935", "#ad1457",
                                 "#d81b60", "#bf360c", "#f4511e"};
  for (std::size_t m = 0; m < matches.size(); ++m) {
    const MatchPartition& mp = matches[m];
    const std::string color = kReds[m % 6];
    const double y = y_down + 3.0 * static_cast<double>(m % 8);
    for (std::size_t j = 0; j + 1 < mp.bounds.size(); ++j) {
      const int lo = mp.bounds[j];
      const int hi = mp.bounds[j + 1] - 1;  // last symbol of the piece
      if (lo == hi)
        svg += "<circle cx=\"" + detail::f1(center(lo)) + "\" cy=\"" +
               detail::f1(y + 2.0) + "\" r=\"2.0\" fill=\"" + color +
               "\" fill-opacity=\"0.8\"/>\n";
      else
        detail::append_arc(svg, center(lo), center(hi), y, false, 1.5, color,
                           "0.8");
    }
  }

  svg += "</svg>\n";
  return svg;
}

}  // namespace gfm
