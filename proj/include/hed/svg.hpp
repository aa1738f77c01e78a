#pragma once

#include <algorithm>
#include <cstdio>
#include <string>
#include <vector>

#include "hed/frontier.hpp"

namespace hed::io {

// Static SVG plot of one or two FAR-HED curves (step-after rendering, FAR on
// the x axis). Write-only artifact; fixed-precision coordinates keep the
// output byte-stable across runs.
inline std::string frontier_svg(const std::vector<FrontierCurve>& curves) {
  constexpr int kWidth = 640, kHeight = 480;
  constexpr double kLeft = 64.0, kRight = 616.0, kTop = 40.0, kBottom = 432.0;
  const char* kColors[] = {"#3465a4", "#cc3344", "#3a9e4f", "#9858b8"};

  double max_hed = 0.0;
  for (const auto& curve : curves) {
    for (const auto& p : curve.points) max_hed = std::max(max_hed, p.hed);
  }
  if (max_hed <= 0.0) max_hed = 1.0;
  max_hed *= 1.08;

  auto fmt = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return std::string(buf);
  };
  auto x_of = [&](double f) { return kLeft + f * (kRight - kLeft); };
  auto y_of = [&](double h) { return kBottom - (h / max_hed) * (kBottom - kTop); };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(kWidth) +
         "\" height=\"" + std::to_string(kHeight) + "\" viewBox=\"0 0 " +
         std::to_string(kWidth) + " " + std::to_string(kHeight) + "\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg += "<text x=\"320\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"15\">FAR-HED frontier</text>\n";

  for (int i = 0; i <= 4; ++i) {
    const double f = 0.25 * i;
    const double x = x_of(f);
    svg += "<line x1=\"" + fmt(x) + "\" y1=\"" + fmt(kBottom) + "\" x2=\"" + fmt(x) +
           "\" y2=\"" + fmt(kBottom + 6) + "\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + fmt(x) + "\" y=\"" + fmt(kBottom + 22) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" +
           fmt(f) + "</text>\n";
    const double h = max_hed * 0.25 * i;
    const double y = y_of(h);
    svg += "<line x1=\"" + fmt(kLeft - 6) + "\" y1=\"" + fmt(y) + "\" x2=\"" + fmt(kLeft) +
           "\" y2=\"" + fmt(y) + "\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + fmt(kLeft - 10) + "\" y=\"" + fmt(y + 4) +
           "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">" +
           fmt(h) + "</text>\n";
  }
  svg += "<line x1=\"" + fmt(kLeft) + "\" y1=\"" + fmt(kBottom) + "\" x2=\"" + fmt(kRight) +
         "\" y2=\"" + fmt(kBottom) + "\" stroke=\"black\"/>\n";
  svg += "<line x1=\"" + fmt(kLeft) + "\" y1=\"" + fmt(kTop) + "\" x2=\"" + fmt(kLeft) +
         "\" y2=\"" + fmt(kBottom) + "\" stroke=\"black\"/>\n";
  svg += "<text x=\"340\" y=\"470\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"13\">FAR</text>\n";
  svg += "<text x=\"18\" y=\"236\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"13\" transform=\"rotate(-90 18 236)\">HED</text>\n";

  for (std::size_t c = 0; c < curves.size(); ++c) {
    const detail::StepCurve step = detail::reduce_curve(curves[c]);
    const char* color = kColors[c % 4];
    std::string path = "M " + fmt(x_of(step.fars.front())) + " " + fmt(y_of(step.heds.front()));
    for (std::size_t i = 1; i < step.fars.size(); ++i) {
      path += " H " + fmt(x_of(step.fars[i]));   // step-after: hold hed to the next knot
      path += " V " + fmt(y_of(step.heds[i]));
    }
    svg += "<path d=\"" + path + "\" fill=\"none\" stroke=\"" + color +
           "\" stroke-width=\"1.8\"/>\n";
    for (std::size_t i = 0; i < step.fars.size(); ++i) {
      svg += "<circle cx=\"" + fmt(x_of(step.fars[i])) + "\" cy=\"" + fmt(y_of(step.heds[i])) +
             "\" r=\"2.6\" fill=\"" + color + "\"/>\n";
    }
    const double ly = kTop + 18.0 * static_cast<double>(c);
    svg += "<rect x=\"500\" y=\"" + fmt(ly - 9) +
           "\" width=\"12\" height=\"12\" fill=\"" + std::string(color) + "\"/>\n";
    svg += "<text x=\"518\" y=\"" + fmt(ly + 2) +
           "\" font-family=\"sans-serif\" font-size=\"12\">" +
           (curves[c].label.empty() ? ("curve " + std::to_string(c + 1)) : curves[c].label) +
           "</text>\n";
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace hed::io
