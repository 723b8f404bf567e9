/*
 * Copyright 2026 The woe-explain Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "woe/svg.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>

namespace woe {
namespace {

constexpr const char* kPositive = "#2b6cb0";
constexpr const char* kNegative = "#c53030";
constexpr const char* kNeutral = "#4a5568";
constexpr const char* kPalette[] = {"#2b6cb0", "#c53030", "#2f855a",
                                    "#b7791f", "#6b46c1", "#319795"};

std::string Num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string Escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

std::string Text(double x, double y, const std::string& s,
                 const char* anchor = "start", int size = 12) {
  return "<text x=\"" + Num(x) + "\" y=\"" + Num(y) + "\" font-size=\"" +
         std::to_string(size) + "\" text-anchor=\"" + anchor + "\">" +
         Escape(s) + "</text>\n";
}

std::string Line(double x1, double y1, double x2, double y2,
                 const char* color, bool dashed = false, double width = 1) {
  return "<line x1=\"" + Num(x1) + "\" y1=\"" + Num(y1) + "\" x2=\"" +
         Num(x2) + "\" y2=\"" + Num(y2) + "\" stroke=\"" + color +
         "\" stroke-width=\"" + Num(width) + "\"" +
         (dashed ? " stroke-dasharray=\"4,3\"" : "") + "/>\n";
}

std::string Rect(double x, double y, double w, double h, const char* color,
                 double opacity = 1.0) {
  if (w < 0) {
    x += w;
    w = -w;
  }
  return "<rect x=\"" + Num(x) + "\" y=\"" + Num(y) + "\" width=\"" + Num(w) +
         "\" height=\"" + Num(h) + "\" fill=\"" + color + "\" opacity=\"" +
         Num(opacity) + "\"/>\n";
}

std::string ClassList(const ClassSet& set,
                      const std::vector<std::string>& names) {
  std::string out;
  for (int c : set) {
    if (!out.empty()) out += ", ";
    out += names[c];
  }
  return "{" + out + "}";
}

std::string Wrap(double width, double height, const std::string& body) {
  return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + Num(width) +
         "\" height=\"" + Num(height) + "\" viewBox=\"0 0 " + Num(width) +
         " " + Num(height) + "\" font-family=\"sans-serif\">\n" +
         "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n" + body +
         "</svg>\n";
}

}  // namespace

std::string render_explanation_svg(const Explanation& e) {
  constexpr double kWidth = 720;
  constexpr double kLabelWidth = 180;
  constexpr double kBarHeight = 18;
  constexpr double kPlotLeft = kLabelWidth + 20;
  constexpr double kPlotWidth = kWidth - kPlotLeft - 40;
  const double tau = e.config.salience_threshold;
  std::string body;
  double y = 10;
  for (size_t t = 0; t < e.steps.size(); ++t) {
    const auto& step = e.steps[t];
    std::vector<int> order(step.atom_woes.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      return step.atom_woes[a] > step.atom_woes[b];
    });
    double extent = tau;
    for (double w : step.atom_woes) extent = std::max(extent, std::abs(w));
    for (double v : {step.prior_log_odds, step.total_woe,
                     step.posterior_log_odds()}) {
      extent = std::max(extent, std::abs(v));
    }
    extent *= 1.1;
    const double zero = kPlotLeft + kPlotWidth / 2;
    const double scale = (kPlotWidth / 2) / extent;

    y += 20;
    body += Text(10, y,
                 "Step " + std::to_string(t + 1) + ": evidence for " +
                     ClassList(step.kept, e.class_names) + " against " +
                     ClassList(step.ruled_out, e.class_names),
                 "start", 14);
    y += 10;
    const double top = y;
    for (int a : order) {
      const double w = step.atom_woes[a];
      const double opacity = step.salient[a] ? 1.0 : 0.35;
      body += Text(kLabelWidth, y + kBarHeight - 5, e.partition.atom_name(a),
                   "end");
      body += Rect(zero, y + 2, w * scale, kBarHeight - 4,
                   w >= 0 ? kPositive : kNegative, opacity);
      body += Text(w >= 0 ? zero + w * scale + 4 : zero + w * scale - 4,
                   y + kBarHeight - 5, Num(w), w >= 0 ? "start" : "end", 10);
      y += kBarHeight;
    }
    body += Line(zero, top, zero, y, kNeutral);
    for (double g : {-tau, tau}) {
      body += Line(zero + g * scale, top, zero + g * scale, y, kNeutral, true);
    }
    y += 14;
    body += Text(zero, y, "weight of evidence (nats); dashed: +/-tau = " +
                              Num(tau),
                 "middle", 10);

    // Prior + total WoE = posterior log odds.
    y += 10;
    const struct {
      const char* label;
      double value;
    } rows[] = {{"prior log odds", step.prior_log_odds},
                {"total WoE", step.total_woe},
                {"posterior log odds", step.posterior_log_odds()}};
    for (const auto& row : rows) {
      body += Text(kLabelWidth, y + kBarHeight - 5, row.label, "end");
      body += Rect(zero, y + 2, row.value * scale, kBarHeight - 4,
                   row.value >= 0 ? kPositive : kNegative, 0.8);
      body += Text(row.value >= 0 ? zero + row.value * scale + 4
                                  : zero + row.value * scale - 4,
                   y + kBarHeight - 5, Num(row.value),
                   row.value >= 0 ? "start" : "end", 10);
      y += kBarHeight;
    }
    body += Line(zero, y - 3 * kBarHeight, zero, y, kNeutral);
    y += 10;
  }
  return Wrap(kWidth, y + 10, body);
}

std::string render_line_chart(const std::string& title,
                              const std::string& x_label,
                              const std::string& y_label,
                              const std::vector<LineSeries>& series) {
  constexpr double kWidth = 560, kHeight = 360;
  constexpr double kLeft = 70, kRight = 150, kTop = 40, kBottom = 50;
  double x_lo = INFINITY, x_hi = -INFINITY, y_lo = INFINITY, y_hi = -INFINITY;
  for (const auto& s : series) {
    for (double v : s.x) {
      x_lo = std::min(x_lo, std::log10(v));
      x_hi = std::max(x_hi, std::log10(v));
    }
    for (double v : s.y) {
      y_lo = std::min(y_lo, v);
      y_hi = std::max(y_hi, v);
    }
  }
  if (!(x_hi > x_lo)) x_hi = x_lo + 1;
  if (!(y_hi > y_lo)) y_hi = y_lo + 1;
  y_lo = std::min(y_lo, 0.0);
  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  auto px = [&](double v) { return kLeft + (std::log10(v) - x_lo) / (x_hi - x_lo) * pw; };
  auto py = [&](double v) { return kTop + ph - (v - y_lo) / (y_hi - y_lo) * ph; };

  std::string body = Text(kWidth / 2 - kRight / 2, 22, title, "middle", 15);
  body += Line(kLeft, kTop + ph, kLeft + pw, kTop + ph, kNeutral);
  body += Line(kLeft, kTop, kLeft, kTop + ph, kNeutral);
  for (int i = 0; i <= 4; ++i) {
    const double v = y_lo + (y_hi - y_lo) * i / 4.0;
    body += Text(kLeft - 6, py(v) + 4, Num(v), "end", 10);
  }
  for (double e = std::ceil(x_lo); e <= x_hi + 1e-9; e += 1) {
    const double v = std::pow(10.0, e);
    body += Text(px(v), kTop + ph + 16, "1e" + std::to_string(static_cast<int>(e)),
                 "middle", 10);
  }
  body += Text(kLeft + pw / 2, kHeight - 10, x_label, "middle");
  body += "<text transform=\"translate(16," + Num(kTop + ph / 2) +
          ") rotate(-90)\" font-size=\"12\" text-anchor=\"middle\">" +
          Escape(y_label) + "</text>\n";
  for (size_t i = 0; i < series.size(); ++i) {
    const char* color = kPalette[i % std::size(kPalette)];
    const auto& s = series[i];
    std::string points;
    for (size_t j = 0; j < s.x.size(); ++j) {
      points += Num(px(s.x[j])) + "," + Num(py(s.y[j])) + " ";
      body += "<circle cx=\"" + Num(px(s.x[j])) + "\" cy=\"" + Num(py(s.y[j])) +
              "\" r=\"3\" fill=\"" + color + "\"/>\n";
    }
    body += "<polyline fill=\"none\" stroke=\"" + std::string(color) +
            "\" stroke-width=\"2\" points=\"" + points + "\"/>\n";
    body += Line(kWidth - kRight + 15, kTop + 10 + 18 * i,
                 kWidth - kRight + 35, kTop + 10 + 18 * i, color, false, 2);
    body += Text(kWidth - kRight + 40, kTop + 14 + 18 * i, s.label, "start", 11);
  }
  return Wrap(kWidth, kHeight, body);
}

std::string render_box_chart(const std::string& title,
                             const std::string& y_label,
                             const std::vector<BoxSeries>& boxes,
                             double reference) {
  constexpr double kHeight = 360, kLeft = 70, kTop = 40, kBottom = 60;
  const double width = std::max(320.0, kLeft + 40 + 90.0 * boxes.size());
  double hi = reference;
  for (const auto& b : boxes) hi = std::max(hi, b.max);
  hi *= 1.1;
  const double ph = kHeight - kTop - kBottom;
  auto py = [&](double v) { return kTop + ph - v / hi * ph; };

  std::string body = Text(width / 2, 22, title, "middle", 15);
  body += Line(kLeft, kTop, kLeft, kTop + ph, kNeutral);
  body += Line(kLeft, kTop + ph, width - 20, kTop + ph, kNeutral);
  for (int i = 0; i <= 4; ++i) {
    const double v = hi * i / 4.0;
    body += Text(kLeft - 6, py(v) + 4, Num(v), "end", 10);
  }
  body += "<text transform=\"translate(16," + Num(kTop + ph / 2) +
          ") rotate(-90)\" font-size=\"12\" text-anchor=\"middle\">" +
          Escape(y_label) + "</text>\n";
  for (size_t i = 0; i < boxes.size(); ++i) {
    const auto& b = boxes[i];
    const double cx = kLeft + 60 + 90.0 * i;
    body += Line(cx, py(b.min), cx, py(b.q25), kNeutral);
    body += Line(cx, py(b.q75), cx, py(b.max), kNeutral);
    body += Line(cx - 12, py(b.min), cx + 12, py(b.min), kNeutral);
    body += Line(cx - 12, py(b.max), cx + 12, py(b.max), kNeutral);
    body += "<rect x=\"" + Num(cx - 25) + "\" y=\"" + Num(py(b.q75)) +
            "\" width=\"50\" height=\"" + Num(py(b.q25) - py(b.q75)) +
            "\" fill=\"#bee3f8\" stroke=\"" + kPositive + "\"/>\n";
    body += Line(cx - 25, py(b.median), cx + 25, py(b.median), kPositive,
                 false, 2);
    body += Text(cx, kTop + ph + 16, b.label, "middle", 10);
  }
  body += Line(kLeft, py(reference), width - 20, py(reference), kNegative, true,
               1.5);
  body += Text(width - 22, py(reference) - 4, "L = " + Num(reference), "end",
               10);
  return Wrap(width, kHeight, body);
}

}  // namespace woe
