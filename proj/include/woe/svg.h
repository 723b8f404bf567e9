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

#ifndef WOE_SVG_H_
#define WOE_SVG_H_

#include <string>
#include <vector>

#include "woe/explainer.h"

namespace woe {

// One panel per step: horizontal WoE bars sorted by value (positive blue,
// negative red, non-salient atoms faded, dashed guides at +-tau), followed by
// a prior / total WoE / posterior log-odds panel.
std::string render_explanation_svg(const Explanation& explanation);

struct LineSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

// Line chart with a log10 x axis.
std::string render_line_chart(const std::string& title,
                              const std::string& x_label,
                              const std::string& y_label,
                              const std::vector<LineSeries>& series);

struct BoxSeries {
  std::string label;
  double min = 0, q25 = 0, median = 0, q75 = 0, max = 0;
};

// Box-and-whisker chart with a dashed reference line at `reference`.
std::string render_box_chart(const std::string& title,
                             const std::string& y_label,
                             const std::vector<BoxSeries>& boxes,
                             double reference);

}  // namespace woe

#endif  // WOE_SVG_H_
