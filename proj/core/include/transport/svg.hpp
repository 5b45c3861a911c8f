#pragma once

#include <string>

#include "transport/replication.hpp"

namespace transport {

// Self-contained SVG: one box-and-whisker glyph per method (box at the
// quartiles, bar at the median, whiskers to the farthest point within
// 1.5 IQR of the box, dots beyond), plus a dashed horizontal reference line
// at the calibration target. All coordinates are written with fixed
// precision, so identical summaries render byte-identical documents.
// InsufficientReplications below 5 replications.
std::string render_boxplot_svg(const ReplicationSummary& summary);

}  // namespace transport
