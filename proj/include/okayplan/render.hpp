#pragma once

#include <string>
#include <vector>

#include "okayplan/planner.hpp"

namespace okayplan::render {

/// JSON-lines trace record serialization (one line per tick).
std::string record_to_jsonl(const plan::TickRecord& rec);
plan::TickRecord record_from_jsonl(const std::string& line);
std::vector<plan::TickRecord> load_trace(const std::string& path);

/// World -> viewport map used by the SVG frames: px = scale*x,
/// py = scale*(height - y), scale = view_px / max(width, height).
struct ViewTransform {
  double scale;
  double world_height;
  double to_px_x(double x) const { return scale * x; }
  double to_px_y(double y) const { return scale * (world_height - y); }
};

struct RenderOptions {
  int view_px = 732;
  double kinematic_iota = 5.2032;  // drawn segment scale
};

std::string frame_svg(const plan::TickRecord& rec, double width, double height,
                      const RenderOptions& opt);

/// Writes frame_000000.svg.. plus summary.csv (tick, path_length_m, fitness).
/// Returns the number of frames written. Read-only on the trace.
int render_trace(const std::string& trace_path, const std::string& out_dir,
                 double width, double height, const RenderOptions& opt);

}  // namespace okayplan::render
