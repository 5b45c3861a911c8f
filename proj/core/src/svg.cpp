#include "transport/svg.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>

#include "transport/errors.hpp"

namespace transport {

namespace {

constexpr double kWidth = 640.0, kHeight = 420.0;
constexpr double kLeft = 72.0, kRight = 16.0, kTop = 18.0, kBottom = 52.0;

constexpr std::array<const char*, 4> kDisplayNames = {
    "naive", "interaction OLS", "IPSW", "g-formula"};

std::string fixed(double v, int precision = 2) {
  std::array<char, 48> buf;
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v,
                                       std::chars_format::fixed, precision);
  (void)ec;
  return std::string(buf.data(), ptr);
}

std::string shortest(double v) {
  std::array<char, 48> buf;
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  (void)ec;
  return std::string(buf.data(), ptr);
}

// Largest step from {1,2,5} * 10^k that yields at least 5 intervals.
double nice_step(double span) {
  const double raw = span / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  for (double mult : {5.0, 2.0, 1.0})
    if (mag * mult <= raw) return mag * mult;
  return mag;
}

}  // namespace

std::string render_boxplot_svg(const ReplicationSummary& summary) {
  if (summary.replications < 5)
    throw InsufficientReplications("box plot needs at least 5 replications");

  double lo = summary.true_tau, hi = summary.true_tau;
  for (const auto& ms : summary.per_method) {
    for (double v : ms.estimates) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  const double pad = (hi - lo) > 0.0 ? 0.05 * (hi - lo) : 1.0;
  lo -= pad;
  hi += pad;

  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  const auto y_of = [&](double v) {
    return kTop + plot_h * (hi - v) / (hi - lo);
  };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fixed(kWidth, 0) +
         "\" height=\"" + fixed(kHeight, 0) + "\" viewBox=\"0 0 " + fixed(kWidth, 0) +
         " " + fixed(kHeight, 0) + "\">\n";
  svg += "<rect width=\"" + fixed(kWidth, 0) + "\" height=\"" + fixed(kHeight, 0) +
         "\" fill=\"white\"/>\n";

  // Axes.
  svg += "<line x1=\"" + fixed(kLeft) + "\" y1=\"" + fixed(kTop) + "\" x2=\"" +
         fixed(kLeft) + "\" y2=\"" + fixed(kTop + plot_h) +
         "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  svg += "<line x1=\"" + fixed(kLeft) + "\" y1=\"" + fixed(kTop + plot_h) +
         "\" x2=\"" + fixed(kLeft + plot_w) + "\" y2=\"" + fixed(kTop + plot_h) +
         "\" stroke=\"black\" stroke-width=\"1\"/>\n";

  // Y ticks on a nice grid.
  const double step = nice_step(hi - lo);
  for (double tick = std::ceil(lo / step) * step; tick <= hi + 1e-9 * step;
       tick += step) {
    const double y = y_of(tick);
    svg += "<line x1=\"" + fixed(kLeft - 4.0) + "\" y1=\"" + fixed(y) + "\" x2=\"" +
           fixed(kLeft) + "\" y2=\"" + fixed(y) + "\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + fixed(kLeft - 8.0) + "\" y=\"" + fixed(y + 4.0) +
           "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">" +
           shortest(std::round(tick * 1e6) / 1e6) + "</text>\n";
  }
  svg += "<text x=\"14\" y=\"" + fixed(kTop + plot_h / 2.0) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
         "transform=\"rotate(-90 14 " +
         fixed(kTop + plot_h / 2.0) + ")\">estimated average effect</text>\n";

  // Reference line at the calibration target.
  const double ref_y = y_of(summary.true_tau);
  svg += "<line x1=\"" + fixed(kLeft) + "\" y1=\"" + fixed(ref_y) + "\" x2=\"" +
         fixed(kLeft + plot_w) + "\" y2=\"" + fixed(ref_y) +
         "\" stroke=\"crimson\" stroke-width=\"1.5\" stroke-dasharray=\"6 4\"/>\n";
  svg += "<text x=\"" + fixed(kLeft + plot_w - 4.0) + "\" y=\"" + fixed(ref_y - 5.0) +
         "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\" "
         "fill=\"crimson\">" +
         shortest(summary.true_tau) + "</text>\n";

  // One glyph per method.
  const double slot_w = plot_w / 4.0;
  const double half_box = std::min(28.0, slot_w * 0.28);
  for (std::size_t i = 0; i < 4; ++i) {
    const MethodSummary& ms = summary.per_method[i];
    const double cx = kLeft + slot_w * (static_cast<double>(i) + 0.5);
    const double iqr = ms.q75 - ms.q25;
    const double fence_lo = ms.q25 - 1.5 * iqr;
    const double fence_hi = ms.q75 + 1.5 * iqr;
    double whisker_lo = ms.q25, whisker_hi = ms.q75;
    for (double v : ms.estimates) {
      if (v >= fence_lo) whisker_lo = std::min(whisker_lo, v);
      if (v <= fence_hi) whisker_hi = std::max(whisker_hi, v);
    }
    svg += "<g stroke=\"black\" fill=\"none\">\n";
    // Whisker stems and caps.
    svg += "<line x1=\"" + fixed(cx) + "\" y1=\"" + fixed(y_of(whisker_lo)) +
           "\" x2=\"" + fixed(cx) + "\" y2=\"" + fixed(y_of(ms.q25)) + "\"/>\n";
    svg += "<line x1=\"" + fixed(cx) + "\" y1=\"" + fixed(y_of(ms.q75)) + "\" x2=\"" +
           fixed(cx) + "\" y2=\"" + fixed(y_of(whisker_hi)) + "\"/>\n";
    svg += "<line x1=\"" + fixed(cx - half_box / 2.0) + "\" y1=\"" +
           fixed(y_of(whisker_lo)) + "\" x2=\"" + fixed(cx + half_box / 2.0) +
           "\" y2=\"" + fixed(y_of(whisker_lo)) + "\"/>\n";
    svg += "<line x1=\"" + fixed(cx - half_box / 2.0) + "\" y1=\"" +
           fixed(y_of(whisker_hi)) + "\" x2=\"" + fixed(cx + half_box / 2.0) +
           "\" y2=\"" + fixed(y_of(whisker_hi)) + "\"/>\n";
    // Box and median bar.
    svg += "<rect x=\"" + fixed(cx - half_box) + "\" y=\"" + fixed(y_of(ms.q75)) +
           "\" width=\"" + fixed(2.0 * half_box) + "\" height=\"" +
           fixed(y_of(ms.q25) - y_of(ms.q75)) +
           "\" fill=\"steelblue\" fill-opacity=\"0.35\"/>\n";
    svg += "<line x1=\"" + fixed(cx - half_box) + "\" y1=\"" + fixed(y_of(ms.median)) +
           "\" x2=\"" + fixed(cx + half_box) + "\" y2=\"" + fixed(y_of(ms.median)) +
           "\" stroke-width=\"2\"/>\n";
    svg += "</g>\n";
    // Outliers beyond the fences.
    for (double v : ms.estimates)
      if (v < fence_lo || v > fence_hi)
        svg += "<circle cx=\"" + fixed(cx) + "\" cy=\"" + fixed(y_of(v)) +
               "\" r=\"2.5\" fill=\"black\"/>\n";
    svg += "<text x=\"" + fixed(cx) + "\" y=\"" + fixed(kTop + plot_h + 20.0) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" +
           kDisplayNames[i] + "</text>\n";
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace transport
