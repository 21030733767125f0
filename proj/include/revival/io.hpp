#pragma once

// CSV and SVG emission plus CSV reading of grid functions.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "revival/core.hpp"

namespace revival {

// Shortest representation that round-trips to the same double.
inline std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

inline void write_csv(std::ostream& os, const GridFunction& g) {
  os << "x,re,im\n";
  for (std::size_t n = 0; n < g.size(); ++n)
    os << format_double(g.x(n)) << ',' << format_double(g.samples[n].real()) << ','
       << format_double(g.samples[n].imag()) << '\n';
}

inline void write_csv(std::ostream& os, const FourierCoeffs& c) {
  os << "m,re,im\n";
  for (int m = -c.radius(); m <= c.radius(); ++m)
    os << m << ',' << format_double(c[m].real()) << ',' << format_double(c[m].imag()) << '\n';
}

template <class T>
void write_csv_file(const std::string& path, const T& value) {
  std::ofstream os(path);
  if (!os) throw Error(Errc::config, "cannot open " + path + " for writing");
  write_csv(os, value);
}

// Reads an `x,re,im` file; the domain length is recovered as N (x_1 - x_0).
inline GridFunction read_grid_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw Error(Errc::config, "empty CSV input");
  if (line.rfind("x,re,im", 0) != 0) throw Error(Errc::config, "CSV header must be x,re,im");
  std::vector<double> xs;
  std::vector<cplx> vals;
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    double f[3];
    const char* p = line.data();
    const char* end = line.data() + line.size();
    for (int k = 0; k < 3; ++k) {
      auto res = std::from_chars(p, end, f[k]);
      if (res.ec != std::errc{}) throw Error(Errc::config, "line " + std::to_string(lineno) + ": malformed number");
      p = res.ptr;
      if (k < 2) {
        if (p == end || *p != ',') throw Error(Errc::config, "line " + std::to_string(lineno) + ": expected ','");
        ++p;
      }
    }
    xs.push_back(f[0]);
    vals.emplace_back(f[1], f[2]);
  }
  if (vals.size() < 2) throw Error(Errc::config, "CSV needs at least two samples");
  const double length = static_cast<double>(vals.size()) * (xs[1] - xs[0]);
  return GridFunction(length, std::move(vals));
}

inline GridFunction read_grid_csv_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw Error(Errc::config, "cannot open " + path);
  return read_grid_csv(is);
}

struct Panel {
  std::string title;
  GridFunction data;
};

namespace detail {

inline std::string tick_label(int k) {
  // k pi / 2
  if (k == 0) return "0";
  if (k % 2 == 0) return k / 2 == 1 ? "&#960;" : std::to_string(k / 2) + "&#960;";
  return (k == 1 ? std::string() : std::to_string(k)) + "&#960;/2";
}

}  // namespace detail

// 2x2 grid of panels (row-major) in a 1280x480 viewBox; real part blue,
// imaginary part red, x ticks at multiples of pi/2.
inline std::string render_svg(const std::vector<Panel>& panels, const std::string& title = {}) {
  constexpr double width = 1280.0;
  constexpr double height = 480.0;
  constexpr double top = 28.0;
  constexpr double cols = 2.0;
  const double rows = panels.size() > 2 ? 2.0 : 1.0;
  const double cell_w = width / cols;
  const double cell_h = (height - top) / rows;
  constexpr double pad_l = 44.0, pad_r = 12.0, pad_t = 20.0, pad_b = 26.0;

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 1280 480\" font-family=\"sans-serif\" font-size=\"11\">\n";
  os << "<rect width=\"1280\" height=\"480\" fill=\"white\"/>\n";
  if (!title.empty()) os << "<text x=\"640\" y=\"18\" text-anchor=\"middle\" font-size=\"14\">" << title << "</text>\n";

  for (std::size_t p = 0; p < panels.size() && p < 4; ++p) {
    const auto& g = panels[p].data;
    const double ox = static_cast<double>(p % 2) * cell_w;
    const double oy = top + static_cast<double>(p / 2) * cell_h;
    const double x0 = ox + pad_l, x1 = ox + cell_w - pad_r;
    const double y0 = oy + pad_t, y1 = oy + cell_h - pad_b;

    double lo = 0.0, hi = 0.0;
    for (const auto& v : g.samples) {
      lo = std::min({lo, v.real(), v.imag()});
      hi = std::max({hi, v.real(), v.imag()});
    }
    if (hi - lo < 1e-12) hi = lo + 1.0;
    const double margin = 0.05 * (hi - lo);
    lo -= margin;
    hi += margin;
    auto px = [&](double x) { return x0 + (x1 - x0) * x / g.length; };
    auto py = [&](double y) { return y1 - (y1 - y0) * (y - lo) / (hi - lo); };

    os << "<g>\n<text x=\"" << format_double(0.5 * (x0 + x1)) << "\" y=\"" << format_double(oy + 14)
       << "\" text-anchor=\"middle\">" << panels[p].title << "</text>\n";
    os << "<rect x=\"" << format_double(x0) << "\" y=\"" << format_double(y0) << "\" width=\""
       << format_double(x1 - x0) << "\" height=\"" << format_double(y1 - y0)
       << "\" fill=\"none\" stroke=\"#888\"/>\n";
    const int ticks = static_cast<int>(std::floor(g.length / (pi / 2.0) + 1e-9));
    for (int k = 0; k <= ticks; ++k) {
      const double x = px(k * pi / 2.0);
      os << "<line x1=\"" << format_double(x) << "\" y1=\"" << format_double(y1) << "\" x2=\"" << format_double(x)
         << "\" y2=\"" << format_double(y1 + 4) << "\" stroke=\"#888\"/>";
      os << "<text x=\"" << format_double(x) << "\" y=\"" << format_double(y1 + 16) << "\" text-anchor=\"middle\">"
         << detail::tick_label(k) << "</text>\n";
    }
    for (int part = 0; part < 2; ++part) {
      os << "<polyline fill=\"none\" stroke-width=\"1\" stroke=\"" << (part == 0 ? "#1f4fd8" : "#d8261f")
         << "\" points=\"";
      const std::size_t stride = std::max<std::size_t>(1, g.size() / 2048);
      for (std::size_t n = 0; n < g.size(); n += stride) {
        const double v = part == 0 ? g.samples[n].real() : g.samples[n].imag();
        os << format_double(std::round(px(g.x(n)) * 100.0) / 100.0) << ','
           << format_double(std::round(py(v) * 100.0) / 100.0) << ' ';
      }
      os << "\"/>\n";
    }
    os << "</g>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace revival
