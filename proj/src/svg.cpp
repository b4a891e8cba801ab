#include "pbsurf/svg.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace pbsurf {

namespace {

const double kPi = 3.14159265358979323846;

// Chart map: sphere -> (longitude, z) cylindrical equal-area; torus -> flat.
Vec2 chart_point(const Mesh& m, const Vec3& p) {
  if (m.topology == Topology::Sphere) {
    const double r = norm(p);
    return {std::atan2(p.y, p.x), r > 0 ? p.z / r : 0.0};
  }
  return {p.x, p.y};
}

struct Frame {
  double x0, x1, y0, y1;  // chart bounds
  double width = 720, height = 360, pad = 10;

  Vec2 to_px(const Vec2& c) const {
    const double sx = (width - 2 * pad) / (x1 - x0);
    const double sy = (height - 2 * pad) / (y1 - y0);
    return {pad + (c.x - x0) * sx, height - pad - (c.y - y0) * sy};
  }
};

Frame make_frame(const Mesh& m) {
  if (m.topology == Topology::Sphere) return {-kPi, kPi, -1.0, 1.0};
  return {0.0, m.lx, 0.0, m.ly};
}

void fmt(std::ostringstream& out, const char* format, double a, double b) {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, a, b);
  out << buf;
}

// Triangles that straddle the longitude seam or the torus wrap would smear
// across the whole chart; draw them per-corner-chart instead of skipping.
bool seam_safe(const Frame& fr, const Vec2& a, const Vec2& b) {
  return std::abs(a.x - b.x) < 0.5 * (fr.x1 - fr.x0) &&
         std::abs(a.y - b.y) < 0.5 * (fr.y1 - fr.y0);
}

Vec2 tri_chart_corner(const Mesh& m, int t, int k) {
  return chart_point(m, m.corners[t][k]);
}

const char* kRegionFill[] = {"#e41a1c55", "#377eb855", "#4daf4a55", "#98427855",
                             "#ff7f0055", "#a6562855"};
const char* kCurveStroke[] = {"#e41a1c", "#377eb8", "#4daf4a", "#984278", "#ff7f00", "#a65628"};

}  // namespace

std::string render_svg(const SvgScene& scene) {
  std::ostringstream out;
  const Mesh* m = scene.mesh;
  Frame fr = m ? make_frame(*m) : Frame{0, 1, 0, 1};
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << static_cast<int>(fr.width)
      << "\" height=\"" << static_cast<int>(fr.height) << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  // Axes frame.
  out << "<rect x=\"10\" y=\"10\" width=\"" << static_cast<int>(fr.width - 20) << "\" height=\""
      << static_cast<int>(fr.height - 20) << "\" fill=\"none\" stroke=\"#888\"/>\n";

  if (m) {
    for (size_t ri = 0; ri < scene.regions.size(); ++ri) {
      const auto& r = *scene.regions[ri];
      out << "<g fill=\"" << kRegionFill[ri % 6] << "\" stroke=\"none\">\n";
      for (int t = 0; t < m->tri_count(); ++t) {
        if (!r.contains(t)) continue;
        const Vec2 a = tri_chart_corner(*m, t, 0);
        const Vec2 b = tri_chart_corner(*m, t, 1);
        const Vec2 c = tri_chart_corner(*m, t, 2);
        if (!seam_safe(fr, a, b) || !seam_safe(fr, b, c) || !seam_safe(fr, a, c)) continue;
        const Vec2 pa = fr.to_px(a), pb = fr.to_px(b), pc = fr.to_px(c);
        out << "<path d=\"M";
        fmt(out, "%.3f %.3f", pa.x, pa.y);
        out << " L";
        fmt(out, "%.3f %.3f", pb.x, pb.y);
        out << " L";
        fmt(out, "%.3f %.3f", pc.x, pc.y);
        out << " Z\"/>\n";
      }
      out << "</g>\n";
    }

    auto emit_segment = [&](const Vec2& a, const Vec2& b) {
      if (!seam_safe(fr, a, b)) return;
      const Vec2 pa = fr.to_px(a), pb = fr.to_px(b);
      out << "<line x1=\"";
      fmt(out, "%.3f\" y1=\"%.3f\"", pa.x, pa.y);
      out << " x2=\"";
      fmt(out, "%.3f\" y2=\"%.3f\"", pb.x, pb.y);
      out << "/>\n";
    };
    auto bary_chart = [&](const CurveSegment& s, const Vec2& bc) {
      const auto& c = m->corners[s.tri];
      const Vec3 p = c[0] * (1.0 - bc.x - bc.y) + c[1] * bc.x + c[2] * bc.y;
      return chart_point(*m, p);
    };

    int color = 0;
    for (const LevelCurve* curve : scene.curves) {
      out << "<g stroke=\"" << kCurveStroke[color % 6] << "\" stroke-width=\"1.5\" fill=\"none\">\n";
      for (const auto& seg : curve->segments()) emit_segment(bary_chart(seg, seg.a), bary_chart(seg, seg.b));
      out << "</g>\n";
      ++color;
    }
    for (const PermCurveSet* pc : scene.perm_curves) {
      out << "<g stroke=\"" << kCurveStroke[color % 6] << "\" stroke-width=\"1.5\" fill=\"none\">\n";
      for (const auto& seg : pc->all_segments()) emit_segment(bary_chart(seg, seg.a), bary_chart(seg, seg.b));
      out << "</g>\n";
      ++color;
    }
  }
  out << "</svg>\n";
  return out.str();
}

void emit_svg(const SvgScene& scene, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << render_svg(scene);
}

}  // namespace pbsurf
