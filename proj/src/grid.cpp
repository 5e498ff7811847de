#include "coliseum/grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <fstream>

#include "coliseum/errors.hpp"

namespace coliseum {

size_t RegionMask::count() const {
  size_t n = 0;
  for (auto b : bits) n += b != 0;
  return n;
}

namespace {

RegionMask morph(const RegionMask& m, int px, bool grow) {
  RegionMask out(m.grid);
  int w = m.grid.width, h = m.grid.height;
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      bool hit = grow ? false : true;
      for (int dy = -px; dy <= px && (grow ? !hit : hit); ++dy)
        for (int dx = -px; dx <= px && (grow ? !hit : hit); ++dx) {
          int nx = x + dx, ny = y + dy;
          bool v = nx >= 0 && nx < w && ny >= 0 && ny < h &&
                   m.bits[static_cast<size_t>(ny) * w + nx];
          if (grow && v) hit = true;
          if (!grow && !v) hit = false;
        }
      out.bits[static_cast<size_t>(y) * w + x] = hit ? 1 : 0;
    }
  return out;
}

}  // namespace

RegionMask dilate(const RegionMask& m, int px) { return morph(m, px, true); }
RegionMask erode(const RegionMask& m, int px) { return morph(m, px, false); }

RegionMask mask_and(const RegionMask& a, const RegionMask& b) {
  RegionMask out(a.grid);
  for (size_t i = 0; i < a.bits.size(); ++i) out.bits[i] = a.bits[i] && b.bits[i];
  return out;
}
RegionMask mask_or(const RegionMask& a, const RegionMask& b) {
  RegionMask out(a.grid);
  for (size_t i = 0; i < a.bits.size(); ++i) out.bits[i] = a.bits[i] || b.bits[i];
  return out;
}
RegionMask mask_minus(const RegionMask& a, const RegionMask& b) {
  RegionMask out(a.grid);
  for (size_t i = 0; i < a.bits.size(); ++i) out.bits[i] = a.bits[i] && !b.bits[i];
  return out;
}
size_t intersection_count(const RegionMask& a, const RegionMask& b) {
  size_t n = 0;
  for (size_t i = 0; i < a.bits.size(); ++i) n += a.bits[i] && b.bits[i];
  return n;
}
bool subset_of(const RegionMask& a, const RegionMask& b) {
  for (size_t i = 0; i < a.bits.size(); ++i)
    if (a.bits[i] && !b.bits[i]) return false;
  return true;
}

std::vector<size_t> boundary_pixels(const RegionMask& m) {
  std::vector<size_t> out;
  int w = m.grid.width, h = m.grid.height;
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      size_t i = static_cast<size_t>(y) * w + x;
      if (!m.bits[i]) continue;
      bool edge = x == 0 || x == w - 1 || y == 0 || y == h - 1;
      if (!edge) {
        edge = !m.bits[i - 1] || !m.bits[i + 1] || !m.bits[i - w] || !m.bits[i + w];
      }
      if (edge) out.push_back(i);
    }
  return out;
}

RegionMask unbounded_complement(const RegionMask& m) {
  int w = m.grid.width, h = m.grid.height;
  RegionMask out(m.grid);
  std::deque<size_t> q;
  auto push = [&](int x, int y) {
    size_t i = static_cast<size_t>(y) * w + x;
    if (!m.bits[i] && !out.bits[i]) {
      out.bits[i] = 1;
      q.push_back(i);
    }
  };
  for (int x = 0; x < w; ++x) { push(x, 0); push(x, h - 1); }
  for (int y = 0; y < h; ++y) { push(0, y); push(w - 1, y); }
  while (!q.empty()) {
    size_t i = q.front();
    q.pop_front();
    int x = static_cast<int>(i) % w, y = static_cast<int>(i) / w;
    if (x > 0) push(x - 1, y);
    if (x < w - 1) push(x + 1, y);
    if (y > 0) push(x, y - 1);
    if (y < h - 1) push(x, y + 1);
  }
  return out;
}

bool is_connected8(const RegionMask& m) {
  int w = m.grid.width, h = m.grid.height;
  size_t total = m.count();
  if (total == 0) return false;
  std::vector<uint8_t> seen(m.bits.size(), 0);
  std::deque<size_t> q;
  for (size_t i = 0; i < m.bits.size(); ++i)
    if (m.bits[i]) {
      seen[i] = 1;
      q.push_back(i);
      break;
    }
  size_t visited = 0;
  while (!q.empty()) {
    size_t i = q.front();
    q.pop_front();
    ++visited;
    int x = static_cast<int>(i) % w, y = static_cast<int>(i) / w;
    for (int dy = -1; dy <= 1; ++dy)
      for (int dx = -1; dx <= 1; ++dx) {
        int nx = x + dx, ny = y + dy;
        if (nx < 0 || nx >= w || ny < 0 || ny >= h) continue;
        size_t ni = static_cast<size_t>(ny) * w + nx;
        if (m.bits[ni] && !seen[ni]) {
          seen[ni] = 1;
          q.push_back(ni);
        }
      }
  }
  return visited == total;
}

double ScalarField::interp(cplx z, double outside) const {
  double fx = (z.real() - grid.re_min) / grid.dx() - 0.5;
  double fy = (grid.im_max - z.imag()) / grid.dy() - 0.5;
  int x0 = static_cast<int>(std::floor(fx));
  int y0 = static_cast<int>(std::floor(fy));
  if (x0 < 0 || y0 < 0 || x0 + 1 >= grid.width || y0 + 1 >= grid.height)
    return outside;
  double tx = fx - x0, ty = fy - y0;
  size_t i = static_cast<size_t>(y0) * grid.width + x0;
  double v00 = values[i], v10 = values[i + 1];
  double v01 = values[i + grid.width], v11 = values[i + grid.width + 1];
  return (1 - ty) * ((1 - tx) * v00 + tx * v10) + ty * ((1 - tx) * v01 + tx * v11);
}

void write_pgm16(const std::string& path, const GridSpec& g,
                 const std::vector<double>& v, double lo, double hi) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot write " + path);
  f << "P5\n" << g.width << " " << g.height << "\n65535\n";
  for (double x : v) {
    double t = (x - lo) / (hi - lo);
    t = std::clamp(t, 0.0, 1.0);
    uint16_t s = static_cast<uint16_t>(std::lround(t * 65535.0));
    unsigned char b[2] = {static_cast<unsigned char>(s >> 8),
                          static_cast<unsigned char>(s & 0xff)};
    f.write(reinterpret_cast<char*>(b), 2);
  }
  if (!f) throw IoError("write failed: " + path);
}

void write_pgm_mask(const std::string& path, const RegionMask& m) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot write " + path);
  f << "P5\n" << m.grid.width << " " << m.grid.height << "\n255\n";
  for (auto b : m.bits) {
    unsigned char c = b ? 255 : 0;
    f.write(reinterpret_cast<char*>(&c), 1);
  }
  if (!f) throw IoError("write failed: " + path);
}

RegionMask read_pgm_mask(const std::string& path, const GridSpec& grid) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot read " + path);
  std::string magic;
  int w, h, maxv;
  f >> magic >> w >> h >> maxv;
  f.get();
  if (magic != "P5") throw IoError("not a binary PGM: " + path);
  GridSpec g = grid;
  g.width = w;
  g.height = h;
  RegionMask m(g);
  int bytes = maxv > 255 ? 2 : 1;
  std::vector<unsigned char> row(static_cast<size_t>(w) * bytes);
  for (int y = 0; y < h; ++y) {
    f.read(reinterpret_cast<char*>(row.data()), row.size());
    for (int x = 0; x < w; ++x)
      m.bits[static_cast<size_t>(y) * w + x] = row[x * bytes] > 0;
  }
  if (!f) throw IoError("truncated PGM: " + path);
  return m;
}

void write_field_csv(const std::string& path, const ScalarField& f) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << "re,im,value,undecided\n";
  char buf[160];
  for (size_t i = 0; i < f.values.size(); ++i) {
    cplx z = f.grid.center(i);
    std::snprintf(buf, sizeof buf, "%.9g,%.9g,%.9g,%.9g\n", z.real(), z.imag(),
                  f.values[i], f.undecided[i]);
    out << buf;
  }
}

}  // namespace coliseum
