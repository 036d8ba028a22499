#include "dualshear/signal_io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace dsh {

namespace {

std::string sidecar(const std::string& path) { return path + ".json"; }

bool ends_with(const std::string& s, const std::string& suf) {
  return s.size() >= suf.size() && s.compare(s.size() - suf.size(), suf.size(), suf) == 0;
}

}  // namespace

void write_pgm(const std::string& path, const std::vector<double>& f, int n, int bits) {
  if (bits != 8 && bits != 16) throw std::invalid_argument("write_pgm: bits must be 8 or 16");
  if (f.size() != static_cast<std::size_t>(n) * n)
    throw std::invalid_argument("write_pgm: size mismatch");
  const double lo = *std::min_element(f.begin(), f.end());
  const double hi = *std::max_element(f.begin(), f.end());
  const double scale = hi > lo ? (std::exp2(bits) - 1.0) / (hi - lo) : 0.0;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("write_pgm: cannot open " + path);
  out << "P5\n" << n << " " << n << "\n" << static_cast<int>(std::exp2(bits) - 1) << "\n";
  for (double x : f) {
    const double q = std::round((x - lo) * scale);
    const unsigned v = static_cast<unsigned>(std::clamp(q, 0.0, std::exp2(bits) - 1.0));
    if (bits == 8) {
      const unsigned char b = static_cast<unsigned char>(v);
      out.write(reinterpret_cast<const char*>(&b), 1);
    } else {
      const unsigned char b[2] = {static_cast<unsigned char>(v >> 8),
                                  static_cast<unsigned char>(v & 0xff)};
      out.write(reinterpret_cast<const char*>(b), 2);
    }
  }
  nlohmann::json j;
  j["offset"] = lo;
  j["scale"] = scale;
  j["bits"] = bits;
  std::ofstream side(sidecar(path));
  side << j.dump(2) << "\n";
}

std::vector<double> read_pgm(const std::string& path, int* n) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("read_pgm: cannot open " + path);
  std::string magic;
  int w = 0, h = 0, maxval = 0;
  in >> magic >> w >> h >> maxval;
  if (magic != "P5" || w != h || w <= 0) throw std::runtime_error("read_pgm: unsupported graymap");
  in.get();  // single whitespace after maxval
  const bool wide = maxval > 255;
  std::vector<double> f(static_cast<std::size_t>(w) * h);
  for (auto& x : f) {
    if (wide) {
      unsigned char b[2];
      in.read(reinterpret_cast<char*>(b), 2);
      x = static_cast<double>((static_cast<unsigned>(b[0]) << 8) | b[1]);
    } else {
      unsigned char b;
      in.read(reinterpret_cast<char*>(&b), 1);
      x = static_cast<double>(b);
    }
  }
  if (!in) throw std::runtime_error("read_pgm: truncated file");
  double offset = 0, scale = 0;
  std::ifstream side(sidecar(path));
  if (side) {
    nlohmann::json j;
    side >> j;
    offset = j.value("offset", 0.0);
    scale = j.value("scale", 0.0);
  }
  if (scale > 0)
    for (auto& x : f) x = x / scale + offset;
  else
    for (auto& x : f) x /= static_cast<double>(maxval);
  *n = w;
  return f;
}

void write_f64(const std::string& path, const std::vector<double>& f, int n) {
  if (f.size() != static_cast<std::size_t>(n) * n)
    throw std::invalid_argument("write_f64: size mismatch");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("write_f64: cannot open " + path);
  out.write(reinterpret_cast<const char*>(f.data()),
            static_cast<std::streamsize>(f.size() * sizeof(double)));
  nlohmann::json j;
  j["n"] = n;
  j["format"] = "f64le";
  std::ofstream side(sidecar(path));
  side << j.dump(2) << "\n";
}

std::vector<double> read_f64(const std::string& path, int* n) {
  std::ifstream side(sidecar(path));
  if (!side) throw std::runtime_error("read_f64: missing sidecar for " + path);
  nlohmann::json j;
  side >> j;
  const int nn = j.at("n").get<int>();
  std::vector<double> f(static_cast<std::size_t>(nn) * nn);
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("read_f64: cannot open " + path);
  in.read(reinterpret_cast<char*>(f.data()),
          static_cast<std::streamsize>(f.size() * sizeof(double)));
  if (!in) throw std::runtime_error("read_f64: truncated file");
  *n = nn;
  return f;
}

void write_signal(const std::string& path, const std::vector<double>& f, int n) {
  if (ends_with(path, ".pgm"))
    write_pgm(path, f, n);
  else if (ends_with(path, ".f64"))
    write_f64(path, f, n);
  else
    throw std::invalid_argument("write_signal: unknown extension (want .pgm or .f64)");
}

std::vector<double> read_signal(const std::string& path, int* n) {
  if (ends_with(path, ".pgm")) return read_pgm(path, n);
  if (ends_with(path, ".f64")) return read_f64(path, n);
  throw std::invalid_argument("read_signal: unknown extension (want .pgm or .f64)");
}

}  // namespace dsh
