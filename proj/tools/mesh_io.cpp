#include <algorithm>
#include <bit>
#include <cctype>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <memory>

#include "job.hpp"
#include "voss/error.hpp"

namespace forge {

using namespace voss;

namespace {

struct FileCloser {
  void operator()(std::FILE* f) const { std::fclose(f); }
};
using File = std::unique_ptr<std::FILE, FileCloser>;

File open(const std::string& path, const char* mode) {
  File f(std::fopen(path.c_str(), mode));
  if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
  return f;
}

void check_finite(const SurfaceGrid& s) {
  for (const Vec3& p : s.pos.data)
    if (!p.allFinite()) throw DegenerateError("mesh: non-finite vertex");
}

void write_obj(const SurfaceGrid& s, std::FILE* f) {
  const int nu = s.spec.nu, nv = s.spec.nv;
  std::fprintf(f, "# %d x %d parametric grid\n", nu, nv);
  for (int i = 0; i < nu; ++i)
    for (int j = 0; j < nv; ++j) {
      const Vec3& p = s.pos(i, j);
      std::fprintf(f, "v %.17g %.17g %.17g\n", p.x(), p.y(), p.z());
    }
  for (int i = 0; i + 1 < nu; ++i)
    for (int j = 0; j + 1 < nv; ++j) {
      const long a = long(i) * nv + j + 1, b = long(i + 1) * nv + j + 1;
      std::fprintf(f, "f %ld %ld %ld %ld\n", a, b, b + 1, a + 1);
    }
}

template <class T>
void put_le(std::FILE* f, T x) {
  unsigned char b[sizeof(T)];
  std::memcpy(b, &x, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(b, b + sizeof(T));
  std::fwrite(b, 1, sizeof(T), f);
}

void write_ply(const SurfaceGrid& s, std::FILE* f) {
  const int nu = s.spec.nu, nv = s.spec.nv;
  std::fprintf(f,
               "ply\nformat binary_little_endian 1.0\nelement vertex %d\nproperty double x\nproperty double y\n"
               "property double z\nelement face %d\nproperty list uchar int vertex_indices\nend_header\n",
               nu * nv, (nu - 1) * (nv - 1));
  for (const Vec3& p : s.pos.data) {
    put_le(f, p.x());
    put_le(f, p.y());
    put_le(f, p.z());
  }
  for (int i = 0; i + 1 < nu; ++i)
    for (int j = 0; j + 1 < nv; ++j) {
      const std::int32_t a = i * nv + j, b = (i + 1) * nv + j;
      put_le(f, std::uint8_t(4));
      for (std::int32_t v : {a, b, b + 1, a + 1}) put_le(f, v);
    }
}

void write_csv(const SurfaceGrid& s, std::FILE* f) {
  std::fprintf(f, "u,v,x,y,z\n");
  for (int i = 0; i < s.spec.nu; ++i)
    for (int j = 0; j < s.spec.nv; ++j) {
      const Vec3& p = s.pos(i, j);
      std::fprintf(f, "%.17g,%.17g,%.17g,%.17g,%.17g\n", s.spec.u(i), s.spec.v(j), p.x(), p.y(), p.z());
    }
}

}  // namespace

std::string infer_format(const std::string& path) {
  const auto dot = path.find_last_of('.');
  std::string ext = dot == std::string::npos ? "" : path.substr(dot + 1);
  for (char& c : ext) c = char(std::tolower(static_cast<unsigned char>(c)));
  if (ext == "obj" || ext == "ply" || ext == "csv") return ext;
  throw UsageError("cannot infer mesh format from '" + path + "'; pass --format obj|ply|csv");
}

void write_mesh(const SurfaceGrid& s, const std::string& path, const std::string& format) {
  const std::string fmt = format.empty() ? infer_format(path) : format;
  if (fmt != "obj" && fmt != "ply" && fmt != "csv") throw UsageError("unknown format '" + fmt + "'");
  check_finite(s);
  File f = open(path, fmt == "ply" ? "wb" : "w");
  if (fmt == "obj") write_obj(s, f.get());
  else if (fmt == "ply") write_ply(s, f.get());
  else write_csv(s, f.get());
  if (std::ferror(f.get())) throw std::runtime_error("write failed: " + path);
}

}  // namespace forge
