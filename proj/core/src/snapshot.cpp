#include "inls/snapshot.hpp"

#include <bit>
#include <charconv>
#include <cstdio>
#include <cstring>
#include <memory>

namespace inls {

static_assert(std::endian::native == std::endian::little,
              "INLS-FIELD v1 I/O assumes a little-endian host");

namespace {
std::string fmt_double(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}
}  // namespace

void write_snapshot(const std::string& path, const FieldState& u) {
  if (u.grid.kind != GridKind::cartesian)
    throw parameter_error("snapshot: cartesian fields only");
  std::unique_ptr<std::FILE, decltype(&std::fclose)> f(std::fopen(path.c_str(), "wb"),
                                                       &std::fclose);
  if (!f) throw std::runtime_error("snapshot: cannot open " + path + " for writing");
  const std::string header = "INLS-FIELD v1; N=" + std::to_string(u.grid.dims) +
                             "; n=" + std::to_string(u.grid.n) + "; L=" + fmt_double(u.grid.L) +
                             "; t=" + fmt_double(u.time) +
                             "; offset=" + (u.grid.offset ? "1" : "0") + "\n";
  std::fwrite(header.data(), 1, header.size(), f.get());
  std::fwrite(u.samples.data(), sizeof(cplx), u.samples.size(), f.get());
}

FieldState read_snapshot(const std::string& path) {
  std::unique_ptr<std::FILE, decltype(&std::fclose)> f(std::fopen(path.c_str(), "rb"),
                                                       &std::fclose);
  if (!f) throw std::runtime_error("snapshot: cannot open " + path);
  char line[256];
  if (!std::fgets(line, sizeof line, f.get()))
    throw std::runtime_error("snapshot: missing header in " + path);
  int dims = 0, n = 0, off = 1;
  double L = 0.0, t = 0.0;
  if (std::sscanf(line, "INLS-FIELD v1; N=%d; n=%d; L=%lf; t=%lf; offset=%d", &dims, &n, &L, &t,
                  &off) != 5)
    throw std::runtime_error("snapshot: malformed header in " + path);
  FieldState u = make_field(make_grid(dims, n, L, off != 0));
  u.time = t;
  const std::size_t want = u.samples.size();
  if (std::fread(u.samples.data(), sizeof(cplx), want, f.get()) != want)
    throw std::runtime_error("snapshot: truncated payload in " + path);
  return u;
}

}  // namespace inls
