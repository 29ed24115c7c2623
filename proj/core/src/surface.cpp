#include "unitsurf/surface.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>

#include "unitsurf/errors.hpp"
#include "unitsurf/number_format.hpp"

namespace unitsurf {

namespace {

template <typename Writer>
void write_file(const std::filesystem::path& path, Writer&& writer) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw SinkError("cannot open " + path.string() + " for writing");
  writer(out);
  out.flush();
  if (!out) throw SinkError("write to " + path.string() + " failed");
}

void flush_chunk(std::ostream& out, std::string& buf) {
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  buf.clear();
  if (!out) throw SinkError("mesh export failed");
}

}  // namespace

void Mesh::validate() const {
  for (const auto& f : faces) {
    for (std::size_t v : f) {
      if (v >= vertices.size()) throw InvalidInput("face index out of range");
    }
  }
}

Mesh revolve(const ProfileCurve& profile, std::size_t n_angular) {
  if (n_angular < 3) throw InvalidInput("n_angular must be at least 3");
  const std::size_t m = profile.samples.size();
  if (m < 2) throw InvalidInput("profile needs at least 2 samples");
  for (const auto& s : profile.samples) {
    if (!(s.z > 0.0)) throw DegenerateProfile("profile touches or crosses the axis at t = " + std::to_string(s.t));
  }

  Mesh mesh;
  mesh.n_profile = m;
  mesh.n_angular = n_angular;
  mesh.source = std::string(to_string(profile.kind));

  std::vector<double> sin_phi(n_angular), cos_phi(n_angular);
  for (std::size_t j = 0; j < n_angular; ++j) {
    const double phi = 2.0 * kPi * static_cast<double>(j) / static_cast<double>(n_angular);
    sin_phi[j] = j == 0 ? 0.0 : std::sin(phi);
    cos_phi[j] = j == 0 ? 1.0 : std::cos(phi);
  }
  mesh.vertices.reserve(m * n_angular);
  for (const auto& s : profile.samples) {
    for (std::size_t j = 0; j < n_angular; ++j) {
      mesh.vertices.push_back({s.x, s.z * sin_phi[j], s.z * cos_phi[j]});
    }
  }

  // (a, c, b) has normal T x dphi, whose radial part is cos(theta).
  const auto top = std::max_element(profile.samples.begin(), profile.samples.end(),
                                    [](const ProfileSample& a, const ProfileSample& b) { return a.z < b.z; });
  const bool flip = std::cos(top->theta) < 0.0;
  mesh.faces.reserve(2 * (m - 1) * n_angular);
  for (std::size_t i = 0; i + 1 < m; ++i) {
    for (std::size_t j = 0; j < n_angular; ++j) {
      const std::size_t jn = (j + 1) % n_angular;
      const std::size_t a = i * n_angular + j;
      const std::size_t b = i * n_angular + jn;
      const std::size_t c = (i + 1) * n_angular + j;
      const std::size_t d = (i + 1) * n_angular + jn;
      if (flip) {
        mesh.faces.push_back({a, b, c});
        mesh.faces.push_back({b, d, c});
      } else {
        mesh.faces.push_back({a, c, b});
        mesh.faces.push_back({b, c, d});
      }
    }
  }
  return mesh;
}

void export_obj(const Mesh& mesh, std::ostream& out) {
  mesh.validate();
  std::string buf;
  buf.reserve(1 << 16);
  for (const auto& v : mesh.vertices) {
    buf += "v ";
    append_double(buf, v[0]);
    buf += ' ';
    append_double(buf, v[1]);
    buf += ' ';
    append_double(buf, v[2]);
    buf += '\n';
    if (buf.size() > (1 << 15)) flush_chunk(out, buf);
  }
  for (const auto& f : mesh.faces) {
    buf += "f " + std::to_string(f[0] + 1) + ' ' + std::to_string(f[1] + 1) + ' ' + std::to_string(f[2] + 1) + '\n';
    if (buf.size() > (1 << 15)) flush_chunk(out, buf);
  }
  flush_chunk(out, buf);
}

void export_obj(const Mesh& mesh, const std::filesystem::path& path) {
  write_file(path, [&](std::ostream& out) { export_obj(mesh, out); });
}

void export_mesh_csv(const Mesh& mesh, std::ostream& out) {
  std::string buf = "i,j,x,y,z\n";
  for (std::size_t k = 0; k < mesh.vertices.size(); ++k) {
    const auto& v = mesh.vertices[k];
    buf += std::to_string(k / mesh.n_angular) + ',' + std::to_string(k % mesh.n_angular) + ',';
    append_double(buf, v[0]);
    buf += ',';
    append_double(buf, v[1]);
    buf += ',';
    append_double(buf, v[2]);
    buf += '\n';
    if (buf.size() > (1 << 15)) flush_chunk(out, buf);
  }
  flush_chunk(out, buf);
}

void export_mesh_csv(const Mesh& mesh, const std::filesystem::path& path) {
  write_file(path, [&](std::ostream& out) { export_mesh_csv(mesh, out); });
}

}  // namespace unitsurf
