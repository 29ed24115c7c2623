#pragma once

// Surfaces of revolution about the x-axis as triangle meshes, with plain
// text export.

#include <array>
#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "unitsurf/profile.hpp"

namespace unitsurf {

struct Mesh {
  std::vector<std::array<double, 3>> vertices;  // index i * n_angular + j
  std::vector<std::array<std::size_t, 3>> faces;
  std::size_t n_profile = 0;
  std::size_t n_angular = 0;
  std::string source;  // profile kind

  // Throws InvalidInput on an out-of-range face index.
  void validate() const;
};

// Vertex (x_i, z_i sin phi_j, z_i cos phi_j) with phi_j = 2pi j / n_angular;
// each quad of the strip is split into two triangles, closed in phi and
// open at the profile ends. Faces are oriented so that normals point away
// from the axis at the highest sample. Throws InvalidInput for
// n_angular < 3 or fewer than two samples, DegenerateProfile if any z <= 0.
Mesh revolve(const ProfileCurve& profile, std::size_t n_angular);

// "v x y z" lines at 17 significant digits, then "f a b c" with 1-based
// indices, LF line endings. Throws SinkError when the stream fails.
void export_obj(const Mesh& mesh, std::ostream& out);
void export_obj(const Mesh& mesh, const std::filesystem::path& path);

// Header i,j,x,y,z, one vertex per line.
void export_mesh_csv(const Mesh& mesh, std::ostream& out);
void export_mesh_csv(const Mesh& mesh, const std::filesystem::path& path);

}  // namespace unitsurf
