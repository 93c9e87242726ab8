#include "evego/mesh.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>

#include "evego/errors.hpp"

namespace evego {

void validate_mesh(const LabeledMesh& mesh) {
  const int nv = mesh.vertex_count();
  if (static_cast<int>(mesh.labels.size()) != nv)
    throw data_error("InvariantViolation: mesh needs exactly one label per vertex");
  for (std::uint8_t l : mesh.labels)
    if (l >= kNumJoints) throw data_error("InvariantViolation: vertex label out of range");
  for (const auto& tri : mesh.triangles)
    for (int idx : tri)
      if (idx < 0 || idx >= nv)
        throw data_error("InvariantViolation: triangle index out of range");
  if (!mesh.vertices.allFinite()) throw data_error("InvariantViolation: non-finite mesh vertex");
}

LabeledMesh load_mesh(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw data_error("FileNotFound: " + path.string());

  auto next_line = [&is](std::istringstream& ss) {
    std::string line;
    while (std::getline(is, line)) {
      if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      ss = std::istringstream(line);
      return true;
    }
    return false;
  };

  std::istringstream ss;
  std::string tag;
  long long nv = 0, nt = 0;
  if (!next_line(ss) || !(ss >> tag >> nv >> nt) || tag != "mesh" || nv < 0 || nt < 0)
    throw data_error("ParseError: expected header 'mesh <nv> <nt>'");

  LabeledMesh mesh;
  mesh.vertices.resize(nv, 3);
  mesh.labels.reserve(nv);
  for (long long i = 0; i < nv; ++i) {
    double x, y, z;
    int label;
    if (!next_line(ss) || !(ss >> tag >> x >> y >> z >> label) || tag != "v")
      throw data_error("ParseError: expected vertex line 'v x y z label'");
    mesh.vertices.row(i) << x, y, z;
    mesh.labels.push_back(static_cast<std::uint8_t>(label));
    if (label < 0 || label >= kNumJoints)
      throw data_error("ParseError: vertex label out of range");
  }
  mesh.triangles.reserve(nt);
  for (long long i = 0; i < nt; ++i) {
    int a, b, c;
    if (!next_line(ss) || !(ss >> tag >> a >> b >> c) || tag != "f")
      throw data_error("ParseError: expected face line 'f a b c'");
    mesh.triangles.push_back({a, b, c});
  }

  validate_mesh(mesh);
  return mesh;
}

void save_mesh(const std::filesystem::path& path, const LabeledMesh& mesh) {
  std::ofstream os(path);
  if (!os) throw data_error("FileNotFound: cannot open " + path.string() + " for writing");
  os.precision(std::numeric_limits<double>::max_digits10);
  os << "mesh " << mesh.vertex_count() << " " << mesh.triangle_count() << "\n";
  for (int i = 0; i < mesh.vertex_count(); ++i)
    os << "v " << mesh.vertices(i, 0) << " " << mesh.vertices(i, 1) << " " << mesh.vertices(i, 2)
       << " " << static_cast<int>(mesh.labels[i]) << "\n";
  for (const auto& tri : mesh.triangles)
    os << "f " << tri[0] << " " << tri[1] << " " << tri[2] << "\n";
  if (!os) throw data_error("FileNotFound: write failed for " + path.string());
}

}  // namespace evego
