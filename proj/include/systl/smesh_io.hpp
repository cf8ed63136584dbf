#pragma once

#include <iosfwd>
#include <string>

#include "systl/mesh.hpp"

namespace systl {

// SMESH: `SMESH n V F` header, V coordinate lines (n reals each), F index
// lines (3 zero-based vertex ids). `#` starts a comment anywhere; comment
// lines before the first data line are preserved on the mesh.
EmbeddedMesh load_smesh(std::istream& in);
EmbeddedMesh load_smesh_file(const std::string& path);
EmbeddedMesh load_smesh_string(const std::string& text);

// Deterministic writer: 17 significant digits, '\n' line ends, comment block
// after the header.
void save_smesh(const EmbeddedMesh& m, std::ostream& out);
void save_smesh_file(const EmbeddedMesh& m, const std::string& path);
std::string smesh_string(const EmbeddedMesh& m);

// Wavefront OBJ, ambient dimension 3 only. Only v/f records are honoured.
EmbeddedMesh load_obj(std::istream& in);
EmbeddedMesh load_obj_file(const std::string& path);
void save_obj(const EmbeddedMesh& m, std::ostream& out);
void save_obj_file(const EmbeddedMesh& m, const std::string& path);

// Dispatch on format name "smesh"/"obj", or on the file extension.
EmbeddedMesh load_mesh_file(const std::string& path, const std::string& format = "");

}  // namespace systl
