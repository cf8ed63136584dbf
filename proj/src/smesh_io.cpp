#include "systl/smesh_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace systl {

namespace {

// Strips an inline comment; returns the collected comment text via `comment`.
std::string strip_comment(const std::string& line, std::string* comment) {
  auto pos = line.find('#');
  if (pos == std::string::npos) return line;
  if (comment) {
    std::string c = line.substr(pos + 1);
    if (!c.empty() && c.front() == ' ') c.erase(0, 1);
    *comment += c;
    *comment += '\n';
  }
  return line.substr(0, pos);
}

bool blank(const std::string& s) {
  return s.find_first_not_of(" \t\r") == std::string::npos;
}

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return in;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot open " + path + " for writing");
  return out;
}

}  // namespace

EmbeddedMesh load_smesh(std::istream& in) {
  std::string line, comment;
  // Header (comments may precede it).
  int n = 0, V = 0, F = 0;
  for (;;) {
    if (!std::getline(in, line)) throw ParseError("missing SMESH header");
    std::string body = strip_comment(line, &comment);
    if (blank(body)) continue;
    std::istringstream hs(body);
    std::string magic;
    hs >> magic >> n >> V >> F;
    if (magic != "SMESH" || hs.fail())
      throw ParseError("bad SMESH header: " + line);
    break;
  }
  if (n < 2 || V < 3 || F < 1) throw ParseError("implausible SMESH header counts");

  std::vector<double> coords;
  coords.reserve(static_cast<size_t>(V) * n);
  std::vector<std::array<int, 3>> faces;
  faces.reserve(F);
  int want_v = V, want_f = F;
  while (want_v + want_f > 0) {
    if (!std::getline(in, line))
      throw ParseError("SMESH truncated: expected " + std::to_string(want_v) +
                       " more vertex and " + std::to_string(want_f) +
                       " more face lines");
    bool preamble = coords.empty() && faces.empty();
    std::string body = strip_comment(line, preamble ? &comment : nullptr);
    if (blank(body)) continue;
    std::istringstream ls(body);
    if (want_v > 0) {
      for (int k = 0; k < n; ++k) {
        double x;
        ls >> x;
        if (ls.fail()) throw ParseError("bad vertex line: " + line);
        coords.push_back(x);
      }
      --want_v;
    } else {
      std::array<int, 3> fc{};
      ls >> fc[0] >> fc[1] >> fc[2];
      if (ls.fail()) throw ParseError("bad face line: " + line);
      faces.push_back(fc);
      --want_f;
    }
    double junk;
    if (ls >> junk) throw ParseError("trailing data on line: " + line);
  }
  return EmbeddedMesh(n, std::move(coords), std::move(faces), std::move(comment));
}

void save_smesh(const EmbeddedMesh& m, std::ostream& out) {
  out << "SMESH " << m.ambient_dim() << ' ' << m.num_vertices() << ' '
      << m.num_faces() << '\n';
  std::istringstream cs(m.comment());
  for (std::string cl; std::getline(cs, cl);) out << "# " << cl << '\n';
  for (int v = 0; v < m.num_vertices(); ++v) {
    auto p = m.vertex(v);
    for (int k = 0; k < m.ambient_dim(); ++k) {
      if (k) out << ' ';
      out << fmt17(p[k]);
    }
    out << '\n';
  }
  for (int f = 0; f < m.num_faces(); ++f) {
    const auto& fc = m.face(f);
    out << fc[0] << ' ' << fc[1] << ' ' << fc[2] << '\n';
  }
}

EmbeddedMesh load_smesh_file(const std::string& path) {
  auto in = open_in(path);
  return load_smesh(in);
}

EmbeddedMesh load_smesh_string(const std::string& text) {
  std::istringstream in(text);
  return load_smesh(in);
}

void save_smesh_file(const EmbeddedMesh& m, const std::string& path) {
  auto out = open_out(path);
  save_smesh(m, out);
}

std::string smesh_string(const EmbeddedMesh& m) {
  std::ostringstream out;
  save_smesh(m, out);
  return out.str();
}

EmbeddedMesh load_obj(std::istream& in) {
  std::vector<double> coords;
  std::vector<std::array<int, 3>> faces;
  std::string line;
  while (std::getline(in, line)) {
    std::string body = strip_comment(line, nullptr);
    std::istringstream ls(body);
    std::string tag;
    if (!(ls >> tag)) continue;
    if (tag == "v") {
      double x, y, z;
      ls >> x >> y >> z;
      if (ls.fail()) throw ParseError("bad OBJ vertex: " + line);
      coords.insert(coords.end(), {x, y, z});
    } else if (tag == "f") {
      std::array<int, 3> fc{};
      for (int k = 0; k < 3; ++k) {
        std::string tok;
        ls >> tok;
        if (ls.fail()) throw ParseError("OBJ face is not a triangle: " + line);
        fc[k] = std::stoi(tok.substr(0, tok.find('/'))) - 1;
      }
      std::string extra;
      if (ls >> extra) throw ParseError("OBJ face is not a triangle: " + line);
      faces.push_back(fc);
    }
  }
  return EmbeddedMesh(3, std::move(coords), std::move(faces));
}

void save_obj(const EmbeddedMesh& m, std::ostream& out) {
  if (m.ambient_dim() != 3)
    throw ParamError("OBJ output requires ambient dimension 3");
  for (int v = 0; v < m.num_vertices(); ++v) {
    auto p = m.vertex(v);
    out << "v " << fmt17(p[0]) << ' ' << fmt17(p[1]) << ' ' << fmt17(p[2]) << '\n';
  }
  for (int f = 0; f < m.num_faces(); ++f) {
    const auto& fc = m.face(f);
    out << "f " << fc[0] + 1 << ' ' << fc[1] + 1 << ' ' << fc[2] + 1 << '\n';
  }
}

EmbeddedMesh load_obj_file(const std::string& path) {
  auto in = open_in(path);
  return load_obj(in);
}

void save_obj_file(const EmbeddedMesh& m, const std::string& path) {
  auto out = open_out(path);
  save_obj(m, out);
}

EmbeddedMesh load_mesh_file(const std::string& path, const std::string& format) {
  std::string fmt = format;
  if (fmt.empty()) {
    auto dot = path.rfind('.');
    fmt = (dot == std::string::npos) ? "smesh" : path.substr(dot + 1);
  }
  if (fmt == "smesh") return load_smesh_file(path);
  if (fmt == "obj") return load_obj_file(path);
  throw ParamError("unknown mesh format: " + fmt);
}

}  // namespace systl
