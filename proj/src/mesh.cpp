// Copyright contributors to the texweave project
// SPDX-License-Identifier: Apache-2.0

#include "texweave/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

#include "texweave/error.hpp"

namespace texweave {

Vec3 TriangleMesh::face_normal(size_t face) const {
    const auto& f = faces[face];
    const Vec3& a = vertices[f[0]];
    const Vec3& b = vertices[f[1]];
    const Vec3& c = vertices[f[2]];
    return cross(b - a, c - a);
}

double TriangleMesh::face_area(size_t face) const { return 0.5 * norm(face_normal(face)); }

BoundingSphere bounding_sphere(const TriangleMesh& mesh) {
    BoundingSphere s;
    if (mesh.vertices.empty()) return s;
    Vec3 lo = mesh.vertices[0];
    Vec3 hi = mesh.vertices[0];
    for (const Vec3& v : mesh.vertices) {
        lo.x = std::min(lo.x, v.x);
        lo.y = std::min(lo.y, v.y);
        lo.z = std::min(lo.z, v.z);
        hi.x = std::max(hi.x, v.x);
        hi.y = std::max(hi.y, v.y);
        hi.z = std::max(hi.z, v.z);
    }
    s.center = (lo + hi) * 0.5;
    for (const Vec3& v : mesh.vertices) {
        s.radius = std::max(s.radius, distance(v, s.center));
    }
    return s;
}

namespace {

struct FaceRecord {
    std::array<int, 3> v;
    std::array<int, 3> vt;
    std::array<int, 3> vn;  // -1 when the corner has no normal reference
};

int resolve_index(long raw, size_t count, int line_no, const char* what) {
    long idx = raw > 0 ? raw - 1 : static_cast<long>(count) + raw;
    if (idx < 0 || idx >= static_cast<long>(count)) {
        throw Error(ErrorCode::Parse, "line " + std::to_string(line_no) + ": " + what +
                                          " index " + std::to_string(raw) + " out of range");
    }
    return static_cast<int>(idx);
}

// Parses one face corner of the form v, v/vt, v/vt/vn or v//vn.
void parse_corner(const std::string& token, int line_no, long* v, long* vt, bool* has_vt,
                  long* vn, bool* has_vn) {
    *has_vt = false;
    *has_vn = false;
    size_t s1 = token.find('/');
    try {
        if (s1 == std::string::npos) {
            *v = std::stol(token);
            return;
        }
        *v = std::stol(token.substr(0, s1));
        size_t s2 = token.find('/', s1 + 1);
        std::string vt_str = s2 == std::string::npos ? token.substr(s1 + 1)
                                                     : token.substr(s1 + 1, s2 - s1 - 1);
        if (!vt_str.empty()) {
            *vt = std::stol(vt_str);
            *has_vt = true;
        }
        if (s2 != std::string::npos && s2 + 1 < token.size()) {
            *vn = std::stol(token.substr(s2 + 1));
            *has_vn = true;
        }
    } catch (const std::exception&) {
        throw Error(ErrorCode::Parse,
                    "line " + std::to_string(line_no) + ": bad face corner '" + token + "'");
    }
}

void drop_degenerate_faces(TriangleMesh& mesh, std::vector<FaceRecord>& records,
                           MeshLoadReport* report) {
    const BoundingSphere sphere = bounding_sphere(mesh);
    // Area threshold is defined at normalized scale (radius 0.9); rescale it
    // to the mesh's raw units so validation does not depend on stage order.
    const double scale = sphere.radius > 0.0 ? sphere.radius / 0.9 : 1.0;
    const double min_area = 1e-12 * scale * scale;
    size_t kept = 0;
    for (size_t i = 0; i < mesh.faces.size(); ++i) {
        if (mesh.face_area(i) < min_area) continue;
        mesh.faces[kept] = mesh.faces[i];
        mesh.uv_corners[kept] = mesh.uv_corners[i];
        records[kept] = records[i];
        ++kept;
    }
    if (report) report->dropped_degenerate_faces += mesh.faces.size() - kept;
    mesh.faces.resize(kept);
    mesh.uv_corners.resize(kept);
    records.resize(kept);
}

}  // namespace

TriangleMesh parse_mesh_text(const std::string& text, MeshLoadReport* report,
                             bool recompute_normals) {
    std::vector<Vec3> positions;
    std::vector<Vec2> uvs;
    std::vector<Vec3> normals;
    std::vector<FaceRecord> face_records;
    MeshLoadReport local_report;

    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        size_t comment = line.find('#');
        if (comment != std::string::npos) line = line.substr(0, comment);
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag)) continue;

        if (tag == "v") {
            Vec3 p;
            if (!(ls >> p.x >> p.y >> p.z)) {
                throw Error(ErrorCode::Parse,
                            "line " + std::to_string(line_no) + ": malformed vertex");
            }
            positions.push_back(p);
        } else if (tag == "vt") {
            Vec2 uv;
            if (!(ls >> uv.x >> uv.y)) {
                throw Error(ErrorCode::Parse,
                            "line " + std::to_string(line_no) + ": malformed vt");
            }
            uvs.push_back(uv);
        } else if (tag == "vn") {
            Vec3 n;
            if (!(ls >> n.x >> n.y >> n.z)) {
                throw Error(ErrorCode::Parse,
                            "line " + std::to_string(line_no) + ": malformed vn");
            }
            normals.push_back(n);
        } else if (tag == "f") {
            std::vector<int> vi;
            std::vector<int> ti;
            std::vector<int> ni;
            std::string token;
            while (ls >> token) {
                long v = 0, vt = 0, vn = 0;
                bool has_vt = false, has_vn = false;
                parse_corner(token, line_no, &v, &vt, &has_vt, &vn, &has_vn);
                if (!has_vt) {
                    throw Error(ErrorCode::MissingUv, "line " + std::to_string(line_no) +
                                                          ": face corner without UV");
                }
                vi.push_back(resolve_index(v, positions.size(), line_no, "vertex"));
                ti.push_back(resolve_index(vt, uvs.size(), line_no, "uv"));
                ni.push_back(has_vn ? resolve_index(vn, normals.size(), line_no, "normal")
                                    : -1);
            }
            if (vi.size() < 3) {
                throw Error(ErrorCode::Parse, "line " + std::to_string(line_no) +
                                                  ": face with fewer than 3 corners");
            }
            if (vi.size() > 4) {
                throw Error(ErrorCode::Parse, "line " + std::to_string(line_no) +
                                                  ": polygons beyond quads are not supported");
            }
            face_records.push_back(
                {{vi[0], vi[1], vi[2]}, {ti[0], ti[1], ti[2]}, {ni[0], ni[1], ni[2]}});
            if (vi.size() == 4) {
                face_records.push_back(
                    {{vi[0], vi[2], vi[3]}, {ti[0], ti[2], ti[3]}, {ni[0], ni[2], ni[3]}});
            }
        } else {
            ++local_report.ignored_directives;
        }
    }

    TriangleMesh mesh;
    mesh.vertices = positions;
    for (const FaceRecord& fr : face_records) {
        mesh.faces.push_back(fr.v);
        std::array<Vec2, 3> corner_uvs;
        for (int k = 0; k < 3; ++k) {
            Vec2 uv = uvs[fr.vt[k]];
            double cu = std::min(std::max(uv.x, 0.0), 1.0);
            double cv = std::min(std::max(uv.y, 0.0), 1.0);
            if (cu != uv.x || cv != uv.y) ++local_report.clamped_uvs;
            corner_uvs[k] = {cu, cv};
        }
        mesh.uv_corners.push_back(corner_uvs);
    }

    drop_degenerate_faces(mesh, face_records, &local_report);
    if (mesh.faces.empty()) {
        throw Error(ErrorCode::EmptyMesh, "mesh has no usable faces");
    }

    bool have_input_normals = !normals.empty();
    if (!recompute_normals && have_input_normals) {
        // Average the per-corner normal references per vertex.
        mesh.vertex_normals.assign(mesh.vertices.size(), Vec3{0, 0, 0});
        bool any_missing = false;
        for (const FaceRecord& fr : face_records) {
            for (int k = 0; k < 3; ++k) {
                if (fr.vn[k] < 0) {
                    any_missing = true;
                } else {
                    mesh.vertex_normals[fr.v[k]] += normalized(normals[fr.vn[k]]);
                }
            }
        }
        if (any_missing) {
            compute_vertex_normals(mesh, &local_report);
        } else {
            size_t isolated = 0;
            for (Vec3& n : mesh.vertex_normals) {
                const double len = norm(n);
                if (len < 1e-20) {
                    n = {0.0, 0.0, 1.0};
                    ++isolated;
                } else {
                    n = n / len;
                }
            }
            local_report.isolated_vertices += isolated;
        }
    } else {
        compute_vertex_normals(mesh, &local_report);
    }

    if (report) *report = local_report;
    return mesh;
}

TriangleMesh load_mesh(const std::string& path, MeshLoadReport* report,
                       bool recompute_normals) {
    std::ifstream file(path);
    if (!file) throw Error(ErrorCode::Io, "cannot open mesh file: " + path);
    std::stringstream buffer;
    buffer << file.rdbuf();
    return parse_mesh_text(buffer.str(), report, recompute_normals);
}

TriangleMesh normalize_mesh(const TriangleMesh& mesh) {
    if (mesh.empty()) throw Error(ErrorCode::EmptyMesh, "cannot normalize an empty mesh");
    const BoundingSphere sphere = bounding_sphere(mesh);
    const double scale = sphere.radius > 0.0 ? 0.9 / sphere.radius : 1.0;
    TriangleMesh out = mesh;
    for (Vec3& v : out.vertices) {
        v = (v - sphere.center) * scale;
    }
    return out;
}

void compute_vertex_normals(TriangleMesh& mesh, MeshLoadReport* report) {
    mesh.vertex_normals.assign(mesh.vertices.size(), Vec3{0, 0, 0});
    for (size_t f = 0; f < mesh.faces.size(); ++f) {
        const Vec3 n = mesh.face_normal(f);  // magnitude = 2 * area
        for (int k = 0; k < 3; ++k) {
            mesh.vertex_normals[mesh.faces[f][k]] += n;
        }
    }
    size_t isolated = 0;
    for (Vec3& n : mesh.vertex_normals) {
        const double len = norm(n);
        if (len < 1e-20) {
            n = {0.0, 0.0, 1.0};
            ++isolated;
        } else {
            n = n / len;
        }
    }
    if (report) report->isolated_vertices += isolated;
}

namespace {

struct UnionFind {
    std::vector<int> parent;

    explicit UnionFind(size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }

    int find(int a) {
        while (parent[a] != a) {
            parent[a] = parent[parent[a]];
            a = parent[a];
        }
        return a;
    }

    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[b] = a;
    }
};

// Key for a mesh edge together with the UVs attributed to its endpoints,
// oriented so both adjacent faces produce the same key.
struct UvEdgeKey {
    int v0, v1;
    Vec2 uv0, uv1;

    bool operator<(const UvEdgeKey& o) const {
        if (v0 != o.v0) return v0 < o.v0;
        if (v1 != o.v1) return v1 < o.v1;
        if (uv0.x != o.uv0.x) return uv0.x < o.uv0.x;
        if (uv0.y != o.uv0.y) return uv0.y < o.uv0.y;
        if (uv1.x != o.uv1.x) return uv1.x < o.uv1.x;
        return uv1.y < o.uv1.y;
    }
};

}  // namespace

size_t count_uv_charts(const TriangleMesh& mesh) {
    if (mesh.faces.empty()) return 0;
    UnionFind uf(mesh.faces.size());
    std::map<UvEdgeKey, int> first_face;
    for (size_t f = 0; f < mesh.faces.size(); ++f) {
        for (int k = 0; k < 3; ++k) {
            int a = mesh.faces[f][k];
            int b = mesh.faces[f][(k + 1) % 3];
            Vec2 ua = mesh.uv_corners[f][k];
            Vec2 ub = mesh.uv_corners[f][(k + 1) % 3];
            if (b < a) {
                std::swap(a, b);
                std::swap(ua, ub);
            }
            UvEdgeKey key{a, b, ua, ub};
            auto [it, inserted] = first_face.try_emplace(key, static_cast<int>(f));
            if (!inserted) uf.unite(it->second, static_cast<int>(f));
        }
    }
    size_t charts = 0;
    for (size_t f = 0; f < mesh.faces.size(); ++f) {
        if (uf.find(static_cast<int>(f)) == static_cast<int>(f)) ++charts;
    }
    return charts;
}

MeshStats mesh_stats(const TriangleMesh& mesh) {
    MeshStats stats;
    stats.face_count = mesh.face_count();
    stats.vertex_count = mesh.vertex_count();
    stats.chart_count = count_uv_charts(mesh);
    stats.bounding_sphere = bounding_sphere(mesh);
    return stats;
}

void save_mesh_obj(const std::string& path, const TriangleMesh& mesh) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::Io, "cannot open mesh file for writing: " + path);
    out.precision(10);
    for (const Vec3& v : mesh.vertices) {
        out << "v " << v.x << " " << v.y << " " << v.z << "\n";
    }
    for (const auto& corners : mesh.uv_corners) {
        for (const Vec2& uv : corners) {
            out << "vt " << uv.x << " " << uv.y << "\n";
        }
    }
    for (const Vec3& n : mesh.vertex_normals) {
        out << "vn " << n.x << " " << n.y << " " << n.z << "\n";
    }
    for (size_t f = 0; f < mesh.faces.size(); ++f) {
        out << "f";
        for (int k = 0; k < 3; ++k) {
            out << " " << mesh.faces[f][k] + 1 << "/" << f * 3 + k + 1 << "/"
                << mesh.faces[f][k] + 1;
        }
        out << "\n";
    }
}

}  // namespace texweave
