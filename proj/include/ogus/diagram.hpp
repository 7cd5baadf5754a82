// Finite linear diagram categories: quiver-shaped objects (loops and
// invertibility-flagged edges allowed), distinguished subspace slots,
// optional path relations, with Hom spaces, kernels and cokernels
// computed by exact linear algebra.
#pragma once

#include "ogus/linear_map.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <vector>

namespace ogus {

struct DiagramEdge {
    std::string label;
    std::string src;
    std::string tgt;
    bool invertible = false;
};

// Formal equality of two edge-label paths, edges applied left to right.
struct PathRelation {
    std::vector<std::string> lhs;
    std::vector<std::string> rhs;
};

struct DiagramShape {
    std::vector<std::string> vertices;
    std::vector<DiagramEdge> edges;
    std::map<std::string, std::vector<std::string>> slots; // vertex -> slot labels
    std::vector<PathRelation> relations;

    void normalize() {
        std::sort(vertices.begin(), vertices.end());
        std::sort(edges.begin(), edges.end(),
                  [](const DiagramEdge& a, const DiagramEdge& b) { return a.label < b.label; });
        for (auto& [v, ls] : slots)
            std::sort(ls.begin(), ls.end());
    }

    bool has_vertex(const std::string& v) const {
        return std::find(vertices.begin(), vertices.end(), v) != vertices.end();
    }
    const DiagramEdge* find_edge(const std::string& label) const {
        for (const auto& e : edges)
            if (e.label == label)
                return &e;
        return nullptr;
    }

    std::vector<std::string> check() const {
        std::vector<std::string> bad;
        for (size_t i = 1; i < vertices.size(); ++i)
            if (vertices[i] == vertices[i - 1])
                bad.push_back("duplicate vertex " + vertices[i]);
        for (const auto& e : edges) {
            if (!has_vertex(e.src) || !has_vertex(e.tgt))
                bad.push_back("edge " + e.label + ": endpoint missing");
        }
        for (size_t i = 1; i < edges.size(); ++i)
            if (edges[i].label == edges[i - 1].label)
                bad.push_back("duplicate edge label " + edges[i].label);
        for (const auto& [v, ls] : slots)
            if (!has_vertex(v))
                bad.push_back("slots on missing vertex " + v);
        for (const auto& r : relations) {
            for (const auto* side : {&r.lhs, &r.rhs}) {
                if (side->empty()) {
                    bad.push_back("relation with empty path");
                    continue;
                }
                for (size_t i = 0; i < side->size(); ++i) {
                    const DiagramEdge* e = find_edge((*side)[i]);
                    if (!e) {
                        bad.push_back("relation uses missing edge " + (*side)[i]);
                        break;
                    }
                    if (i > 0) {
                        const DiagramEdge* prev = find_edge((*side)[i - 1]);
                        if (prev && prev->tgt != e->src)
                            bad.push_back("relation path does not compose at " + e->label);
                    }
                }
            }
            if (!r.lhs.empty() && !r.rhs.empty()) {
                const DiagramEdge *l0 = find_edge(r.lhs.front()), *l1 = find_edge(r.lhs.back());
                const DiagramEdge *r0 = find_edge(r.rhs.front()), *r1 = find_edge(r.rhs.back());
                if (l0 && l1 && r0 && r1 && (l0->src != r0->src || l1->tgt != r1->tgt))
                    bad.push_back("relation endpoints differ");
            }
        }
        return bad;
    }

    bool operator==(const DiagramShape& o) const {
        if (vertices != o.vertices || slots != o.slots)
            return false;
        if (edges.size() != o.edges.size() || relations.size() != o.relations.size())
            return false;
        for (size_t i = 0; i < edges.size(); ++i) {
            const auto &a = edges[i], &b = o.edges[i];
            if (a.label != b.label || a.src != b.src || a.tgt != b.tgt || a.invertible != b.invertible)
                return false;
        }
        for (size_t i = 0; i < relations.size(); ++i)
            if (relations[i].lhs != o.relations[i].lhs || relations[i].rhs != o.relations[i].rhs)
                return false;
        return true;
    }
};

struct DiagramObject {
    DiagramShape shape;
    std::map<std::string, long> dims;
    std::map<std::string, Matrix> maps;
    std::map<std::string, std::map<std::string, Subspace>> slot_spaces; // vertex -> slot -> subspace

    long dim(const std::string& v) const {
        auto it = dims.find(v);
        if (it == dims.end())
            throw std::invalid_argument("no dimension for vertex " + v);
        return it->second;
    }
    const Matrix& map(const std::string& e) const {
        auto it = maps.find(e);
        if (it == maps.end())
            throw std::invalid_argument("no map for edge " + e);
        return it->second;
    }
    const Subspace& slot(const std::string& v, const std::string& s) const {
        auto vi = slot_spaces.find(v);
        if (vi != slot_spaces.end()) {
            auto si = vi->second.find(s);
            if (si != vi->second.end())
                return si->second;
        }
        throw std::invalid_argument("no subspace for slot " + v + "/" + s);
    }

    Matrix compose_path(const std::vector<std::string>& path) const {
        const DiagramEdge* first = shape.find_edge(path.front());
        Matrix acc = Matrix::identity(dim(first->src));
        for (const auto& label : path)
            acc = map(label) * acc;
        return acc;
    }

    std::vector<std::string> check() const {
        std::vector<std::string> bad = shape.check();
        for (const auto& v : shape.vertices)
            if (!dims.count(v) || dims.at(v) < 0)
                bad.push_back("vertex " + v + ": missing or negative dimension");
        for (const auto& e : shape.edges) {
            auto it = maps.find(e.label);
            if (it == maps.end()) {
                bad.push_back("edge " + e.label + ": missing map");
                continue;
            }
            if (it->second.rows != dim(e.tgt) || it->second.cols != dim(e.src))
                bad.push_back("edge " + e.label + ": map shape mismatch");
            else if (e.invertible && !is_invertible(it->second))
                bad.push_back("edge " + e.label + ": flagged invertible but matrix is singular");
        }
        for (const auto& [v, labels] : shape.slots)
            for (const auto& s : labels) {
                auto vi = slot_spaces.find(v);
                if (vi == slot_spaces.end() || !vi->second.count(s)) {
                    bad.push_back("slot " + v + "/" + s + ": missing subspace");
                    continue;
                }
                if (vi->second.at(s).ambient != dim(v))
                    bad.push_back("slot " + v + "/" + s + ": ambient mismatch");
            }
        for (const auto& r : shape.relations) {
            if (bad.empty() && !(compose_path(r.lhs) == compose_path(r.rhs)))
                bad.push_back("relation fails as a matrix identity");
        }
        return bad;
    }
    bool valid() const { return check().empty(); }

    static DiagramObject zero(const DiagramShape& sh) {
        DiagramObject o;
        o.shape = sh;
        for (const auto& v : sh.vertices)
            o.dims[v] = 0;
        for (const auto& e : sh.edges)
            o.maps[e.label] = Matrix(0, 0);
        for (const auto& [v, labels] : sh.slots)
            for (const auto& s : labels)
                o.slot_spaces[v][s] = Subspace::zero(0);
        return o;
    }
};

// Componentwise direct sum (b-block first, matching the extension
// convention used by the Ext engine).
inline DiagramObject direct_sum(const DiagramObject& b, const DiagramObject& a) {
    if (!(b.shape == a.shape))
        throw std::invalid_argument("direct_sum: shape mismatch");
    DiagramObject o;
    o.shape = b.shape;
    for (const auto& v : o.shape.vertices)
        o.dims[v] = b.dim(v) + a.dim(v);
    for (const auto& e : o.shape.edges) {
        Matrix top = hstack(b.map(e.label), Matrix(b.dim(e.tgt), a.dim(e.src)));
        Matrix bot = hstack(Matrix(a.dim(e.tgt), b.dim(e.src)), a.map(e.label));
        o.maps[e.label] = vstack(top, bot);
    }
    for (const auto& [v, labels] : o.shape.slots)
        for (const auto& s : labels) {
            const Subspace &sb = b.slot(v, s), &sa = a.slot(v, s);
            Matrix rows = vstack(hstack(sb.basis, Matrix(sb.dim(), a.dim(v))),
                                 hstack(Matrix(sa.dim(), b.dim(v)), sa.basis));
            o.slot_spaces[v][s] = Subspace::span(o.dims[v], rows);
        }
    return o;
}

struct DiagramMorphism {
    DiagramObject source;
    DiagramObject target;
    std::map<std::string, Matrix> components; // per vertex

    const Matrix& at(const std::string& v) const {
        auto it = components.find(v);
        if (it == components.end())
            throw std::invalid_argument("no component at vertex " + v);
        return it->second;
    }

    std::vector<std::string> check() const {
        std::vector<std::string> bad;
        if (!(source.shape == target.shape)) {
            bad.push_back("source and target shapes differ");
            return bad;
        }
        for (const auto& v : source.shape.vertices) {
            auto it = components.find(v);
            if (it == components.end()) {
                bad.push_back("missing component at " + v);
                continue;
            }
            if (it->second.rows != target.dim(v) || it->second.cols != source.dim(v))
                bad.push_back("component at " + v + ": shape mismatch");
        }
        if (!bad.empty())
            return bad;
        for (const auto& e : source.shape.edges)
            if (!(target.map(e.label) * at(e.src) == at(e.tgt) * source.map(e.label)))
                bad.push_back("square at edge " + e.label + " does not commute");
        for (const auto& [v, labels] : source.shape.slots)
            for (const auto& s : labels)
                if (!target.slot(v, s).contains(image_of(at(v), source.slot(v, s))))
                    bad.push_back("slot " + v + "/" + s + " not preserved");
        return bad;
    }
    bool valid() const { return check().empty(); }

    static DiagramMorphism identity(const DiagramObject& o) {
        DiagramMorphism m;
        m.source = o;
        m.target = o;
        for (const auto& v : o.shape.vertices)
            m.components[v] = Matrix::identity(o.dim(v));
        return m;
    }
    static DiagramMorphism zero(const DiagramObject& src, const DiagramObject& tgt) {
        DiagramMorphism m;
        m.source = src;
        m.target = tgt;
        for (const auto& v : src.shape.vertices)
            m.components[v] = Matrix(tgt.dim(v), src.dim(v));
        return m;
    }
};

inline DiagramMorphism compose(const DiagramMorphism& g, const DiagramMorphism& f) {
    DiagramMorphism m;
    m.source = f.source;
    m.target = g.target;
    for (const auto& v : f.source.shape.vertices)
        m.components[v] = g.at(v) * f.at(v);
    return m;
}

// Block layout for flattening per-vertex or per-edge matrix families
// into a single coordinate vector (row-major inside each block).
struct BlockLayout {
    std::vector<std::string> keys;
    std::vector<long> offset, rows, cols;
    long total = 0;

    void add(const std::string& k, long r, long c) {
        keys.push_back(k);
        offset.push_back(total);
        rows.push_back(r);
        cols.push_back(c);
        total += r * c;
    }
    long index_of(const std::string& k) const {
        for (size_t i = 0; i < keys.size(); ++i)
            if (keys[i] == k)
                return static_cast<long>(i);
        throw std::invalid_argument("layout: unknown key " + k);
    }
    long pos(long block, long i, long j) const { return offset[block] + i * cols[block] + j; }

    Matrix flatten(const std::map<std::string, Matrix>& blocks) const {
        Matrix v(total, 1);
        for (size_t b = 0; b < keys.size(); ++b) {
            const Matrix& m = blocks.at(keys[b]);
            for (long i = 0; i < rows[b]; ++i)
                for (long j = 0; j < cols[b]; ++j)
                    v.at(pos(static_cast<long>(b), i, j), 0) = m.at(i, j);
        }
        return v;
    }
    std::map<std::string, Matrix> unflatten(const Matrix& v) const {
        std::map<std::string, Matrix> out;
        for (size_t b = 0; b < keys.size(); ++b) {
            Matrix m(rows[b], cols[b]);
            for (long i = 0; i < rows[b]; ++i)
                for (long j = 0; j < cols[b]; ++j)
                    m.at(i, j) = v.at(pos(static_cast<long>(b), i, j), 0);
            out[keys[b]] = m;
        }
        return out;
    }
};

inline BlockLayout vertex_hom_layout(const DiagramObject& a, const DiagramObject& b) {
    BlockLayout l;
    for (const auto& v : a.shape.vertices)
        l.add(v, b.dim(v), a.dim(v));
    return l;
}

inline BlockLayout edge_cocycle_layout(const DiagramObject& a, const DiagramObject& b) {
    BlockLayout l;
    for (const auto& e : a.shape.edges)
        l.add(e.label, b.dim(e.tgt), a.dim(e.src));
    return l;
}

// Matrix of d : (u_v)_v -> (b_e u_src - u_tgt a_e)_e, cocycle rows,
// vertex-hom columns. Its kernel (with the slot system below) is the
// Hom space; its cokernel is Ext^1 for relation-free shapes.
inline Matrix edge_system(const DiagramObject& a, const DiagramObject& b) {
    BlockLayout vl = vertex_hom_layout(a, b);
    BlockLayout el = edge_cocycle_layout(a, b);
    Matrix sys(el.total, vl.total);
    for (size_t eb = 0; eb < el.keys.size(); ++eb) {
        const DiagramEdge& e = *a.shape.find_edge(el.keys[eb]);
        long vsrc = vl.index_of(e.src), vtgt = vl.index_of(e.tgt);
        const Matrix& be = b.map(e.label);
        const Matrix& ae = a.map(e.label);
        for (long i = 0; i < el.rows[eb]; ++i)
            for (long j = 0; j < el.cols[eb]; ++j) {
                long row = el.pos(static_cast<long>(eb), i, j);
                for (long k = 0; k < b.dim(e.src); ++k)
                    sys.at(row, vl.pos(vsrc, k, j)) += be.at(i, k);
                for (long l2 = 0; l2 < a.dim(e.tgt); ++l2)
                    sys.at(row, vl.pos(vtgt, i, l2)) -= ae.at(l2, j);
            }
    }
    return sys;
}

// Linear conditions "component maps each source slot into the target
// slot": (quotient by target slot) o u_v o (source slot inclusion) = 0.
inline Matrix slot_system(const DiagramObject& a, const DiagramObject& b) {
    BlockLayout vl = vertex_hom_layout(a, b);
    Matrix sys(0, vl.total);
    for (const auto& [v, labels] : a.shape.slots) {
        long vb = vl.index_of(v);
        for (const auto& s : labels) {
            Matrix q = quotient_map(b.slot(v, s));       // qr x dim_b(v)
            Matrix incl = a.slot(v, s).inclusion();      // dim_a(v) x sd
            Matrix rows(q.rows * incl.cols, vl.total);
            for (long qi = 0; qi < q.rows; ++qi)
                for (long m = 0; m < incl.cols; ++m) {
                    long row = qi * incl.cols + m;
                    for (long k = 0; k < b.dim(v); ++k)
                        for (long j = 0; j < a.dim(v); ++j)
                            if (q.at(qi, k) != 0 && incl.at(j, m) != 0)
                                rows.at(row, vl.pos(vb, k, j)) += q.at(qi, k) * incl.at(j, m);
                }
            sys = vstack(sys, rows);
        }
    }
    return sys;
}

// Solution space of all commuting-square and slot conditions, as a
// subspace of the flattened vertex-hom coordinates.
inline Subspace hom_solution_space(const DiagramObject& a, const DiagramObject& b) {
    if (!(a.shape == b.shape))
        throw std::invalid_argument("hom: shape mismatch");
    Matrix sys = vstack(edge_system(a, b), slot_system(a, b));
    return Subspace::span(vertex_hom_layout(a, b).total, kernel_basis(sys));
}

inline std::vector<DiagramMorphism> hom_basis(const DiagramObject& a, const DiagramObject& b) {
    Subspace sol = hom_solution_space(a, b);
    BlockLayout vl = vertex_hom_layout(a, b);
    std::vector<DiagramMorphism> basis;
    for (long r = 0; r < sol.dim(); ++r) {
        DiagramMorphism m;
        m.source = a;
        m.target = b;
        m.components = vl.unflatten(sol.basis.row(r).transpose());
        basis.push_back(std::move(m));
    }
    return basis;
}

struct KernelResult {
    DiagramObject object;
    DiagramMorphism inclusion;
    std::map<std::string, Subspace> vertex_kernels;
};

inline KernelResult kernel_object(const DiagramMorphism& m) {
    auto bad = m.check();
    if (!bad.empty())
        throw std::invalid_argument("kernel_object: invalid morphism: " + bad.front());
    KernelResult res;
    res.object.shape = m.source.shape;
    for (const auto& v : m.source.shape.vertices) {
        Subspace k = Subspace::span(m.source.dim(v), kernel_basis(m.at(v)));
        res.vertex_kernels[v] = k;
        res.object.dims[v] = k.dim();
    }
    for (const auto& e : m.source.shape.edges)
        res.object.maps[e.label] =
            restrict_map(m.source.map(e.label), res.vertex_kernels.at(e.src), res.vertex_kernels.at(e.tgt));
    for (const auto& [v, labels] : m.source.shape.slots)
        for (const auto& s : labels)
            res.object.slot_spaces[v][s] =
                in_coordinates(intersect(m.source.slot(v, s), res.vertex_kernels.at(v)), res.vertex_kernels.at(v));
    res.inclusion.source = res.object;
    res.inclusion.target = m.source;
    for (const auto& v : m.source.shape.vertices)
        res.inclusion.components[v] = res.vertex_kernels.at(v).inclusion();
    return res;
}

struct CokernelResult {
    DiagramObject object;
    DiagramMorphism projection;
    std::map<std::string, Subspace> vertex_images;
};

inline CokernelResult cokernel_object(const DiagramMorphism& m) {
    auto bad = m.check();
    if (!bad.empty())
        throw std::invalid_argument("cokernel_object: invalid morphism: " + bad.front());
    CokernelResult res;
    res.object.shape = m.target.shape;
    std::map<std::string, Matrix> qs;
    for (const auto& v : m.target.shape.vertices) {
        Subspace img = Subspace::span(m.target.dim(v), m.at(v).transpose());
        res.vertex_images[v] = img;
        qs[v] = quotient_map(img);
        res.object.dims[v] = qs[v].rows;
    }
    for (const auto& e : m.target.shape.edges)
        res.object.maps[e.label] =
            qs.at(e.tgt) * m.target.map(e.label) * quotient_section(res.vertex_images.at(e.src));
    for (const auto& [v, labels] : m.target.shape.slots)
        for (const auto& s : labels)
            res.object.slot_spaces[v][s] = image_of(qs.at(v), m.target.slot(v, s));
    res.projection.source = m.target;
    res.projection.target = res.object;
    for (const auto& v : m.target.shape.vertices)
        res.projection.components[v] = qs.at(v);
    return res;
}

// Factor a test morphism killed by m through the kernel inclusion.
inline DiagramMorphism factor_through_kernel(const KernelResult& k, const DiagramMorphism& t) {
    DiagramMorphism w;
    w.source = t.source;
    w.target = k.object;
    for (const auto& v : t.source.shape.vertices) {
        const Subspace& kv = k.vertex_kernels.at(v);
        auto piv = kv.pivot_cols();
        Matrix comp(kv.dim(), t.source.dim(v));
        for (long i = 0; i < comp.rows; ++i)
            for (long j = 0; j < comp.cols; ++j)
                comp.at(i, j) = t.at(v).at(piv[i], j);
        w.components[v] = comp;
    }
    return w;
}

} // namespace ogus
