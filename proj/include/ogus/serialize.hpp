// JSON (de)serialization for every object format the CLI speaks.
// Rationals travel as "a/b" strings ("a" when the denominator is 1),
// matrices as row-major arrays of such strings; all shapes are pinned
// by the surrounding dimension fields, so empty matrices stay
// unambiguous. Keys are emitted in sorted order, which together with
// exact arithmetic makes every serialization byte-reproducible.
#pragma once

#include "ogus/fibre.hpp"
#include "ogus/laumon.hpp"
#include "ogus/mfog_a.hpp"

#include <json.hpp>

namespace ogus {

using Json = nlohmann::json;

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace io {

inline Json to_json(const Matrix& m) {
    Json rows = Json::array();
    for (long i = 0; i < m.rows; ++i) {
        Json row = Json::array();
        for (long j = 0; j < m.cols; ++j)
            row.push_back(to_string(m.at(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

// Shape-checked read; rows = -1 lets the array determine the row count.
inline Matrix matrix_from(const Json& j, long rows, long cols, const std::string& what) {
    if (!j.is_array())
        throw ParseError(what + ": expected an array of rows");
    long r = static_cast<long>(j.size());
    if (rows >= 0 && r != rows)
        throw ParseError(what + ": expected " + std::to_string(rows) + " rows");
    Matrix m(r, cols);
    for (long i = 0; i < r; ++i) {
        const Json& row = j[static_cast<size_t>(i)];
        if (!row.is_array() || static_cast<long>(row.size()) != cols)
            throw ParseError(what + ": row " + std::to_string(i) + " must have " +
                             std::to_string(cols) + " entries");
        for (long c = 0; c < cols; ++c) {
            const Json& cell = row[static_cast<size_t>(c)];
            if (!cell.is_string())
                throw ParseError(what + ": entries must be rational strings");
            try {
                m.at(i, c) = parse_rational(cell.get<std::string>());
            } catch (const std::invalid_argument& e) {
                throw ParseError(what + ": " + e.what());
            }
        }
    }
    return m;
}

inline long int_from(const Json& j, const std::string& key) {
    if (!j.contains(key) || !j[key].is_number_integer())
        throw ParseError("missing integer field '" + key + "'");
    return j[key].get<long>();
}

inline Json to_json(const Filtration& f) {
    Json steps = Json::array();
    for (const auto& [i, s] : f.steps)
        steps.push_back(Json::array({i, to_json(s.basis)}));
    return steps;
}

inline Filtration filtration_from(const Json& j, FiltrationKind kind, long ambient,
                                  const std::string& what) {
    Filtration f;
    f.kind = kind;
    f.ambient = ambient;
    if (!j.is_array())
        throw ParseError(what + ": expected an array of [index, basis] pairs");
    for (const auto& step : j) {
        if (!step.is_array() || step.size() != 2 || !step[0].is_number_integer())
            throw ParseError(what + ": each step is [index, basis-rows]");
        Matrix basis = matrix_from(step[1], -1, ambient, what + " basis");
        f.steps.emplace_back(step[0].get<long>(), Subspace::span(ambient, basis));
    }
    return f;
}

inline Json to_json(const std::vector<FrobeniusAt>& frobenii) {
    Json out = Json::array();
    for (const auto& fr : frobenii) {
        Json o;
        o["place"] = fr.place.label;
        o["prime"] = fr.place.prime;
        o["phi"] = to_json(fr.phi);
        o["exempt"] = fr.exempt;
        out.push_back(std::move(o));
    }
    return out;
}

inline std::vector<FrobeniusAt> frobenii_from(const Json& j, long dim) {
    if (!j.is_array())
        throw ParseError("frobenii: expected an array");
    std::vector<FrobeniusAt> out;
    for (const auto& o : j) {
        FrobeniusAt fr;
        if (!o.contains("place") || !o["place"].is_string())
            throw ParseError("frobenii: missing place label");
        fr.place.label = o["place"].get<std::string>();
        fr.place.prime = int_from(o, "prime");
        fr.phi = matrix_from(o.value("phi", Json::array()), dim, dim, "phi at " + fr.place.label);
        fr.exempt = o.value("exempt", false);
        out.push_back(std::move(fr));
    }
    return out;
}

inline Json to_json(const FilteredPhiModule& d) {
    Json j;
    j["dim"] = d.dim;
    j["filtration"] = to_json(d.filtration);
    j["frobenii"] = to_json(d.frobenii);
    return j;
}

inline FilteredPhiModule phi_module_from(const Json& j) {
    FilteredPhiModule d;
    d.dim = int_from(j, "dim");
    d.filtration = filtration_from(j.value("filtration", Json::array()), FiltrationKind::decreasing,
                                   d.dim, "filtration");
    d.frobenii = frobenii_from(j.value("frobenii", Json::array()), d.dim);
    return d;
}

inline Json to_json(const OgusObject& o) {
    Json j;
    j["t_dr"] = o.t_dr;
    j["weight"] = to_json(o.weight);
    j["hodge"] = to_json(o.hodge);
    j["frobenii"] = to_json(o.frobenii);
    return j;
}

inline OgusObject ogus_object_from(const Json& j) {
    OgusObject o;
    o.t_dr = int_from(j, "t_dr");
    o.weight =
        filtration_from(j.value("weight", Json::array()), FiltrationKind::increasing, o.t_dr, "weight");
    o.hodge =
        filtration_from(j.value("hodge", Json::array()), FiltrationKind::decreasing, o.t_dr, "hodge");
    o.frobenii = frobenii_from(j.value("frobenii", Json::array()), o.t_dr);
    return o;
}

inline Json to_json(const OgusMorphism& m) {
    Json j;
    j["source"] = to_json(m.source);
    j["target"] = to_json(m.target);
    j["matrix"] = to_json(m.matrix);
    return j;
}

inline OgusMorphism ogus_morphism_from(const Json& j) {
    if (!j.contains("source") || !j.contains("target"))
        throw ParseError("morphism: needs source and target objects");
    OgusMorphism m;
    m.source = ogus_object_from(j["source"]);
    m.target = ogus_object_from(j["target"]);
    m.matrix = matrix_from(j.value("matrix", Json::array()), m.target.t_dr, m.source.t_dr, "matrix");
    return m;
}

inline Json to_json(const LinearizedLaumonMotive& m) {
    Json j;
    j["etale"] = to_json(m.etale);
    j["lie_f"] = m.lie_f;
    j["du_times"] = to_json(m.du_times);
    j["v"] = m.v_dim;
    j["u_m"] = m.u_m;
    j["j"] = to_json(m.j);
    j["q"] = to_json(m.q);
    j["alpha"] = to_json(m.alpha);
    j["gamma"] = to_json(m.gamma);
    return j;
}

inline LinearizedLaumonMotive motive_from(const Json& j) {
    if (!j.contains("etale"))
        throw ParseError("motive: missing etale object");
    LinearizedLaumonMotive m;
    m.etale = ogus_object_from(j["etale"]);
    m.lie_f = int_from(j, "lie_f");
    m.v_dim = int_from(j, "v");
    m.u_m = int_from(j, "u_m");
    long s = m.u_slot_dim(), lg = m.lie_g_dim(), t = m.etale.t_dr;
    m.du_times = matrix_from(j.value("du_times", Json::array()), lg, m.lie_f, "du_times");
    m.j = matrix_from(j.value("j", Json::array()), m.u_m, s, "j");
    m.q = matrix_from(j.value("q", Json::array()), m.lie_f, m.u_m, "q");
    m.alpha = matrix_from(j.value("alpha", Json::array()), m.v_dim, m.u_m, "alpha");
    m.gamma = matrix_from(j.value("gamma", Json::array()), t, m.u_m, "gamma");
    return m;
}

inline Json to_json(const MFOgAObject& o) {
    Json j = to_json(o.base);
    j["a0"] = o.a0;
    j["a1"] = o.a1;
    j["b0"] = o.b0;
    j["b1"] = o.b1;
    j["alpha"] = to_json(o.alpha);
    j["beta"] = to_json(o.beta);
    j["delta"] = to_json(o.delta);
    j["gamma"] = to_json(o.gamma);
    j["epsilon"] = to_json(o.epsilon);
    return j;
}

inline MFOgAObject mfog_a_from(const Json& j) {
    MFOgAObject o;
    o.base = ogus_object_from(j);
    o.a0 = int_from(j, "a0");
    o.a1 = int_from(j, "a1");
    o.b0 = int_from(j, "b0");
    o.b1 = int_from(j, "b1");
    o.alpha = matrix_from(j.value("alpha", Json::array()), o.a1, o.a0, "alpha");
    o.beta = matrix_from(j.value("beta", Json::array()), o.b1, o.b0, "beta");
    o.delta = matrix_from(j.value("delta", Json::array()), o.base.lie_dim(), o.b1, "delta");
    o.gamma = matrix_from(j.value("gamma", Json::array()), o.base.t_dr, o.a0, "gamma");
    o.epsilon = matrix_from(j.value("epsilon", Json::array()), o.b0, o.a0, "epsilon");
    return o;
}

inline Json to_json(const DiagramShape& sh) {
    Json j;
    j["vertices"] = sh.vertices;
    Json edges = Json::array();
    for (const auto& e : sh.edges) {
        Json eo;
        eo["label"] = e.label;
        eo["src"] = e.src;
        eo["tgt"] = e.tgt;
        eo["invertible"] = e.invertible;
        edges.push_back(std::move(eo));
    }
    j["edges"] = edges;
    Json slots = Json::object();
    for (const auto& [v, labels] : sh.slots)
        slots[v] = labels;
    j["slots"] = slots;
    Json rels = Json::array();
    for (const auto& r : sh.relations) {
        Json ro;
        ro["lhs"] = r.lhs;
        ro["rhs"] = r.rhs;
        rels.push_back(std::move(ro));
    }
    j["relations"] = rels;
    return j;
}

inline DiagramShape shape_from(const Json& j) {
    DiagramShape sh;
    if (!j.contains("vertices") || !j["vertices"].is_array())
        throw ParseError("shape: missing vertices");
    for (const auto& v : j["vertices"])
        sh.vertices.push_back(v.get<std::string>());
    for (const auto& e : j.value("edges", Json::array())) {
        DiagramEdge ed;
        ed.label = e.at("label").get<std::string>();
        ed.src = e.at("src").get<std::string>();
        ed.tgt = e.at("tgt").get<std::string>();
        ed.invertible = e.value("invertible", false);
        sh.edges.push_back(std::move(ed));
    }
    if (j.contains("slots"))
        for (const auto& [v, labels] : j["slots"].items())
            for (const auto& s : labels)
                sh.slots[v].push_back(s.get<std::string>());
    for (const auto& r : j.value("relations", Json::array())) {
        PathRelation pr;
        for (const auto& l : r.value("lhs", Json::array()))
            pr.lhs.push_back(l.get<std::string>());
        for (const auto& l : r.value("rhs", Json::array()))
            pr.rhs.push_back(l.get<std::string>());
        sh.relations.push_back(std::move(pr));
    }
    sh.normalize();
    auto bad = sh.check();
    if (!bad.empty())
        throw ParseError("shape: " + bad.front());
    return sh;
}

inline Json to_json(const DiagramObject& o) {
    Json j;
    j["shape"] = to_json(o.shape);
    Json spaces = Json::object();
    for (const auto& [v, d] : o.dims)
        spaces[v] = d;
    j["spaces"] = spaces;
    Json maps = Json::object();
    for (const auto& [e, m] : o.maps)
        maps[e] = to_json(m);
    j["maps"] = maps;
    Json slots = Json::object();
    for (const auto& [v, ss] : o.slot_spaces) {
        Json vs = Json::object();
        for (const auto& [s, sub] : ss)
            vs[s] = to_json(sub.basis);
        slots[v] = vs;
    }
    j["slots"] = slots;
    return j;
}

inline DiagramObject diagram_object_from(const Json& j) {
    if (!j.contains("shape"))
        throw ParseError("diagram object: missing shape");
    DiagramObject o;
    o.shape = shape_from(j["shape"]);
    if (!j.contains("spaces") || !j["spaces"].is_object())
        throw ParseError("diagram object: missing spaces");
    for (const auto& [v, d] : j["spaces"].items()) {
        if (!d.is_number_integer())
            throw ParseError("diagram object: dimension of " + v + " must be an integer");
        o.dims[v] = d.get<long>();
    }
    for (const auto& e : o.shape.edges) {
        if (!j.contains("maps") || !j["maps"].contains(e.label))
            throw ParseError("diagram object: missing map for edge " + e.label);
        o.maps[e.label] =
            matrix_from(j["maps"][e.label], o.dim(e.tgt), o.dim(e.src), "map " + e.label);
    }
    for (const auto& [v, labels] : o.shape.slots)
        for (const auto& s : labels) {
            if (!j.contains("slots") || !j["slots"].contains(v) || !j["slots"][v].contains(s))
                throw ParseError("diagram object: missing slot " + v + "/" + s);
            Matrix basis = matrix_from(j["slots"][v][s], -1, o.dim(v), "slot " + v + "/" + s);
            o.slot_spaces[v][s] = Subspace::span(o.dim(v), basis);
        }
    return o;
}

inline Json to_json(const VertexFunctor& f) {
    Json j;
    j["vertex"] = f.vertex;
    j["mode"] = f.mode == VertexFunctor::Mode::plain
                    ? "plain"
                    : (f.mode == VertexFunctor::Mode::slot_sub ? "sub" : "quotient");
    j["slot"] = f.slot;
    return j;
}

inline VertexFunctor functor_from(const Json& j) {
    VertexFunctor f;
    f.vertex = j.at("vertex").get<std::string>();
    std::string mode = j.value("mode", "plain");
    if (mode == "plain")
        f.mode = VertexFunctor::Mode::plain;
    else if (mode == "sub")
        f.mode = VertexFunctor::Mode::slot_sub;
    else if (mode == "quotient")
        f.mode = VertexFunctor::Mode::slot_quotient;
    else
        throw ParseError("functor: unknown mode '" + mode + "'");
    f.slot = j.value("slot", "");
    return f;
}

inline Json to_json(const FibreProductCategory& c) {
    Json j;
    j["x"] = to_json(c.x);
    j["y"] = to_json(c.y);
    j["f"] = to_json(c.f);
    j["g"] = to_json(c.g);
    j["combined"] = to_json(c.combined);
    j["theta_edge"] = c.theta_edge;
    j["f_endpoint"] = c.f_endpoint;
    j["g_endpoint"] = c.g_endpoint;
    j["f_aux_edge"] = c.f_aux_edge;
    j["g_aux_edge"] = c.g_aux_edge;
    return j;
}

inline FibreProductCategory fibre_category_from(const Json& j) {
    if (!j.contains("x") || !j.contains("y") || !j.contains("f") || !j.contains("g"))
        throw ParseError("fibre product: needs x, y shapes and f, g functors");
    // rebuild from the defining data so the combined shape is canonical
    return fibre_product_category(shape_from(j["x"]), shape_from(j["y"]), functor_from(j["f"]),
                                  functor_from(j["g"]));
}

} // namespace io

} // namespace ogus
