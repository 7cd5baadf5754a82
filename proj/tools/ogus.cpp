// ogus: batch front end over the JSON object formats. Subcommands map
// one to one onto the library's public operations; exit codes are the
// API (0 ok, 1 invalid/not admissible, 2 undetermined, 3 malformed
// input, 64 usage, 66 missing file). Reports are deterministic given
// the inputs and the seed.
#include "ogus/serialize.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace ogus;

namespace {

constexpr int kExitValid = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitUndetermined = 2;
constexpr int kExitMalformed = 3;
constexpr int kExitUsage = 64;
constexpr int kExitNoInput = 66;

// subcommand name -> the library operation it exposes
const std::vector<std::pair<std::string, std::string>> kSubcommandTable = {
    {"validate", "ogus_structures.validate"},
    {"validate-a", "mfog_a.validate_a"},
    {"check-admissible", "filtered_phi.check_admissible"},
    {"hom", "ogus_structures.hom_basis"},
    {"hom-a", "mfog_a.hom_a"},
    {"hom-motives", "laumon_devissage.hom_motives"},
    {"kernel", "ogus_structures.kernel"},
    {"cokernel", "ogus_structures.cokernel"},
    {"ext1", "diagram_categories.ext1_basis"},
    {"fibre-product", "diagram_categories.fibre_product_category"},
    {"devissage", "laumon_devissage.assemble_disassemble"},
    {"ta", "mfog_a.t_a"},
    {"sharp", "mfog_a.sharp_s"},
    {"les-check", "diagram_categories.les_check"},
};

struct Verdict {
    std::string name;
    std::string status;
    std::string detail;
};

struct Report {
    std::string command;
    std::vector<std::pair<std::string, std::string>> inputs; // path, digest
    std::string seed;
    std::vector<Verdict> verdicts;
    std::vector<std::string> artifacts;

    Json to_json() const {
        Json j;
        j["command"] = command;
        Json ins = Json::array();
        for (const auto& [p, d] : inputs) {
            Json o;
            o["path"] = p;
            o["digest"] = d;
            ins.push_back(std::move(o));
        }
        j["inputs"] = ins;
        j["seed"] = seed;
        Json vs = Json::array();
        for (const auto& v : verdicts) {
            Json o;
            o["name"] = v.name;
            o["status"] = v.status;
            o["detail"] = v.detail;
            vs.push_back(std::move(o));
        }
        j["verdicts"] = vs;
        j["artifacts"] = artifacts;
        return j;
    }

    void print(bool as_json) const {
        if (as_json) {
            std::cout << to_json().dump(2) << "\n";
            return;
        }
        std::cout << "command: " << command << "\n";
        for (const auto& [p, d] : inputs)
            std::cout << "input: " << p << " digest=" << d << "\n";
        std::cout << "seed: " << seed << "\n";
        for (const auto& v : verdicts) {
            std::cout << "verdict " << v.name << ": " << v.status;
            if (!v.detail.empty())
                std::cout << " (" << v.detail << ")";
            std::cout << "\n";
        }
        for (const auto& a : artifacts)
            std::cout << "artifact: " << a << "\n";
    }
};

struct Cli {
    Report report;
    bool json_output = false;
    std::optional<std::uint64_t> seed_flag;
    long samples = 500;
    std::uint64_t input_digest = 1469598103934665603ULL;

    std::string slurp(const std::string& path) {
        std::ifstream in(path, std::ios::binary);
        if (!in) {
            std::cerr << "cannot open " << path << "\n";
            std::exit(kExitNoInput);
        }
        std::ostringstream buf;
        buf << in.rdbuf();
        std::string data = buf.str();
        std::uint64_t digest = fnv1a64(data);
        input_digest = fnv1a64(hex64(digest), input_digest);
        report.inputs.emplace_back(path, hex64(digest));
        return data;
    }

    Json load(const std::string& path) {
        std::string data = slurp(path);
        try {
            return Json::parse(data);
        } catch (const Json::parse_error& e) {
            std::cerr << path << ": " << e.what() << "\n";
            std::exit(kExitMalformed);
        }
    }

    std::uint64_t seed() {
        if (seed_flag)
            return *seed_flag;
        if (const char* env = std::getenv("OGUS_SEED"))
            return std::strtoull(env, nullptr, 10);
        return input_digest;
    }

    FalsificationOptions fopts() {
        FalsificationOptions o;
        o.samples = samples;
        o.seed = seed();
        return o;
    }

    void save_artifact(const std::string& path, const Json& payload) {
        std::ofstream out(path, std::ios::binary);
        if (!out) {
            std::cerr << "cannot write " << path << "\n";
            std::exit(kExitNoInput);
        }
        out << payload.dump(2) << "\n";
        report.artifacts.push_back(path);
    }

    int finish(int code) {
        report.seed = hex64(seed());
        report.print(json_output);
        return code;
    }
};

int report_validation(Cli& cli, const ValidationReport& rep) {
    for (const auto& i : rep.issues)
        cli.report.verdicts.push_back({i.clause + (i.where.empty() ? "" : "@" + i.where), "fail", i.detail});
    for (const auto& w : rep.warnings)
        cli.report.verdicts.push_back({"warning", "note", w});
    if (rep.ok() && !rep.undetermined)
        cli.report.verdicts.push_back({"object", "valid", ""});
    else if (rep.ok())
        cli.report.verdicts.push_back({"object", "undetermined", "admissibility could not be decided"});
    return rep.ok() ? (rep.undetermined ? kExitUndetermined : kExitValid) : kExitInvalid;
}

int run_validate(Cli& cli, const std::string& file) {
    OgusObject o = io::ogus_object_from(cli.load(file));
    return cli.finish(report_validation(cli, validate(o, cli.fopts())));
}

int run_validate_a(Cli& cli, const std::string& file) {
    MFOgAObject o = io::mfog_a_from(cli.load(file));
    return cli.finish(report_validation(cli, validate_a(o, cli.fopts())));
}

int run_check_admissible(Cli& cli, const std::string& file, const std::string& place) {
    FilteredPhiModule d = io::phi_module_from(cli.load(file));
    AdmissibilityVerdict v = check_admissible(d, place, cli.fopts());
    std::string detail = "t_H=" + std::to_string(v.t_h_total) + " t_N=" + std::to_string(v.t_n_total) +
                         " method=" + v.method + (v.detail.empty() ? "" : "; " + v.detail);
    cli.report.verdicts.push_back({"admissibility@" + place, to_string(v.status), detail});
    if (v.witness) {
        cli.report.verdicts.push_back(
            {"witness", "subspace", "dim " + std::to_string(v.witness->dim()) + " with t_H > t_N"});
    }
    switch (v.status) {
    case Admissibility::admissible: return cli.finish(kExitValid);
    case Admissibility::not_admissible: return cli.finish(kExitInvalid);
    default: return cli.finish(kExitUndetermined);
    }
}

int run_hom(Cli& cli, const std::string& fa, const std::string& fb) {
    OgusObject a = io::ogus_object_from(cli.load(fa));
    OgusObject b = io::ogus_object_from(cli.load(fb));
    auto basis = ogus_hom_basis(a, b);
    cli.report.verdicts.push_back({"hom", "computed", "dim " + std::to_string(basis.size())});
    return cli.finish(kExitValid);
}

int run_hom_a(Cli& cli, const std::string& fa, const std::string& fb) {
    MFOgAObject a = io::mfog_a_from(cli.load(fa));
    MFOgAObject b = io::mfog_a_from(cli.load(fb));
    auto basis = hom_a(a, b);
    cli.report.verdicts.push_back({"hom_a", "computed", "dim " + std::to_string(basis.size())});
    return cli.finish(kExitValid);
}

int run_hom_motives(Cli& cli, const std::string& fa, const std::string& fb) {
    LinearizedLaumonMotive a = io::motive_from(cli.load(fa));
    LinearizedLaumonMotive b = io::motive_from(cli.load(fb));
    auto basis = hom_motives(a, b);
    cli.report.verdicts.push_back({"hom_motives", "computed", "dim " + std::to_string(basis.size())});
    return cli.finish(kExitValid);
}

int run_kernel(Cli& cli, const std::string& file, const std::string& out, bool cokernel_side) {
    OgusMorphism m = io::ogus_morphism_from(cli.load(file));
    auto mrep = m.check();
    if (!mrep.ok()) {
        cli.report.verdicts.push_back(
            {"morphism", "invalid", mrep.issues.front().clause + ": " + mrep.issues.front().detail});
        return cli.finish(kExitInvalid);
    }
    ValidationReport orep;
    Json payload;
    long dim = 0;
    if (cokernel_side) {
        auto c = cokernel(m, cli.fopts());
        orep = c.object_report;
        payload = io::to_json(c.object);
        dim = c.object.t_dr;
    } else {
        auto k = kernel(m, cli.fopts());
        orep = k.object_report;
        payload = io::to_json(k.object);
        dim = k.object.t_dr;
    }
    cli.report.verdicts.push_back(
        {cokernel_side ? "cokernel" : "kernel", "computed", "t_dr " + std::to_string(dim)});
    if (!out.empty())
        cli.save_artifact(out, payload);
    return cli.finish(report_validation(cli, orep));
}

int run_ext1(Cli& cli, const std::string& fa, const std::string& fb) {
    DiagramObject a = io::diagram_object_from(cli.load(fa));
    DiagramObject b = io::diagram_object_from(cli.load(fb));
    auto e = ext1_basis(a, b);
    cli.report.verdicts.push_back(
        {"ext1", "computed",
         "dim " + std::to_string(e.dim) + "; cocycles " + std::to_string(e.cocycle_dim) +
             "; coboundaries " + std::to_string(e.coboundary_rank)});
    return cli.finish(kExitValid);
}

int run_fibre_product(Cli& cli, const std::string& fx, const std::string& fy, const VertexFunctor& f,
                      const VertexFunctor& g, const std::string& out) {
    DiagramShape x = io::shape_from(cli.load(fx));
    DiagramShape y = io::shape_from(cli.load(fy));
    FibreProductCategory cat = fibre_product_category(x, y, f, g);
    cli.report.verdicts.push_back({"fibre_product", "computed",
                                   std::to_string(cat.combined.vertices.size()) + " vertices, " +
                                       std::to_string(cat.combined.edges.size()) + " edges"});
    if (!out.empty())
        cli.save_artifact(out, io::to_json(cat));
    return cli.finish(kExitValid);
}

int run_devissage(Cli& cli, const std::string& file, bool roundtrip) {
    LinearizedLaumonMotive m = io::motive_from(cli.load(file));
    auto bad = m.check();
    if (!bad.empty()) {
        cli.report.verdicts.push_back({"motive", "invalid", bad.front()});
        return cli.finish(kExitInvalid);
    }
    auto [times, row] = disassemble(m);
    cli.report.verdicts.push_back(
        {"devissage", "computed", "etale t_dr " + std::to_string(times.etale.t_dr) + ", lie_f " +
                                      std::to_string(times.lie_f) + ", v " + std::to_string(row.v_dim)});
    if (roundtrip) {
        LinearizedLaumonMotive back = assemble(times, row);
        bool same = back.etale.encode() == m.etale.encode() && back.du_times == m.du_times &&
                    back.j == m.j && back.q == m.q && back.alpha == m.alpha && back.gamma == m.gamma;
        cli.report.verdicts.push_back({"roundtrip", same ? "identity" : "mismatch", ""});
        if (!same)
            return cli.finish(kExitInvalid);
    }
    return cli.finish(kExitValid);
}

int run_ta(Cli& cli, const std::string& file, const std::string& out) {
    LinearizedLaumonMotive m = io::motive_from(cli.load(file));
    MFOgAObject o = t_a(m);
    cli.report.verdicts.push_back({"ta", "computed",
                                   "t_dr " + std::to_string(o.base.t_dr) + ", a0 " +
                                       std::to_string(o.a0) + ", b0 " + std::to_string(o.b0)});
    if (!out.empty())
        cli.save_artifact(out, io::to_json(o));
    return cli.finish(report_validation(cli, validate_a(o, cli.fopts())));
}

int run_sharp(Cli& cli, const std::string& file) {
    MFOgAObject o = io::mfog_a_from(cli.load(file));
    SharpResult s = sharp_s(o);
    // dim A0 - dim Fil^0 = dim B0 for every cartesian object, so the
    // total is T + LieF + V
    cli.report.verdicts.push_back(
        {"sharp", "computed",
         "dim = " + std::to_string(s.dim) + " = T(" + std::to_string(o.base.t_dr) + ") + LieF(" +
             std::to_string(o.b0) + ") + V(" + std::to_string(o.a1) + ")"});
    return cli.finish(kExitValid);
}

int run_les_check(Cli& cli, const std::string& fcat, const std::string& fa, const std::string& fb) {
    FibreProductCategory cat = io::fibre_category_from(cli.load(fcat));
    DiagramObject a = io::diagram_object_from(cli.load(fa));
    DiagramObject b = io::diagram_object_from(cli.load(fb));
    if (!(a.shape == cat.combined) || !(b.shape == cat.combined)) {
        std::cerr << "objects do not live in the combined shape\n";
        return kExitMalformed;
    }
    LesReport rep = les_check(cat, a, b);
    for (const auto& n : rep.nodes)
        cli.report.verdicts.push_back({n.name, n.exact ? "exact" : "not-exact",
                                       "incoming rank " + std::to_string(n.incoming_rank) +
                                           ", outgoing kernel " + std::to_string(n.kernel_dim)});
    cli.report.verdicts.push_back(
        {"les", rep.all_exact ? "exact" : "not-exact",
         "hom " + std::to_string(rep.hom_p) + "/" + std::to_string(rep.hom_x) + "/" +
             std::to_string(rep.hom_y) + "/" + std::to_string(rep.hom_s) + "; ext " +
             std::to_string(rep.ext_p) + "/" + std::to_string(rep.ext_x) + "/" +
             std::to_string(rep.ext_y) + "/" + std::to_string(rep.ext_s)});
    return cli.finish(rep.all_exact ? kExitValid : kExitInvalid);
}

VertexFunctor functor_from_flags(const std::string& vertex, const std::string& mode,
                                 const std::string& slot) {
    VertexFunctor f;
    f.vertex = vertex;
    f.slot = slot;
    if (mode == "plain")
        f.mode = VertexFunctor::Mode::plain;
    else if (mode == "sub")
        f.mode = VertexFunctor::Mode::slot_sub;
    else if (mode == "quotient")
        f.mode = VertexFunctor::Mode::slot_quotient;
    else
        throw CLI::ValidationError("--mode must be plain, sub or quotient");
    return f;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact computer algebra for filtered phi-modules, Ogus structures and "
                 "linearized Laumon motives"};
    app.require_subcommand(0, 1);

    Cli cli;
    bool print_table = false;
    app.add_flag("--table", print_table, "print the subcommand/operation table and exit");

    std::string file_a, file_b, file_c, place, out_path;
    bool roundtrip = false;
    std::string f_vertex, f_mode = "plain", f_slot, g_vertex, g_mode = "plain", g_slot;

    auto add_common = [&](CLI::App* sub) {
        sub->add_flag("--json", cli.json_output, "emit the report as canonical JSON");
        sub->add_option_function<std::uint64_t>(
            "--seed", [&](std::uint64_t s) { cli.seed_flag = s; },
            "seed for randomized procedures (default: derived from the input digest)");
        sub->add_option("--samples", cli.samples, "falsification sample count");
    };

    CLI::App* validate_cmd = app.add_subcommand("validate", "validate an Ogus object");
    validate_cmd->add_option("file", file_a)->required();
    add_common(validate_cmd);

    CLI::App* validate_a_cmd = app.add_subcommand("validate-a", "validate a cartesian-square object");
    validate_a_cmd->add_option("file", file_a)->required();
    add_common(validate_a_cmd);

    CLI::App* check_cmd = app.add_subcommand("check-admissible", "weak admissibility at one place");
    check_cmd->add_option("file", file_a)->required();
    check_cmd->add_option("--place", place)->required();
    add_common(check_cmd);

    CLI::App* hom_cmd = app.add_subcommand("hom", "Hom dimension between Ogus objects");
    hom_cmd->add_option("a", file_a)->required();
    hom_cmd->add_option("b", file_b)->required();
    add_common(hom_cmd);

    CLI::App* hom_a_cmd = app.add_subcommand("hom-a", "Hom dimension between cartesian-square objects");
    hom_a_cmd->add_option("a", file_a)->required();
    hom_a_cmd->add_option("b", file_b)->required();
    add_common(hom_a_cmd);

    CLI::App* hom_m_cmd = app.add_subcommand("hom-motives", "Hom dimension between motives");
    hom_m_cmd->add_option("a", file_a)->required();
    hom_m_cmd->add_option("b", file_b)->required();
    add_common(hom_m_cmd);

    CLI::App* kernel_cmd = app.add_subcommand("kernel", "kernel of an Ogus morphism");
    kernel_cmd->add_option("morphism", file_a)->required();
    kernel_cmd->add_option("--out", out_path, "write the kernel object here");
    add_common(kernel_cmd);

    CLI::App* cokernel_cmd = app.add_subcommand("cokernel", "cokernel of an Ogus morphism");
    cokernel_cmd->add_option("morphism", file_a)->required();
    cokernel_cmd->add_option("--out", out_path, "write the cokernel object here");
    add_common(cokernel_cmd);

    CLI::App* ext_cmd = app.add_subcommand("ext1", "Ext^1 between diagram objects");
    ext_cmd->add_option("a", file_a)->required();
    ext_cmd->add_option("b", file_b)->required();
    add_common(ext_cmd);

    CLI::App* fp_cmd = app.add_subcommand("fibre-product", "combined shape of a fibre product");
    fp_cmd->add_option("x", file_a)->required();
    fp_cmd->add_option("y", file_b)->required();
    fp_cmd->add_option("--f-vertex", f_vertex)->required();
    fp_cmd->add_option("--f-mode", f_mode);
    fp_cmd->add_option("--f-slot", f_slot);
    fp_cmd->add_option("--g-vertex", g_vertex)->required();
    fp_cmd->add_option("--g-mode", g_mode);
    fp_cmd->add_option("--g-slot", g_slot);
    fp_cmd->add_option("--out", out_path, "write the fibre-product description here");
    add_common(fp_cmd);

    CLI::App* dev_cmd = app.add_subcommand("devissage", "split a motive into times data and alpha row");
    dev_cmd->add_option("motive", file_a)->required();
    dev_cmd->add_flag("--roundtrip", roundtrip, "reassemble and compare");
    add_common(dev_cmd);

    CLI::App* ta_cmd = app.add_subcommand("ta", "assemble the cartesian-square object of a motive");
    ta_cmd->add_option("motive", file_a)->required();
    ta_cmd->add_option("--out", out_path, "write the assembled object here");
    add_common(ta_cmd);

    CLI::App* sharp_cmd = app.add_subcommand("sharp", "sharp de Rham dimension and legs");
    sharp_cmd->add_option("object", file_a)->required();
    add_common(sharp_cmd);

    CLI::App* les_cmd = app.add_subcommand("les-check", "six-term Hom/Ext exactness report");
    les_cmd->add_option("product", file_a)->required();
    les_cmd->add_option("a", file_b)->required();
    les_cmd->add_option("b", file_c)->required();
    add_common(les_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    }

    if (print_table) {
        for (const auto& [name, op] : kSubcommandTable)
            std::cout << name << " " << op << "\n";
        return kExitValid;
    }
    if (app.get_subcommands().empty()) {
        std::cerr << app.help();
        return kExitUsage;
    }

    cli.report.command = app.get_subcommands().front()->get_name();
    try {
        if (validate_cmd->parsed())
            return run_validate(cli, file_a);
        if (validate_a_cmd->parsed())
            return run_validate_a(cli, file_a);
        if (check_cmd->parsed())
            return run_check_admissible(cli, file_a, place);
        if (hom_cmd->parsed())
            return run_hom(cli, file_a, file_b);
        if (hom_a_cmd->parsed())
            return run_hom_a(cli, file_a, file_b);
        if (hom_m_cmd->parsed())
            return run_hom_motives(cli, file_a, file_b);
        if (kernel_cmd->parsed())
            return run_kernel(cli, file_a, out_path, false);
        if (cokernel_cmd->parsed())
            return run_kernel(cli, file_a, out_path, true);
        if (ext_cmd->parsed())
            return run_ext1(cli, file_a, file_b);
        if (fp_cmd->parsed())
            return run_fibre_product(cli, file_a, file_b,
                                     functor_from_flags(f_vertex, f_mode, f_slot),
                                     functor_from_flags(g_vertex, g_mode, g_slot), out_path);
        if (dev_cmd->parsed())
            return run_devissage(cli, file_a, roundtrip);
        if (ta_cmd->parsed())
            return run_ta(cli, file_a, out_path);
        if (sharp_cmd->parsed())
            return run_sharp(cli, file_a);
        if (les_cmd->parsed())
            return run_les_check(cli, file_a, file_b, file_c);
    } catch (const ParseError& e) {
        std::cerr << e.what() << "\n";
        return kExitMalformed;
    } catch (const std::invalid_argument& e) {
        std::cerr << e.what() << "\n";
        return kExitMalformed;
    }
    return kExitUsage;
}
