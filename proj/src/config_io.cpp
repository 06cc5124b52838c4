#include "perron/config_io.hpp"

#include <fstream>
#include <sstream>

namespace perron {

const char* const kToolVersion = "0.1.0";

namespace {

Rat json_rat(const json& j, const std::string& what) {
    try {
        if (j.is_string()) return parse_rat(j.get<std::string>());
        if (j.is_number_integer()) return Rat(static_cast<long>(j.get<long long>()));
    } catch (const std::invalid_argument& e) {
        throw invalid_input(what + ": " + e.what());
    }
    throw invalid_input(what + ": expected \"p/q\" string or integer");
}

Int json_int(const json& j, const std::string& what) {
    if (!j.is_number_integer()) throw invalid_input(what + ": expected integer");
    return j.get<Int>();
}

std::vector<Int> json_int_vector(const json& j, const std::string& what) {
    if (!j.is_array() || j.empty()) throw invalid_input(what + ": expected nonempty array");
    std::vector<Int> out;
    for (const auto& v : j) out.push_back(json_int(v, what));
    return out;
}

std::vector<Rat> json_rat_vector(const json& j, const std::string& what) {
    if (!j.is_array() || j.empty()) throw invalid_input(what + ": expected nonempty array");
    std::vector<Rat> out;
    for (const auto& v : j) out.push_back(json_rat(v, what));
    return out;
}

const json& require(const json& j, const std::string& key) {
    auto it = j.find(key);
    if (it == j.end()) throw invalid_input("missing field \"" + key + "\"");
    return *it;
}

AffineMap parse_affine(const json& j) {
    AffineMap m;
    for (const auto& row : require(j, "matrix"))
        m.matrix.push_back(json_int_vector(row, "matrix row"));
    m.offset = json_int_vector(require(j, "offset"), "offset");
    m.validate();
    return m;
}

PiecewiseAffine parse_piecewise(const json& j, const std::string& what) {
    if (!j.is_array() || j.empty()) throw invalid_input(what + ": expected array of pieces");
    PiecewiseAffine f;
    for (const auto& p : j) {
        f.pieces.push_back(PiecewiseAffine::Piece{json_rat(require(p, "slope"), what + ".slope"),
                                                  json_rat(require(p, "intercept"),
                                                           what + ".intercept")});
    }
    return f;
}

IntegerMap parse_model(const json& j, const std::string& model) {
    if (model == "sis") {
        SISConfig cfg;
        cfg.M = json_int_vector(require(j, "M"), "M");
        cfg.delta_prime = json_rat_vector(require(j, "delta_prime"), "delta_prime");
        for (const auto& row : require(j, "B"))
            cfg.B.push_back(json_rat_vector(row, "B row"));
        return IntegerMap(cfg);
    }
    if (model == "aimd") {
        AIMDConfig cfg;
        cfg.capacity = json_int(require(j, "capacity"), "capacity");
        for (const auto& f : require(j, "A")) cfg.A.push_back(parse_piecewise(f, "A"));
        for (const auto& f : require(j, "B")) cfg.B.push_back(parse_piecewise(f, "B"));
        return IntegerMap(cfg);
    }
    if (model == "interference") {
        InterferenceConfig cfg;
        for (const auto& row : require(j, "h"))
            cfg.h.push_back(json_int_vector(row, "h row"));
        cfg.sigma = json_int_vector(require(j, "sigma"), "sigma");
        cfg.gamma = json_int_vector(require(j, "gamma"), "gamma");
        cfg.assignment = json_int_vector(require(j, "assignment"), "assignment");
        const std::string mode = require(j, "mode").get<std::string>();
        if (mode == "integral") cfg.mode = InterferenceConfig::Mode::integral;
        else if (mode == "ceiling") cfg.mode = InterferenceConfig::Mode::ceiling;
        else throw invalid_input("interference mode must be \"integral\" or \"ceiling\"");
        return IntegerMap(cfg);
    }
    throw invalid_input("unknown model \"" + model + "\"");
}

}  // namespace

IntegerMap parse_map_config(const json& j) {
    if (!j.is_object()) throw invalid_input("map config must be a JSON object");
    if (j.contains("model")) return parse_model(j, j["model"].get<std::string>());
    if (!j.contains("kind")) throw invalid_input("map config needs a \"kind\" or \"model\" field");
    const std::string kind = j["kind"].get<std::string>();

    if (kind == "affine") return IntegerMap(parse_affine(j));

    if (kind == "zigzag") {
        ZigzagMap m;
        for (const auto& row : require(j, "grid")) {
            std::vector<AffineMap> pieces;
            for (const auto& cell : row) pieces.push_back(parse_affine(cell));
            m.grid.push_back(std::move(pieces));
        }
        return IntegerMap(m);
    }

    if (kind == "ceiling_of_concave") {
        ConcaveRealMap F;
        for (const auto& comp : require(j, "components")) {
            std::vector<ConcaveRealMap::Piece> pieces;
            for (const auto& p : comp) {
                ConcaveRealMap::Piece piece;
                for (const auto& cf : require(p, "coeffs"))
                    piece.coeffs.push_back(json_rat(cf, "coeffs"));
                piece.intercept = json_rat(require(p, "intercept"), "intercept");
                pieces.push_back(std::move(piece));
            }
            F.components.push_back(std::move(pieces));
        }
        return IntegerMap(CeilingOfConcaveMap{std::move(F)});
    }

    if (kind == "custom_table") {
        CustomTableMap m;
        m.dimension = static_cast<int>(json_int(require(j, "dimension"), "dimension"));
        for (const auto& e : require(j, "entries")) {
            m.table.emplace(json_int_vector(require(e, "x"), "entry x"),
                            json_int_vector(require(e, "y"), "entry y"));
        }
        return IntegerMap(m);
    }

    throw invalid_input("unknown map kind \"" + kind + "\"");
}

IntegerMap load_map_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw invalid_input("cannot open config file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw invalid_input(std::string("config parse error: ") + e.what());
    }
    return parse_map_config(j);
}

namespace {

json lattice_to_json(const LatticeVector& x) {
    json a = json::array();
    for (Int v : x) a.push_back(v);
    return a;
}

}  // namespace

json slice_to_json(const SphereSlice& slice) {
    json j;
    j["d"] = slice.d;
    j["k"] = slice.k;
    j["c"] = slice.c ? json(rat_to_string(*slice.c)) : json(nullptr);
    return j;
}

json certificate_to_json(const ConstantsCertificate& cert) {
    json j;
    j["slice"] = slice_to_json(cert.slice);
    j["L"] = real_to_string(cert.L);
    if (cert.has_L_witness) {
        j["L_witness"] = json::array({lattice_to_json(cert.L_witness_x),
                                      lattice_to_json(cert.L_witness_y)});
        j["L_image_lambda_product"] = rat_to_string(cert.L_image_lambda);
        j["L_domain_lambda_product"] = rat_to_string(cert.L_domain_lambda);
    } else {
        j["L_witness"] = nullptr;
    }
    j["expansive"] = cert.expansive;
    j["c"] = rat_to_string(cert.c);
    j["c_witness"] = {{"x", lattice_to_json(cert.c_witness)}, {"index", cert.c_index}};
    j["a"] = rat_to_string(cert.a);
    j["a_witness"] = lattice_to_json(cert.a_witness);
    j["b"] = rat_to_string(cert.b);
    j["b_witness"] = lattice_to_json(cert.b_witness);
    j["exhaustive"] = cert.exhaustive;
    j["points"] = cert.points;
    j["pairs"] = cert.pairs;
    return j;
}

json residual_report_to_json(const ResidualReport& report) {
    json j;
    j["slice"] = slice_to_json(report.slice);
    j["y_k"] = lattice_to_json(report.y);
    j["image"] = lattice_to_json(report.image);
    j["residual_sq"] = rat_to_string(report.residual_sq);
    j["residual"] = real_to_string(report.residual);
    j["bound"] = real_to_string(report.bound);
    j["theorem_pass"] = report.search_mode == ResidualReport::SearchMode::heuristic
                            ? json(nullptr)
                            : json(report.theorem_pass);
    j["corollary_epsilon"] = real_to_string(report.corollary_epsilon);
    j["search_mode"] =
        report.search_mode == ResidualReport::SearchMode::heuristic ? "heuristic" : "exhaustive";
    j["a"] = report.a ? json(rat_to_string(*report.a)) : json(nullptr);
    j["b"] = report.b ? json(rat_to_string(*report.b)) : json(nullptr);
    j["lower_pass"] = report.lower_pass ? json(*report.lower_pass) : json(nullptr);
    j["upper_pass"] = report.upper_pass ? json(*report.upper_pass) : json(nullptr);
    j["lower_vacuous"] = report.lower_vacuous;
    return j;
}

json concavity_result_to_json(const ConcavityResult& result) {
    json j;
    j["pass"] = result.pass;
    j["equality_throughout"] = result.equality_throughout;
    j["decompositions"] = result.decompositions;
    if (result.counterexample) {
        const auto& ce = *result.counterexample;
        json parts = json::array();
        for (const auto& p : ce.parts) parts.push_back(lattice_to_json(p));
        json weights = json::array();
        for (Int w : ce.weights) weights.push_back(w);
        j["counterexample"] = {{"x", lattice_to_json(ce.x)},
                               {"m", ce.m},
                               {"weights", weights},
                               {"parts", parts}};
    } else {
        j["counterexample"] = nullptr;
    }
    return j;
}

json scalability_result_to_json(const ScalabilityResult& result) {
    json j;
    j["pass"] = result.pass;
    if (!result.pass) {
        j["counterexample"] = {{"m", result.m}, {"x", lattice_to_json(result.x)}};
    } else {
        j["counterexample"] = nullptr;
    }
    return j;
}

json manifest_to_json(const RunManifest& manifest) {
    json j;
    j["subcommand"] = manifest.subcommand;
    j["flags"] = manifest.flags;
    j["config_digest"] = manifest.config_digest ? json(*manifest.config_digest) : json(nullptr);
    j["version"] = manifest.version;
    j["timestamp"] = manifest.timestamp;
    j["seed"] = manifest.seed ? json(*manifest.seed) : json(nullptr);
    j["threads"] = manifest.threads;
    return j;
}

std::string content_digest(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
}

}  // namespace perron
