#include "polyflow/io.hpp"

#include <fstream>
#include <sstream>

#include "polyflow/errors.hpp"

namespace polyflow {

namespace {

Rational rational_from_json(const json& v, const std::string& where) {
    if (v.is_string()) {
        try {
            return parse_rational(v.get<std::string>());
        } catch (const Error& e) {
            throw SchemaError(where + ": " + e.what());
        }
    }
    if (v.is_number_integer()) return Rational(v.get<long long>());
    if (v.is_number()) {
        throw SchemaError(where + ": non-integer numbers must be quoted strings "
                                  "so they convert exactly");
    }
    throw SchemaError(where + ": expected a rational string");
}

RVector vector_from_json(const json& v, const std::string& where) {
    if (!v.is_array()) throw SchemaError(where + ": expected an array");
    RVector out(static_cast<Eigen::Index>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i) {
        out(static_cast<Eigen::Index>(i)) =
            rational_from_json(v[i], where + "[" + std::to_string(i) + "]");
    }
    return out;
}

json vector_to_json(const RVector& v) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(to_string(v(i)));
    return out;
}

json matrix_to_json(const RMatrix& m) {
    json out = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(to_string(m(r, c)));
        out.push_back(row);
    }
    return out;
}

void require_format(const json& doc) {
    if (!doc.is_object() || !doc.contains("format") || doc["format"] != kFormatTag) {
        throw SchemaError(std::string("document must carry \"format\": \"") + kFormatTag +
                          "\"");
    }
}

const char* event_name(EventKind kind) {
    switch (kind) {
        case EventKind::Start: return "start";
        case EventKind::Crossing: return "crossing";
        case EventKind::Equilibrium: return "equilibrium";
        case EventKind::Horizon: return "horizon";
    }
    return "?";
}

}  // namespace

json system_to_json(const HybridSystem& system) {
    json doc;
    doc["format"] = kFormatTag;
    doc["dimension"] = system.dimension();
    json regions = json::array();
    for (const auto& region : system.regions()) {
        json r;
        r["name"] = region.name;
        r["A"] = matrix_to_json(region.poly.A());
        r["b"] = vector_to_json(region.poly.b());
        r["drift"] = vector_to_json(region.drift);
        regions.push_back(r);
    }
    doc["regions"] = regions;
    return doc;
}

HybridSystem system_from_json(const json& doc) {
    require_format(doc);
    if (!doc.contains("dimension") || !doc["dimension"].is_number_integer()) {
        throw SchemaError("system: missing integer \"dimension\"");
    }
    const int n = doc["dimension"].get<int>();
    if (n < 1) throw SchemaError("system: dimension must be >= 1");
    if (!doc.contains("regions") || !doc["regions"].is_array() || doc["regions"].empty()) {
        throw SchemaError("system: missing nonempty \"regions\" array");
    }
    std::vector<Region> regions;
    for (const auto& r : doc["regions"]) {
        if (!r.is_object() || !r.contains("name") || !r["name"].is_string()) {
            throw SchemaError("region: missing string \"name\"");
        }
        const std::string name = r["name"].get<std::string>();
        const std::string where = "region '" + name + "'";
        if (!r.contains("A") || !r["A"].is_array()) throw SchemaError(where + ": missing \"A\"");
        if (!r.contains("b")) throw SchemaError(where + ": missing \"b\"");
        if (!r.contains("drift")) throw SchemaError(where + ": missing \"drift\"");
        const auto& rows = r["A"];
        RMatrix A(static_cast<Eigen::Index>(rows.size()), n);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const RVector row = vector_from_json(rows[i], where + ".A[" + std::to_string(i) + "]");
            if (row.size() != n) {
                throw SchemaError(where + ".A[" + std::to_string(i) + "]: expected " +
                                  std::to_string(n) + " entries");
            }
            A.row(static_cast<Eigen::Index>(i)) = row.transpose();
        }
        const RVector b = vector_from_json(r["b"], where + ".b");
        if (b.size() != A.rows()) throw SchemaError(where + ": |b| must match rows of A");
        const RVector drift = vector_from_json(r["drift"], where + ".drift");
        if (drift.size() != n) throw SchemaError(where + ": drift must have length " +
                                                 std::to_string(n));
        regions.push_back({name, Polyhedron(std::move(A), b), drift});
    }
    try {
        return HybridSystem(n, std::move(regions));
    } catch (const DimensionMismatch& e) {
        throw SchemaError(e.what());
    }
}

json potential_to_json(const PWLPotential& potential) {
    json doc;
    doc["format"] = kFormatTag;
    json pieces = json::array();
    for (const auto& piece : potential.pieces) {
        json p;
        p["slope"] = vector_to_json(piece.slope);
        p["offset"] = to_string(piece.offset);
        pieces.push_back(p);
    }
    doc["pieces"] = pieces;
    return doc;
}

PWLPotential potential_from_json(const json& doc) {
    require_format(doc);
    if (!doc.contains("pieces") || !doc["pieces"].is_array() || doc["pieces"].empty()) {
        throw SchemaError("potential: missing nonempty \"pieces\" array");
    }
    PWLPotential out;
    Eigen::Index dim = -1;
    for (std::size_t i = 0; i < doc["pieces"].size(); ++i) {
        const auto& p = doc["pieces"][i];
        const std::string where = "piece[" + std::to_string(i) + "]";
        if (!p.is_object() || !p.contains("slope") || !p.contains("offset")) {
            throw SchemaError(where + ": expected {slope, offset}");
        }
        Piece piece;
        piece.slope = vector_from_json(p["slope"], where + ".slope");
        piece.offset = rational_from_json(p["offset"], where + ".offset");
        if (dim < 0) dim = piece.slope.size();
        if (piece.slope.size() != dim || dim < 1) {
            throw SchemaError(where + ": slope dimensions inconsistent");
        }
        out.pieces.push_back(std::move(piece));
    }
    return out;
}

json validation_to_json(const ValidationReport& report) {
    json doc;
    doc["format"] = kFormatTag;
    doc["valid"] = report.valid;
    json checks = json::array();
    for (const auto& check : report.checks) {
        json c;
        c["name"] = check.name;
        c["passed"] = check.passed;
        c["details"] = check.details;
        checks.push_back(c);
    }
    doc["checks"] = checks;
    return doc;
}

json certificate_to_json(const HybridSystem& system, const Certificate& certificate) {
    json doc;
    doc["format"] = kFormatTag;
    doc["verdict"] = certificate.verdict == Verdict::Nonexpansive ? "nonexpansive"
                                                                  : "not_nonexpansive";
    json names = json::array();
    for (const auto& region : system.regions()) names.push_back(region.name);
    doc["regions"] = names;

    json sums = json::array();
    for (const auto& [i, j, sum] : certificate.pair_sums) {
        json s;
        s["i"] = i;
        s["j"] = j;
        s["sum"] = to_string(sum);
        sums.push_back(s);
    }
    doc["pair_sums"] = sums;

    if (certificate.witness) {
        const Witness& w = *certificate.witness;
        json jw;
        jw["i"] = w.i;
        jw["j"] = w.j;
        jw["x_i"] = vector_to_json(w.x_i);
        jw["x_j"] = vector_to_json(w.x_j);
        jw["value"] = to_string(w.value);
        doc["witness"] = jw;
    }
    if (certificate.weights) {
        json weights = json::array();
        for (const auto& [key, value] : certificate.weights->weights()) {
            json e;
            e["i"] = key.first;
            e["j"] = key.second;
            e["value"] = to_string(value);
            weights.push_back(e);
        }
        doc["weights"] = weights;
    }
    if (certificate.conservation) {
        json cons;
        json pairs = json::array();
        for (const auto& p : certificate.conservation->pairs) {
            json e;
            e["i"] = p.i;
            e["j"] = p.j;
            e["b_ij"] = to_string(p.b_ij);
            e["b_ji"] = to_string(p.b_ji);
            e["residual"] = to_string(p.residual);
            pairs.push_back(e);
        }
        json triples = json::array();
        for (const auto& t : certificate.conservation->triples) {
            json e;
            e["i"] = t.i;
            e["j"] = t.j;
            e["k"] = t.k;
            e["residual"] = to_string(t.residual);
            triples.push_back(e);
        }
        cons["pairs"] = pairs;
        cons["triples"] = triples;
        doc["conservation"] = cons;
    }
    return doc;
}

json gamma_to_json(const GammaDelta& gamma) {
    json doc;
    doc["format"] = kFormatTag;
    doc["gamma"] = to_string(gamma.gamma);
    doc["delta"] = to_string(gamma.delta);
    doc["raw_gamma"] = to_string(gamma.raw_gamma);
    doc["numeric_mode"] = gamma.numeric_mode;
    json triples = json::array();
    for (const auto& t : gamma.triples) {
        json e;
        e["i"] = t.i;
        e["j"] = t.j;
        e["k"] = t.k;
        e["epsilon_star"] = to_string(t.epsilon_star);
        triples.push_back(e);
    }
    doc["triples"] = triples;
    return doc;
}

std::string trajectory_to_csv(const Trajectory& trajectory, bool exact_columns) {
    if (trajectory.breakpoints.empty()) throw Error("empty trajectory");
    const Eigen::Index n = trajectory.breakpoints.front().state.size();
    std::ostringstream out;
    out << "t";
    for (Eigen::Index i = 1; i <= n; ++i) out << ",x" << i;
    out << ",event";
    if (exact_columns) {
        out << ",t_exact";
        for (Eigen::Index i = 1; i <= n; ++i) out << ",x" << i << "_exact";
    }
    out << "\n";
    for (const auto& bp : trajectory.breakpoints) {
        out << to_decimal_string(bp.time);
        for (Eigen::Index i = 0; i < n; ++i) out << "," << to_decimal_string(bp.state(i));
        out << "," << event_name(bp.event);
        if (exact_columns) {
            out << "," << to_string(bp.time);
            for (Eigen::Index i = 0; i < n; ++i) out << "," << to_string(bp.state(i));
        }
        out << "\n";
    }
    return out.str();
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError("cannot open file: " + path);
    json doc;
    try {
        in >> doc;
    } catch (const json::parse_error& e) {
        throw SchemaError("cannot parse " + path + ": " + e.what());
    }
    return doc;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw SchemaError("cannot open file for writing: " + path);
    out << content;
    if (!out) throw SchemaError("failed writing file: " + path);
}

}  // namespace polyflow
