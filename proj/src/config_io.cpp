#include "nhd/config_io.hpp"

#include "nhd/errors.hpp"

#include <fstream>

namespace nhd {

namespace {

std::string at(const std::string& where, const std::string& key) { return where + "/" + key; }

const json& field(const json& j, const std::string& key, const std::string& where) {
    if (!j.is_object()) throw ParseError(where + (where.empty() ? "/" : "") + ": expected an object");
    auto it = j.find(key);
    if (it == j.end()) throw ParseError(at(where, key) + ": missing field");
    return *it;
}

double number(const json& j, const std::string& key, const std::string& where) {
    const auto& v = field(j, key, where);
    if (!v.is_number()) throw ParseError(at(where, key) + ": expected a number");
    return v.get<double>();
}

double number_or(const json& j, const std::string& key, const std::string& where, double fallback) {
    return j.contains(key) ? number(j, key, where) : fallback;
}

int integer_or(const json& j, const std::string& key, const std::string& where, int fallback) {
    if (!j.contains(key)) return fallback;
    const auto& v = j.at(key);
    if (!v.is_number_integer()) throw ParseError(at(where, key) + ": expected an integer");
    return v.get<int>();
}

std::string text(const json& j, const std::string& key, const std::string& where) {
    const auto& v = field(j, key, where);
    if (!v.is_string()) throw ParseError(at(where, key) + ": expected a string");
    return v.get<std::string>();
}

cplx complex_value(const json& v, const std::string& where) {
    if (v.is_number()) return {v.get<double>(), 0.0};
    if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
        return {v[0].get<double>(), v[1].get<double>()};
    throw ParseError(where + ": expected a number or [re, im]");
}

json complex_json(cplx z) { return json::array({z.real(), z.imag()}); }

std::vector<double> number_array(const json& j, const std::string& key, const std::string& where) {
    const auto& v = field(j, key, where);
    if (!v.is_array()) throw ParseError(at(where, key) + ": expected an array");
    std::vector<double> out;
    out.reserve(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!v[i].is_number())
            throw ParseError(at(where, key) + "/" + std::to_string(i) + ": expected a number");
        out.push_back(v[i].get<double>());
    }
    return out;
}

void check_schema(const json& j) {
    if (!j.is_object()) throw ParseError("/: expected an object");
    if (j.contains("schema_version")) {
        const auto& v = j.at("schema_version");
        if (!v.is_number_integer() || v.get<int>() != kSchemaVersion)
            throw ParseError("/schema_version: unsupported version (expected " +
                             std::to_string(kSchemaVersion) + ")");
    }
}

// Fields shared by both run kinds. `coupling` is left at zero.
SimConfig base_from_json(const json& j) {
    SimConfig c;
    c.continuum = continuum_from_json(field(j, "continuum", ""), "/continuum");
    c.omega_a = number_or(j, "omega_a", "", c.omega_a);
    c.t_start = number_or(j, "t_start", "", c.t_start);
    c.t_end = number_or(j, "t_end", "", c.t_end);
    c.dt = number_or(j, "dt", "", c.dt);
    c.chain_length = integer_or(j, "chain_length", "", c.chain_length);
    c.contour_delta = number_or(j, "contour_delta", "", c.contour_delta);
    c.sample_stride = integer_or(j, "sample_stride", "", c.sample_stride);
    c.snapshot_stride = integer_or(j, "snapshot_stride", "", c.snapshot_stride);
    return c;
}

json base_to_json(const SimConfig& c, const char* kind) {
    return json{{"schema_version", kSchemaVersion},
                {"kind", kind},
                {"continuum", to_json(c.continuum)},
                {"omega_a", c.omega_a},
                {"t_start", c.t_start},
                {"t_end", c.t_end},
                {"dt", c.dt},
                {"chain_length", c.chain_length},
                {"contour_delta", c.contour_delta},
                {"sample_stride", c.sample_stride},
                {"snapshot_stride", c.snapshot_stride}};
}

template <class F>
auto rethrow_as_parse(const std::string& where, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const ParseError&) {
        throw;
    } catch (const ConfigError& e) {
        throw ParseError(where + ": " + e.what());
    }
}

} // namespace

json to_json(const CouplingSpec& spec) {
    return std::visit(
        [](const auto& s) -> json {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, PoleExpansion>) {
                json terms = json::array();
                for (const auto& t : s.terms)
                    terms.push_back({{"amplitude", complex_json(t.amplitude)},
                                     {"pole", complex_json(t.pole)},
                                     {"order", t.order}});
                return {{"variant", "pole_expansion"}, {"terms", terms}};
            } else if constexpr (std::is_same_v<T, RealPartOnly>) {
                return {{"variant", "real_part_only"}, {"inner", to_json(*s.inner)}};
            } else if constexpr (std::is_same_v<T, BesselEnvelope>) {
                return {{"variant", "bessel_envelope"},
                        {"base", s.base},
                        {"perturbation", to_json(*s.perturbation)},
                        {"omega", s.omega}};
            } else if constexpr (std::is_same_v<T, Sampled>) {
                json values = json::array();
                for (const auto& v : s.values) values.push_back(complex_json(v));
                return {{"variant", "sampled"}, {"start", s.start}, {"step", s.step}, {"values", values}};
            } else {
                return {{"variant", "zero"}};
            }
        },
        spec.variant());
}

CouplingSpec coupling_from_json(const json& j, const std::string& where) {
    const std::string variant = text(j, "variant", where);
    return rethrow_as_parse(where, [&]() -> CouplingSpec {
        if (variant == "pole_expansion") {
            const auto& terms = field(j, "terms", where);
            if (!terms.is_array()) throw ParseError(at(where, "terms") + ": expected an array");
            std::vector<PoleTerm> out;
            for (std::size_t i = 0; i < terms.size(); ++i) {
                const std::string w = at(where, "terms") + "/" + std::to_string(i);
                PoleTerm t;
                t.amplitude = complex_value(field(terms[i], "amplitude", w), at(w, "amplitude"));
                t.pole = complex_value(field(terms[i], "pole", w), at(w, "pole"));
                const auto& order = field(terms[i], "order", w);
                if (!order.is_number_integer() || order.get<int>() < 1)
                    throw ParseError(at(w, "order") + ": expected an integer >= 1");
                t.order = order.get<int>();
                out.push_back(t);
            }
            return CouplingSpec::poles(std::move(out));
        }
        if (variant == "real_part_only")
            return CouplingSpec::real_part_of(
                coupling_from_json(field(j, "inner", where), at(where, "inner")));
        if (variant == "bessel_envelope")
            return CouplingSpec::bessel(
                number(j, "base", where),
                coupling_from_json(field(j, "perturbation", where), at(where, "perturbation")),
                number(j, "omega", where));
        if (variant == "sampled") {
            const auto& values = field(j, "values", where);
            if (!values.is_array()) throw ParseError(at(where, "values") + ": expected an array");
            std::vector<cplx> out;
            for (std::size_t i = 0; i < values.size(); ++i)
                out.push_back(complex_value(values[i], at(where, "values") + "/" + std::to_string(i)));
            return CouplingSpec::sampled(number(j, "start", where), number(j, "step", where),
                                         std::move(out));
        }
        if (variant == "zero") return CouplingSpec::zero();
        throw ParseError(at(where, "variant") + ": unknown coupling variant '" + variant + "'");
    });
}

json to_json(const ContinuumSpec& spec) {
    if (auto* c = spec.chain_params())
        return {{"variant", "tight_binding_chain"}, {"kappa", c->kappa}, {"kappa1", c->kappa1}};
    const auto& t = std::get<TabulatedDensity>(spec.variant());
    return {{"variant", "tabulated"}, {"omega", t.omega}, {"g_squared", t.g_squared}};
}

ContinuumSpec continuum_from_json(const json& j, const std::string& where) {
    const std::string variant = text(j, "variant", where);
    return rethrow_as_parse(where, [&]() -> ContinuumSpec {
        if (variant == "tight_binding_chain")
            return ContinuumSpec::chain(number(j, "kappa", where), number(j, "kappa1", where));
        if (variant == "tabulated") {
            if (j.contains("csv")) return ContinuumSpec::from_csv(text(j, "csv", where));
            return ContinuumSpec::tabulated(number_array(j, "omega", where),
                                            number_array(j, "g_squared", where));
        }
        throw ParseError(at(where, "variant") + ": unknown continuum variant '" + variant + "'");
    });
}

json to_json(const SimConfig& config) {
    json j = base_to_json(config, "lattice");
    j["coupling"] = to_json(config.coupling);
    return j;
}

json to_json(const DriveConfig& config) {
    json j = base_to_json(config.base, "driven");
    j.erase("contour_delta");
    j["a0"] = config.a0;
    j["delta_a"] = to_json(config.delta_a);
    j["drive_frequency"] = config.drive_frequency;
    j["drive_phase"] = config.drive_phase;
    if (config.rwa_a0) j["rwa_a0"] = *config.rwa_a0;
    return j;
}

json to_json(const RunConfig& config) {
    return std::visit([](const auto& c) { return to_json(c); }, config);
}

SimConfig sim_config_from_json(const json& j) {
    check_schema(j);
    SimConfig c = base_from_json(j);
    c.coupling = coupling_from_json(field(j, "coupling", ""), "/coupling");
    return c;
}

DriveConfig drive_config_from_json(const json& j) {
    check_schema(j);
    DriveConfig c;
    c.base = base_from_json(j);
    c.a0 = number(j, "a0", "");
    c.delta_a = coupling_from_json(field(j, "delta_a", ""), "/delta_a");
    c.drive_frequency = number(j, "drive_frequency", "");
    c.drive_phase = number_or(j, "drive_phase", "", 0.0);
    if (j.contains("rwa_a0")) c.rwa_a0 = number(j, "rwa_a0", "");
    return c;
}

RunConfig run_config_from_json(const json& j) {
    check_schema(j);
    const std::string kind = j.contains("kind") ? text(j, "kind", "") : std::string("lattice");
    if (kind == "lattice") return sim_config_from_json(j);
    if (kind == "driven") return drive_config_from_json(j);
    throw ParseError("/kind: unknown run kind '" + kind + "' (expected lattice or driven)");
}

RunConfig load_run_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open config file '" + path.string() + "'");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(path.string() + ": malformed JSON: " + e.what());
    }
    return run_config_from_json(j);
}

} // namespace nhd
