#include "chemoflow/config.hpp"

#include <fstream>
#include <nlohmann/json.hpp>
#include <set>
#include <sstream>

#include "chemoflow/errors.hpp"

namespace chemoflow {

namespace {

using nlohmann::json;

std::string join(const std::string& path, const std::string& key) {
    return path.empty() ? key : path + "." + key;
}

// Walks one JSON object, remembering which keys were consumed so that
// leftovers can be reported as unknown.
class ObjectReader {
public:
    ObjectReader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
        if (!j_.is_object()) throw ConfigError(where() + ": expected an object");
    }

    bool has(const std::string& key) const { return j_.contains(key); }
    std::string path(const std::string& key) const { return join(path_, key); }

    const json* find(const std::string& key) {
        seen_.insert(key);
        auto it = j_.find(key);
        return it == j_.end() ? nullptr : &*it;
    }

    double number(const std::string& key, double fallback) {
        const json* v = find(key);
        if (v == nullptr) return fallback;
        if (!v->is_number()) throw ConfigError(path(key) + ": expected a number");
        return v->get<double>();
    }

    std::int64_t integer(const std::string& key, std::int64_t fallback) {
        const json* v = find(key);
        if (v == nullptr) return fallback;
        if (!v->is_number_integer()) throw ConfigError(path(key) + ": expected an integer");
        return v->get<std::int64_t>();
    }

    std::string string(const std::string& key, const std::string& fallback) {
        const json* v = find(key);
        if (v == nullptr) return fallback;
        if (!v->is_string()) throw ConfigError(path(key) + ": expected a string");
        return v->get<std::string>();
    }

    void finish() const {
        std::string unknown;
        for (auto it = j_.begin(); it != j_.end(); ++it) {
            if (seen_.count(it.key()) == 0) {
                unknown += (unknown.empty() ? "" : ", ") + path(it.key());
            }
        }
        if (!unknown.empty()) throw ConfigError("unknown configuration key(s): " + unknown);
    }

private:
    std::string where() const { return path_.empty() ? "configuration" : path_; }

    const json& j_;
    std::string path_;
    std::set<std::string> seen_;
};

// Scalar broadcast or an array with one entry per simulated axis.
template <class T>
std::array<T, 3> per_axis(const json* v, const std::string& path, int dim, std::array<T, 3> fallback,
                          T unused) {
    std::array<T, 3> out = fallback;
    if (v != nullptr) {
        if (v->is_number()) {
            if constexpr (std::is_integral_v<T>) {
                if (!v->is_number_integer() || v->get<std::int64_t>() < 0) {
                    throw ConfigError(path + ": expected a nonnegative integer");
                }
            }
            out.fill(v->get<T>());
        } else if (v->is_array()) {
            if (static_cast<int>(v->size()) != dim) {
                throw ConfigError(path + ": expected " + std::to_string(dim) + " entries");
            }
            for (int a = 0; a < dim; ++a) {
                const json& e = (*v)[a];
                if constexpr (std::is_integral_v<T>) {
                    if (!e.is_number_integer() || e.get<std::int64_t>() < 0) {
                        throw ConfigError(path + "[" + std::to_string(a) + "]: expected a nonnegative integer");
                    }
                } else if (!e.is_number()) {
                    throw ConfigError(path + "[" + std::to_string(a) + "]: expected a number");
                }
                out[a] = e.get<T>();
            }
        } else {
            throw ConfigError(path + ": expected a number or an array");
        }
    }
    for (int a = dim; a < 3; ++a) out[a] = unused;
    return out;
}

template <class Fn>
void checked(const std::string& path, Fn&& fn) {
    try {
        fn();
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        throw ConfigError(path + ": " + e.what());
    }
}

RunConfig run_config_from_json(const json& root, const std::string& base_path) {
    RunConfig cfg;
    ObjectReader top(root, base_path);

    if (!top.has("dimension")) throw ConfigError(top.path("dimension") + ": missing required key");
    const std::int64_t dim = top.integer("dimension", 2);
    if (dim < 1 || dim > 3) throw ConfigError(top.path("dimension") + ": must be 1, 2 or 3");
    cfg.dimension = static_cast<int>(dim);

    if (const json* g = top.find("grid")) {
        ObjectReader grid(*g, top.path("grid"));
        cfg.cells = per_axis<std::size_t>(grid.find("cells"), grid.path("cells"), cfg.dimension,
                                          {64, 64, 64}, 1);
        cfg.lengths = per_axis<double>(grid.find("lengths"), grid.path("lengths"), cfg.dimension,
                                       {1.0, 1.0, 1.0}, 1.0);
        grid.finish();
    } else {
        cfg.cells = per_axis<std::size_t>(nullptr, "", cfg.dimension, {64, 64, 64}, 1);
    }
    checked(top.path("grid"), [&] { (void)cfg.grid(); });

    if (const json* m = top.find("model")) {
        ObjectReader model(*m, top.path("model"));
        ModelParams& mp = cfg.model;
        mp.chi = model.number("chi", mp.chi);
        mp.sigma = model.number("sigma", mp.sigma);
        mp.xi = model.number("xi", mp.xi);
        mp.theory_n = static_cast<int>(model.integer("theory_n", mp.theory_n));
        if (const json* r = model.find("reaction")) {
            ObjectReader reaction(*r, model.path("reaction"));
            ReactionSpec& rs = mp.reaction;
            const std::string variant = reaction.string("variant", std::string(to_string(rs.variant)));
            checked(reaction.path("variant"), [&] { rs.variant = reaction_variant_from_string(variant); });
            rs.alpha = reaction.number("alpha", rs.alpha);
            rs.beta = reaction.number("beta", rs.beta);
            rs.mu = reaction.number("mu", rs.mu);
            reaction.finish();
            if (rs.variant == ReactionVariant::NonlocalLogistic) {
                if (!(rs.alpha >= 1.0)) throw ConfigError(reaction.path("alpha") + ": nonlocal reaction requires alpha >= 1");
                if (!(rs.beta > 1.0)) throw ConfigError(reaction.path("beta") + ": nonlocal reaction requires beta > 1");
            }
            if (rs.variant == ReactionVariant::LocalLogistic) {
                if (!(rs.mu > 0.0)) throw ConfigError(reaction.path("mu") + ": local reaction requires mu > 0");
                if (!(rs.alpha > 0.0)) throw ConfigError(reaction.path("alpha") + ": local reaction requires alpha > 0");
            }
        }
        model.finish();
        if (!(mp.chi >= 0.0)) throw ConfigError(model.path("chi") + ": must be >= 0");
        if (!(mp.sigma >= 1.0)) throw ConfigError(model.path("sigma") + ": must be >= 1");
        if (!(mp.xi > 0.0 && mp.xi <= 1.0)) throw ConfigError(model.path("xi") + ": must lie in (0, 1]");
        if (mp.theory_n < 3) throw ConfigError(model.path("theory_n") + ": must be >= 3");
    }

    if (const json* i = top.find("initial")) {
        ObjectReader init(*i, top.path("initial"));
        InitialCondition& ic = cfg.initial;
        const std::string kind = init.string("kind", std::string(to_string(ic.kind)));
        checked(init.path("kind"), [&] { ic.kind = initial_kind_from_string(kind); });
        ic.amplitude = init.number("amplitude", ic.amplitude);
        ic.background = init.number("background", ic.background);
        ic.center = per_axis<double>(init.find("center"), init.path("center"), cfg.dimension,
                                     ic.center, 0.5);
        ic.width = init.number("width", ic.width);
        ic.noise = init.number("noise", ic.noise);
        const std::int64_t seed = init.integer("seed", static_cast<std::int64_t>(ic.seed));
        if (seed < 0) throw ConfigError(init.path("seed") + ": must be >= 0");
        ic.seed = static_cast<std::uint64_t>(seed);
        ic.snapshot = init.string("snapshot", ic.snapshot);
        init.finish();
        if (!(ic.amplitude >= 0.0)) throw ConfigError(init.path("amplitude") + ": must be >= 0");
        if (!(ic.background >= 0.0)) throw ConfigError(init.path("background") + ": must be >= 0");
        if (!(ic.width > 0.0)) throw ConfigError(init.path("width") + ": must be > 0");
        if (ic.kind == InitialKind::FromSnapshot && ic.snapshot.empty()) {
            throw ConfigError(init.path("snapshot") + ": required for kind from_snapshot");
        }
    } else {
        for (int a = cfg.dimension; a < 3; ++a) cfg.initial.center[a] = 0.5;
    }

    if (const json* t = top.find("time")) {
        ObjectReader time(*t, top.path("time"));
        StepControls& sc = cfg.time;
        sc.t_end = time.number("t_end", sc.t_end);
        sc.dt_init = time.number("dt_init", sc.dt_init);
        sc.dt_min = time.number("dt_min", sc.dt_min);
        sc.dt_max = time.number("dt_max", sc.dt_max);
        sc.cfl_advect = time.number("cfl_advect", sc.cfl_advect);
        sc.cfl_react = time.number("cfl_react", sc.cfl_react);
        sc.u_blowup = time.number("u_blowup", sc.u_blowup);
        time.finish();
    }
    checked(top.path("time"), [&] { cfg.time.validate(); });

    if (const json* o = top.find("output")) {
        ObjectReader out(*o, top.path("output"));
        OutputSpec& os = cfg.output;
        os.cadence_steps = out.integer("cadence_steps", os.cadence_steps);
        os.snapshot_every = out.integer("snapshot_every", os.snapshot_every);
        if (const json* ks = out.find("norm_k_list")) {
            if (!ks->is_array()) throw ConfigError(out.path("norm_k_list") + ": expected an array");
            os.norm_k_list.clear();
            for (std::size_t i = 0; i < ks->size(); ++i) {
                const json& e = (*ks)[i];
                const std::string p = out.path("norm_k_list") + "[" + std::to_string(i) + "]";
                if (!e.is_number()) throw ConfigError(p + ": expected a number");
                const double k = e.get<double>();
                if (!(k >= 1.0) || !std::isfinite(k)) throw ConfigError(p + ": k must be finite and >= 1");
                for (double prev : os.norm_k_list) {
                    if (prev == k) throw ConfigError(p + ": duplicate k");
                }
                os.norm_k_list.push_back(k);
            }
        }
        out.finish();
        if (os.cadence_steps < 1) throw ConfigError(out.path("cadence_steps") + ": must be >= 1");
        if (os.snapshot_every < 0) throw ConfigError(out.path("snapshot_every") + ": must be >= 0");
    }

    top.finish();
    return cfg;
}

json per_axis_json(const auto& values, int dim) {
    json a = json::array();
    for (int i = 0; i < dim; ++i) a.push_back(values[i]);
    return a;
}

json run_config_to_json(const RunConfig& c) {
    json j;
    j["dimension"] = c.dimension;
    j["grid"] = {{"cells", per_axis_json(c.cells, c.dimension)},
                 {"lengths", per_axis_json(c.lengths, c.dimension)}};
    const ReactionSpec& rs = c.model.reaction;
    j["model"] = {{"chi", c.model.chi},
                  {"sigma", c.model.sigma},
                  {"xi", c.model.xi},
                  {"theory_n", c.model.theory_n},
                  {"reaction",
                   {{"variant", std::string(to_string(rs.variant))},
                    {"alpha", rs.alpha},
                    {"beta", rs.beta},
                    {"mu", rs.mu}}}};
    const InitialCondition& ic = c.initial;
    j["initial"] = {{"kind", std::string(to_string(ic.kind))},
                    {"amplitude", ic.amplitude},
                    {"background", ic.background},
                    {"center", per_axis_json(ic.center, c.dimension)},
                    {"width", ic.width},
                    {"noise", ic.noise},
                    {"seed", ic.seed},
                    {"snapshot", ic.snapshot}};
    const StepControls& t = c.time;
    j["time"] = {{"t_end", t.t_end},           {"dt_init", t.dt_init},       {"dt_min", t.dt_min},
                 {"dt_max", t.dt_max},         {"cfl_advect", t.cfl_advect}, {"cfl_react", t.cfl_react},
                 {"u_blowup", t.u_blowup}};
    j["output"] = {{"cadence_steps", c.output.cadence_steps},
                   {"norm_k_list", c.output.norm_k_list},
                   {"snapshot_every", c.output.snapshot_every}};
    return j;
}

json parse_json(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("malformed JSON: ") + e.what());
    }
}

Range range_from_json(const json* v, const std::string& path) {
    if (v == nullptr) throw ConfigError(path + ": missing required key");
    ObjectReader r(*v, path);
    Range out;
    if (!r.has("min")) throw ConfigError(r.path("min") + ": missing required key");
    out.min = r.number("min", 0.0);
    out.max = r.number("max", out.min);
    out.count = static_cast<int>(r.integer("count", 1));
    r.finish();
    if (out.count < 1) throw ConfigError(r.path("count") + ": must be >= 1");
    if (out.max < out.min) throw ConfigError(r.path("max") + ": must be >= min");
    return out;
}

}  // namespace

double Range::at(int i) const {
    if (count <= 1) return min;
    if (i == count - 1) return max;
    return min + (max - min) * static_cast<double>(i) / static_cast<double>(count - 1);
}

RunConfig parse_config(const std::string& text) { return run_config_from_json(parse_json(text), ""); }

std::string serialize_config(const RunConfig& config) { return run_config_to_json(config).dump(2) + "\n"; }

SweepConfig parse_sweep_config(const std::string& text) {
    const json root = parse_json(text);
    ObjectReader top(root, "");
    SweepConfig s;
    s.alpha_range = range_from_json(top.find("alpha_range"), "alpha_range");
    s.beta_range = range_from_json(top.find("beta_range"), "beta_range");
    s.worker_count = static_cast<int>(top.integer("worker_count", 1));
    const json* base = top.find("base");
    if (base == nullptr) throw ConfigError("base: missing required key");
    s.base = run_config_from_json(*base, "base");
    top.finish();
    if (s.worker_count < 1) throw ConfigError("worker_count: must be >= 1");
    if (s.base.model.reaction.variant != ReactionVariant::NonlocalLogistic) {
        throw ConfigError("base.model.reaction.variant: sweeps require the nonlocal reaction");
    }
    if (!(s.alpha_range.min >= 1.0)) throw ConfigError("alpha_range.min: alpha must be >= 1");
    if (!(s.beta_range.min > 1.0)) throw ConfigError("beta_range.min: beta must be > 1");
    return s;
}

std::string serialize_sweep_config(const SweepConfig& config) {
    json j;
    auto range = [](const Range& r) { return json{{"min", r.min}, {"max", r.max}, {"count", r.count}}; };
    j["alpha_range"] = range(config.alpha_range);
    j["beta_range"] = range(config.beta_range);
    j["worker_count"] = config.worker_count;
    j["base"] = run_config_to_json(config.base);
    return j.dump(2) + "\n";
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace chemoflow
