#include "jcryd/config.hpp"

#include <cmath>
#include <initializer_list>
#include <set>

#include "json.hpp"

namespace jcryd {

namespace {

using nlohmann::json;

std::pair<int, int> line_col(const std::string& text, std::size_t byte) {
    int line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') { ++line; col = 1; }
        else ++col;
    }
    return {line, col};
}

void check_keys(const json& obj, const std::string& where,
                std::initializer_list<const char*> allowed) {
    const std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& item : obj.items())
        if (ok.find(item.key()) == ok.end())
            throw ConfigError("unknown key '" + item.key() + "' in " + where);
}

const json& require(const json& obj, const std::string& where, const char* key) {
    auto it = obj.find(key);
    if (it == obj.end())
        throw ConfigError("missing key '" + std::string(key) + "' in " + where);
    return *it;
}

double get_double(const json& obj, const std::string& where, const char* key) {
    const json& v = require(obj, where, key);
    if (!v.is_number()) throw ConfigError("'" + std::string(key) + "' in " + where + " must be a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) throw ConfigError("'" + std::string(key) + "' in " + where + " must be finite");
    return d;
}

double get_double_or(const json& obj, const std::string& where, const char* key, double fallback) {
    if (obj.find(key) == obj.end()) return fallback;
    return get_double(obj, where, key);
}

int get_int(const json& obj, const std::string& where, const char* key) {
    const json& v = require(obj, where, key);
    if (!v.is_number_integer()) throw ConfigError("'" + std::string(key) + "' in " + where + " must be an integer");
    return v.get<int>();
}

int get_int_or(const json& obj, const std::string& where, const char* key, int fallback) {
    if (obj.find(key) == obj.end()) return fallback;
    return get_int(obj, where, key);
}

bool get_bool_or(const json& obj, const std::string& where, const char* key, bool fallback) {
    if (obj.find(key) == obj.end()) return fallback;
    const json& v = obj.at(key);
    if (!v.is_boolean()) throw ConfigError("'" + std::string(key) + "' in " + where + " must be a boolean");
    return v.get<bool>();
}

std::string get_string_or(const json& obj, const std::string& where, const char* key,
                          const std::string& fallback) {
    if (obj.find(key) == obj.end()) return fallback;
    const json& v = obj.at(key);
    if (!v.is_string()) throw ConfigError("'" + std::string(key) + "' in " + where + " must be a string");
    return v.get<std::string>();
}

std::pair<double, double> get_ramp_pair(const json& obj, const std::string& where, const char* key) {
    const json& v = require(obj, where, key);
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
        throw ConfigError("'" + std::string(key) + "' in " + where + " must be [start, end]");
    return {v[0].get<double>(), v[1].get<double>()};
}

SymIndex parse_sym_index(const json& obj, const std::string& where) {
    check_keys(obj, where, {"kind", "n_flips", "channel"});
    const std::string kind = get_string_or(obj, where, "kind", "ground");
    const int n = get_int_or(obj, where, "n_flips", 0);
    if (kind == "ground") return SymIndex::ground(n);
    if (kind == "excited") return SymIndex::excited(get_int_or(obj, where, "channel", 1), n);
    throw ConfigError("'kind' in " + where + " must be \"ground\" or \"excited\"");
}

ModelParams parse_model(const json& obj) {
    if (!obj.is_object()) throw ConfigError("'model' must be an object");
    check_keys(obj, "model", {"n_atoms", "omega_r_mhz", "delta_r_mhz", "omega_hf_mhz", "channels"});
    ModelParams p;
    p.n_atoms = get_int(obj, "model", "n_atoms");
    p.omega_r = mhz_to_angular(get_double(obj, "model", "omega_r_mhz"));
    p.delta_r = mhz_to_angular(get_double(obj, "model", "delta_r_mhz"));
    p.omega_hf = mhz_to_angular(get_double_or(obj, "model", "omega_hf_mhz", 0.0));
    if (obj.find("channels") != obj.end()) {
        const json& arr = obj.at("channels");
        if (!arr.is_array() || arr.empty())
            throw ConfigError("'channels' in model must be a non-empty array");
        p.channels.clear();
        for (std::size_t i = 0; i < arr.size(); ++i) {
            const std::string where = "model.channels[" + std::to_string(i) + "]";
            check_keys(arr[i], where, {"rabi_scale", "detuning_offset_mhz"});
            RydbergChannel ch;
            ch.rabi_scale = get_double_or(arr[i], where, "rabi_scale", 1.0);
            ch.detuning_offset = mhz_to_angular(get_double_or(arr[i], where, "detuning_offset_mhz", 0.0));
            p.channels.push_back(ch);
        }
    }
    try {
        p.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("model: ") + e.what());
    }
    return p;
}

ScanSection parse_scan(const json& obj) {
    check_keys(obj, "scan",
               {"delta_uw_min_mhz", "delta_uw_max_mhz", "points", "pulse_time_us",
                "omega_uw_mhz", "signal", "initial_state", "peak_threshold"});
    ScanSection s;
    s.delta_uw_min = mhz_to_angular(get_double(obj, "scan", "delta_uw_min_mhz"));
    s.delta_uw_max = mhz_to_angular(get_double(obj, "scan", "delta_uw_max_mhz"));
    s.points = get_int(obj, "scan", "points");
    if (s.points < 2) throw ConfigError("'points' in scan must be >= 2");
    if (!(s.delta_uw_min < s.delta_uw_max))
        throw ConfigError("scan range must satisfy min < max");
    s.pulse_time = get_double(obj, "scan", "pulse_time_us");
    if (!(s.pulse_time > 0.0)) throw ConfigError("'pulse_time_us' in scan must be > 0");
    s.omega_uw = mhz_to_angular(get_double(obj, "scan", "omega_uw_mhz"));
    const std::string sig = get_string_or(obj, "scan", "signal", "total_transfer");
    if (sig == "total_transfer") s.signal = SignalKind::TotalTransfer;
    else if (sig == "per_flip") s.signal = SignalKind::PerFlipPopulations;
    else throw ConfigError("'signal' in scan must be \"total_transfer\" or \"per_flip\"");
    if (obj.find("initial_state") != obj.end())
        s.initial_state = parse_sym_index(obj.at("initial_state"), "scan.initial_state");
    s.peak_threshold = get_double_or(obj, "scan", "peak_threshold", 0.1);
    return s;
}

RampSection parse_ramp(const json& obj) {
    check_keys(obj, "ramp", {"segments", "delta_uw_mhz", "step_us", "initial"});
    RampSection r;
    const json& segs = require(obj, "ramp", "segments");
    if (!segs.is_array() || segs.empty())
        throw ConfigError("'segments' in ramp must be a non-empty array");
    for (std::size_t i = 0; i < segs.size(); ++i) {
        const std::string where = "ramp.segments[" + std::to_string(i) + "]";
        check_keys(segs[i], where, {"duration_us", "delta_r_mhz", "omega_r_mhz", "omega_uw_mhz"});
        RampSegment seg;
        seg.duration = get_double(segs[i], where, "duration_us");
        auto ang = [](std::pair<double, double> v) {
            return std::pair<double, double>{mhz_to_angular(v.first), mhz_to_angular(v.second)};
        };
        seg.delta_r = ang(get_ramp_pair(segs[i], where, "delta_r_mhz"));
        seg.omega_r = ang(get_ramp_pair(segs[i], where, "omega_r_mhz"));
        seg.omega_uw = ang(get_ramp_pair(segs[i], where, "omega_uw_mhz"));
        r.protocol.segments.push_back(seg);
    }
    r.protocol.delta_uw = mhz_to_angular(get_double_or(obj, "ramp", "delta_uw_mhz", 0.0));
    r.step = get_double_or(obj, "ramp", "step_us", 0.0);
    try {
        r.protocol.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("ramp: ") + e.what());
    }

    const json& init = require(obj, "ramp", "initial");
    check_keys(init, "ramp.initial", {"dressed", "basis"});
    if (init.find("dressed") != init.end()) {
        const json& d = init.at("dressed");
        check_keys(d, "ramp.initial.dressed", {"n", "branch"});
        r.initial.dressed = true;
        r.initial.n = get_int(d, "ramp.initial.dressed", "n");
        const json& b = require(d, "ramp.initial.dressed", "branch");
        if (b.is_string()) {
            const std::string name = b.get<std::string>();
            if (name == "plus") r.initial.branch = 1;
            else if (name == "minus") r.initial.branch = 0;
            else throw ConfigError("'branch' must be \"plus\", \"minus\", or an index");
        } else if (b.is_number_integer()) {
            r.initial.branch = b.get<int>();
        } else {
            throw ConfigError("'branch' must be \"plus\", \"minus\", or an index");
        }
    } else if (init.find("basis") != init.end()) {
        r.initial.dressed = false;
        r.initial.basis = parse_sym_index(init.at("basis"), "ramp.initial.basis");
    } else {
        throw ConfigError("ramp.initial needs either 'dressed' or 'basis'");
    }
    return r;
}

PeaksSection parse_peaks(const json& obj) {
    check_keys(obj, "peaks", {"delta_over_omega_min", "delta_over_omega_max", "points", "drift"});
    PeaksSection s;
    s.min = get_double(obj, "peaks", "delta_over_omega_min");
    s.max = get_double(obj, "peaks", "delta_over_omega_max");
    s.points = get_int(obj, "peaks", "points");
    if (s.points < 2) throw ConfigError("'points' in peaks must be >= 2");
    if (!(s.min < s.max)) throw ConfigError("peaks range must satisfy min < max");
    if (obj.find("drift") != obj.end()) {
        const json& d = obj.at("drift");
        check_keys(d, "peaks.drift", {"fraction", "samples"});
        s.drift_fraction = get_double(d, "peaks.drift", "fraction");
        s.drift_samples = get_int_or(d, "peaks.drift", "samples", 400);
        if (*s.drift_fraction < 0.0) throw ConfigError("'fraction' in peaks.drift must be >= 0");
        if (s.drift_samples < 2) throw ConfigError("'samples' in peaks.drift must be >= 2");
    }
    return s;
}

FitSection parse_fit(const json& obj) {
    check_keys(obj, "fit", {"omega_r_grid_mhz", "noise_fraction", "constrain_origin"});
    FitSection f;
    const json& grid = require(obj, "fit", "omega_r_grid_mhz");
    if (!grid.is_array() || grid.size() < 2)
        throw ConfigError("'omega_r_grid_mhz' in fit must be an array of >= 2 values");
    for (const auto& v : grid) {
        if (!v.is_number()) throw ConfigError("'omega_r_grid_mhz' entries must be numbers");
        f.omega_r_grid.push_back(mhz_to_angular(v.get<double>()));
    }
    f.noise_fraction = get_double_or(obj, "fit", "noise_fraction", 0.0);
    if (f.noise_fraction < 0.0) throw ConfigError("'noise_fraction' in fit must be >= 0");
    f.constrain_origin = get_bool_or(obj, "fit", "constrain_origin", true);
    return f;
}

VerifySection parse_verify(const json& obj) {
    check_keys(obj, "verify", {"blockade_mhz", "draws", "fault_injection"});
    VerifySection v;
    const json& b = require(obj, "verify", "blockade_mhz");
    if (b.is_string()) {
        if (b.get<std::string>() != "infinite")
            throw ConfigError("'blockade_mhz' must be \"infinite\" or a number");
        v.infinite = true;
    } else if (b.is_number()) {
        v.infinite = false;
        v.blockade = mhz_to_angular(b.get<double>());
        if (v.blockade < 0.0) throw ConfigError("'blockade_mhz' must be >= 0");
    } else {
        throw ConfigError("'blockade_mhz' must be \"infinite\" or a number");
    }
    v.draws = get_int_or(obj, "verify", "draws", 20);
    if (v.draws < 1) throw ConfigError("'draws' in verify must be >= 1");
    v.fault_injection = get_string_or(obj, "verify", "fault_injection", "none");
    if (v.fault_injection != "none" && v.fault_injection != "sqrt_n_to_n")
        throw ConfigError("'fault_injection' must be \"none\" or \"sqrt_n_to_n\"");
    return v;
}

}  // namespace

RunConfig parse_config(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        const auto [line, col] = line_col(text, e.byte > 0 ? e.byte - 1 : 0);
        throw ConfigError("config syntax error at line " + std::to_string(line) +
                              ", column " + std::to_string(col),
                          line, col);
    }
    if (!root.is_object()) throw ConfigError("config root must be an object");
    check_keys(root, "config root",
               {"model", "scan", "ramp", "peaks", "fit", "verify", "seed", "output"});

    RunConfig cfg;
    cfg.model = parse_model(require(root, "config root", "model"));
    if (root.find("scan") != root.end()) cfg.scan = parse_scan(root.at("scan"));
    if (root.find("ramp") != root.end()) cfg.ramp = parse_ramp(root.at("ramp"));
    if (root.find("peaks") != root.end()) cfg.peaks = parse_peaks(root.at("peaks"));
    if (root.find("fit") != root.end()) cfg.fit = parse_fit(root.at("fit"));
    if (root.find("verify") != root.end()) cfg.verify = parse_verify(root.at("verify"));
    if (root.find("seed") != root.end()) {
        const json& s = root.at("seed");
        if (!s.is_number_unsigned() && !s.is_number_integer())
            throw ConfigError("'seed' must be an integer");
        cfg.seed = s.get<std::uint64_t>();
    }
    if (root.find("output") != root.end()) {
        const json& o = root.at("output");
        check_keys(o, "output", {"format", "path"});
        cfg.output.format = get_string_or(o, "output", "format", "csv");
        cfg.output.path = get_string_or(o, "output", "path", "-");
        if (cfg.output.format != "csv" && cfg.output.format != "json")
            throw ConfigError("'format' in output must be \"csv\" or \"json\"");
    }
    return cfg;
}

}  // namespace jcryd
