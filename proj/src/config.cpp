#include "ntband/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "ntband/errors.hpp"

namespace ntband {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

double parse_double(const std::string& value, const std::string& key) {
    std::size_t pos = 0;
    double out = 0.0;
    try {
        out = std::stod(value, &pos);
    } catch (const std::exception&) {
        throw ConfigError("key '" + key + "': cannot parse '" + value + "' as a number");
    }
    if (pos != value.size()) {
        throw ConfigError("key '" + key + "': trailing characters in '" + value + "'");
    }
    return out;
}

std::uint64_t parse_u64(const std::string& value, const std::string& key) {
    std::size_t pos = 0;
    unsigned long long out = 0;
    try {
        out = std::stoull(value, &pos);
    } catch (const std::exception&) {
        throw ConfigError("key '" + key + "': cannot parse '" + value + "' as an integer");
    }
    if (pos != value.size()) {
        throw ConfigError("key '" + key + "': trailing characters in '" + value + "'");
    }
    return out;
}

std::vector<double> parse_vector(const std::string& value, const std::string& key) {
    std::istringstream in(value);
    std::vector<double> out;
    std::string tok;
    while (in >> tok) {
        out.push_back(parse_double(tok, key));
    }
    if (out.empty()) {
        throw ConfigError("key '" + key + "' needs at least one value");
    }
    return out;
}

// Rows separated by ';', entries by whitespace: "1 0.5 ; 0.5 1".
std::vector<std::vector<double>> parse_matrix(const std::string& value, const std::string& key) {
    std::vector<std::vector<double>> rows;
    std::string row;
    std::istringstream in(value);
    while (std::getline(in, row, ';')) {
        rows.push_back(parse_vector(trim(row), key));
    }
    return rows;
}

struct RawConfig {
    // section -> key -> value, with duplicate detection
    std::map<std::string, std::map<std::string, std::string>> sections;
};

RawConfig tokenize(const std::string& text, const std::string& origin) {
    RawConfig raw;
    std::istringstream in(text);
    std::string line;
    std::string section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const std::string where = origin + ":" + std::to_string(lineno);
        if (line.front() == '[') {
            if (line.back() != ']') {
                throw ConfigError(where + ": malformed section header");
            }
            section = trim(line.substr(1, line.size() - 2));
            if (section.empty()) {
                throw ConfigError(where + ": empty section name");
            }
            raw.sections[section]; // a section may legitimately be empty
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(where + ": expected 'key = value'");
        }
        if (section.empty()) {
            throw ConfigError(where + ": key outside any [section]");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty()) {
            throw ConfigError(where + ": empty key or value");
        }
        auto [it, inserted] = raw.sections[section].emplace(key, value);
        if (!inserted) {
            throw ConfigError(where + ": duplicate key '" + key + "'");
        }
    }
    return raw;
}

const std::set<std::string> kKnownSections = {"market", "run", "weights", "widths"};
const std::set<std::string> kMarketKeys = {"r", "mu", "sigma", "rho", "k", "T", "dt"};
const std::set<std::string> kRunKeys = {"strategy",         "paths",   "base_seed",
                                        "recording_points", "out_dir", "threads"};

} // namespace

StrategyKind parse_strategy_kind(const std::string& name) {
    if (name == "frictionless") return StrategyKind::Frictionless;
    if (name == "banded") return StrategyKind::Banded;
    if (name == "banded_custom_widths") return StrategyKind::BandedCustomWidths;
    if (name == "naive_rebalance") return StrategyKind::NaiveRebalance;
    if (name == "buy_and_hold") return StrategyKind::BuyAndHold;
    throw ConfigError("unknown strategy '" + name + "'");
}

std::string strategy_kind_name(StrategyKind kind) {
    switch (kind) {
        case StrategyKind::Frictionless: return "frictionless";
        case StrategyKind::Banded: return "banded";
        case StrategyKind::BandedCustomWidths: return "banded_custom_widths";
        case StrategyKind::NaiveRebalance: return "naive_rebalance";
        case StrategyKind::BuyAndHold: return "buy_and_hold";
    }
    return "unknown";
}

RunConfig parse_config_text(const std::string& text, const std::string& origin) {
    const RawConfig raw = tokenize(text, origin);

    for (const auto& [section, keys] : raw.sections) {
        if (!kKnownSections.count(section)) {
            throw ConfigError(origin + ": unknown section [" + section + "]");
        }
        if (section == "market") {
            for (const auto& [key, value] : keys) {
                if (!kMarketKeys.count(key)) {
                    throw ConfigError(origin + ": unknown key '" + key + "' in [market]");
                }
            }
        } else if (section == "run") {
            for (const auto& [key, value] : keys) {
                if (!kRunKeys.count(key)) {
                    throw ConfigError(origin + ": unknown key '" + key + "' in [run]");
                }
            }
        } else if (section == "weights") {
            for (const auto& [key, value] : keys) {
                if (key != "p") {
                    throw ConfigError(origin + ": unknown key '" + key + "' in [weights]");
                }
            }
        } else {
            for (const auto& [key, value] : keys) {
                if (key != "coeff") {
                    throw ConfigError(origin + ": unknown key '" + key + "' in [widths]");
                }
            }
        }
    }

    const auto market_it = raw.sections.find("market");
    if (market_it == raw.sections.end()) {
        throw ConfigError(origin + ": missing [market] section");
    }
    const auto& market = market_it->second;
    auto need = [&](const char* key) -> const std::string& {
        const auto it = market.find(key);
        if (it == market.end()) {
            throw ConfigError(origin + ": [market] is missing key '" + std::string(key) + "'");
        }
        return it->second;
    };

    RunConfig cfg;
    cfg.r = parse_double(need("r"), "r");
    cfg.mu = parse_vector(need("mu"), "mu");
    cfg.sigma = parse_vector(need("sigma"), "sigma");
    cfg.rho = parse_matrix(need("rho"), "rho");
    cfg.k = parse_double(need("k"), "k");
    cfg.horizon = parse_double(need("T"), "T");
    cfg.dt = parse_double(need("dt"), "dt");

    if (const auto run_it = raw.sections.find("run"); run_it != raw.sections.end()) {
        for (const auto& [key, value] : run_it->second) {
            if (key == "strategy") {
                cfg.strategy = parse_strategy_kind(value);
            } else if (key == "paths") {
                cfg.paths = static_cast<std::size_t>(parse_u64(value, key));
            } else if (key == "base_seed") {
                cfg.base_seed = parse_u64(value, key);
            } else if (key == "recording_points") {
                cfg.recording_points = static_cast<std::size_t>(parse_u64(value, key));
            } else if (key == "out_dir") {
                cfg.out_dir = value;
            } else if (key == "threads") {
                cfg.threads = static_cast<unsigned>(parse_u64(value, key));
            }
        }
    }
    if (const auto it = raw.sections.find("weights"); it != raw.sections.end()) {
        const auto p = it->second.find("p");
        if (p == it->second.end()) {
            throw ConfigError(origin + ": [weights] requires key 'p'");
        }
        cfg.weights = parse_vector(p->second, "p");
    }
    if (const auto it = raw.sections.find("widths"); it != raw.sections.end()) {
        const auto c = it->second.find("coeff");
        if (c == it->second.end()) {
            throw ConfigError(origin + ": [widths] requires key 'coeff'");
        }
        cfg.width_coeffs = parse_vector(c->second, "coeff");
    }

    // Validate eagerly: an invalid config must fail before any run output.
    try {
        cfg.market();
    } catch (const NotPositiveDefinite&) {
        throw; // the CLI reports this with its own exit code
    } catch (const Error& e) {
        throw ConfigError(origin + ": " + e.what());
    }
    if (cfg.paths < 2) {
        throw ConfigError(origin + ": 'paths' must be at least 2 for standard errors");
    }
    const MarketParams params = cfg.market();
    if (cfg.recording_points == 0 ||
        static_cast<std::int64_t>(cfg.recording_points) > params.n_steps()) {
        throw ConfigError(origin + ": 'recording_points' must lie in [1, T/dt]");
    }
    if (cfg.strategy == StrategyKind::BandedCustomWidths && !cfg.width_coeffs) {
        throw ConfigError(origin + ": strategy 'banded_custom_widths' needs a [widths] section");
    }
    if (cfg.width_coeffs) {
        if (cfg.width_coeffs->size() != cfg.mu.size()) {
            throw ConfigError(origin + ": [widths] coeff length does not match the market");
        }
        for (double c : *cfg.width_coeffs) {
            if (!(c >= 0.0)) {
                throw ConfigError(origin + ": width coefficients must be nonnegative");
            }
        }
    }
    if (cfg.weights) {
        if (cfg.weights->size() != cfg.mu.size()) {
            throw ConfigError(origin + ": [weights] p length does not match the market");
        }
        if (cfg.strategy == StrategyKind::Banded ||
            cfg.strategy == StrategyKind::BandedCustomWidths) {
            throw ConfigError(origin +
                              ": [weights] overrides apply only to frictionless, "
                              "naive_rebalance and buy_and_hold strategies");
        }
    }
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError("cannot open config file '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str(), path);
}

MarketParams RunConfig::market() const {
    return MarketParams(r, mu, sigma, rho, k, horizon, dt);
}

StrategySpec RunConfig::strategy_spec() const {
    StrategySpec spec;
    spec.kind = strategy;
    spec.weights = weights;
    spec.width_coeffs = width_coeffs;
    return spec;
}

nlohmann::ordered_json RunConfig::resolved_json() const {
    nlohmann::ordered_json j;
    j["market"] = {{"r", r},   {"mu", mu}, {"sigma", sigma}, {"rho", rho},
                   {"k", k},   {"T", horizon}, {"dt", dt}};
    j["run"] = {{"strategy", strategy_kind_name(strategy)},
                {"paths", paths},
                {"base_seed", base_seed},
                {"recording_points", recording_points},
                {"out_dir", out_dir},
                {"threads", threads}};
    if (weights) {
        j["weights"] = {{"p", *weights}};
    }
    if (width_coeffs) {
        j["widths"] = {{"coeff", *width_coeffs}};
    }
    return j;
}

} // namespace ntband
