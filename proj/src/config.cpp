#include "mcg/config.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace mcg {

namespace {

struct Entry {
    std::string value;
    int line = 0;  // 0 for JSON input
    bool used = false;
};

using EntryMap = std::map<std::string, Entry>;

[[noreturn]] void fail(const std::string& src, const std::string& msg) {
    throw std::invalid_argument("config " + src + ": " + msg);
}

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::string at_line(const Entry& en) {
    return en.line > 0 ? " (line " + std::to_string(en.line) + ")" : "";
}

EntryMap parse_flat_text(const std::string& text, const std::string& src) {
    EntryMap out;
    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::size_t hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        const std::string line = trim(raw);
        if (line.empty()) continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) {
            fail(src, "expected key = value at line " + std::to_string(line_no));
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) fail(src, "empty key at line " + std::to_string(line_no));
        if (value.empty()) {
            fail(src, "empty value for key '" + key + "' at line " + std::to_string(line_no));
        }
        const auto [it, inserted] = out.insert({key, Entry{value, line_no, false}});
        if (!inserted) {
            fail(src, "duplicate key '" + key + "' at line " + std::to_string(line_no) +
                          " (first at line " + std::to_string(it->second.line) + ")");
        }
    }
    return out;
}

EntryMap parse_json_object(const std::string& text, const std::string& src) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        fail(src, e.what());
    }
    if (!j.is_object()) fail(src, "JSON config must be a flat object");
    EntryMap out;
    for (const auto& [key, val] : j.items()) {
        std::string value;
        if (val.is_string()) {
            value = val.get<std::string>();
        } else if (val.is_number()) {
            std::ostringstream os;
            os.precision(17);
            os << val.get<double>();
            value = os.str();
        } else {
            fail(src, "key '" + key + "' must be a number or string");
        }
        out.insert({key, Entry{value, 0, false}});
    }
    return out;
}

class Reader {
  public:
    Reader(EntryMap entries, std::string src) : entries_(std::move(entries)), src_(std::move(src)) {}

    std::optional<std::string> take_string(const std::string& key) {
        const auto it = entries_.find(key);
        if (it == entries_.end()) return std::nullopt;
        it->second.used = true;
        return it->second.value;
    }

    std::optional<double> take_number(const std::string& key) {
        const auto it = entries_.find(key);
        if (it == entries_.end()) return std::nullopt;
        it->second.used = true;
        const std::string& v = it->second.value;
        char* end = nullptr;
        const double x = std::strtod(v.c_str(), &end);
        if (end == v.c_str() || *end != '\0') {
            fail(src_, "value for key '" + key + "' is not a number: '" + v + "'" +
                           at_line(it->second));
        }
        return x;
    }

    double require_number(const std::string& key) {
        auto v = take_number(key);
        if (!v) fail(src_, "missing required key '" + key + "'");
        return *v;
    }

    std::optional<std::size_t> take_index(const std::string& key) {
        const auto it = entries_.find(key);
        auto v = take_number(key);
        if (!v) return std::nullopt;
        if (*v < 1.0 || *v != static_cast<double>(static_cast<std::size_t>(*v))) {
            fail(src_, "value for key '" + key + "' must be a positive integer" +
                           at_line(it->second));
        }
        return static_cast<std::size_t>(*v);
    }

    void finish() const {
        for (const auto& [key, en] : entries_) {
            if (!en.used) fail(src_, "unknown key '" + key + "'" + at_line(en));
        }
    }

    const std::string& src() const { return src_; }

  private:
    EntryMap entries_;
    std::string src_;
};

ModelParams read_params(Reader& r, std::optional<PhysicalParams>& physical_out) {
    const std::string mode = r.take_string("parameters").value_or("model");
    try {
        if (mode == "model") {
            return ModelParams(r.require_number("alpha"), r.require_number("eta"),
                               r.require_number("a"), r.require_number("b"),
                               r.require_number("mu"), r.require_number("gamma"),
                               r.require_number("theta"), r.require_number("epsilon"));
        }
        if (mode == "physical") {
            const PhysicalParams phys(r.require_number("C"), r.require_number("L"),
                                      r.require_number("R0"), r.require_number("beta"),
                                      r.require_number("T0"), r.require_number("c"),
                                      r.require_number("delta"), r.require_number("a"),
                                      r.require_number("b"));
            physical_out = phys;
            return physical_to_model(phys);
        }
    } catch (const std::invalid_argument& e) {
        if (std::string(e.what()).rfind("config ", 0) == 0) throw;
        fail(r.src(), e.what());
    }
    fail(r.src(), "key 'parameters' must be 'model' or 'physical', got '" + mode + "'");
}

}  // namespace

RunConfig parse_run_config(const std::string& text, const std::string& source_name) {
    std::size_t first = text.find_first_not_of(" \t\r\n");
    const bool json = first != std::string::npos && text[first] == '{';
    Reader r(json ? parse_json_object(text, source_name) : parse_flat_text(text, source_name),
             source_name);

    std::optional<PhysicalParams> physical;
    const ModelParams params = read_params(r, physical);
    RunConfig cfg{.params = params, .physical = physical};

    if (auto v = r.take_number("x0")) cfg.initial_state.x = *v;
    if (auto v = r.take_number("y0")) cfg.initial_state.y = *v;
    if (auto v = r.take_number("z0")) cfg.initial_state.z = *v;

    if (auto v = r.take_number("step")) cfg.integration.step = *v;
    if (auto v = r.take_number("t_end")) cfg.integration.t_end = *v;
    if (auto v = r.take_number("t_skip")) cfg.integration.t_skip = *v;
    if (auto v = r.take_index("stride")) cfg.integration.stride = *v;
    if (auto v = r.take_number("abs_tol")) cfg.integration.abs_tol = *v;
    if (auto v = r.take_number("rel_tol")) cfg.integration.rel_tol = *v;
    if (auto m = r.take_string("method")) {
        if (*m == "rk4") {
            cfg.integration.method = Method::FixedRk4;
        } else if (*m == "rk45") {
            cfg.integration.method = Method::AdaptiveRk45;
        } else {
            fail(source_name, "key 'method' must be 'rk4' or 'rk45', got '" + *m + "'");
        }
    }

    if (auto v = r.take_number("lce_step")) cfg.lyapunov.step = *v;
    if (auto v = r.take_number("lce_transient")) cfg.lyapunov.transient = *v;
    if (auto v = r.take_number("lce_averaging")) cfg.lyapunov.averaging = *v;
    if (auto v = r.take_number("lce_renorm")) cfg.lyapunov.renorm_interval = *v;

    if (auto v = r.take_number("zero_tol")) cfg.zero_tol = *v;
    if (auto v = r.take_number("cluster_tol_rel")) cfg.cluster_tol_rel = *v;
    if (auto v = r.take_number("sym_tol")) cfg.sym_tol = *v;

    r.finish();

    try {
        cfg.integration.validate();
        cfg.lyapunov.validate();
    } catch (const std::invalid_argument& e) {
        fail(source_name, e.what());
    }
    if (cfg.zero_tol <= 0) fail(source_name, "zero_tol must be > 0");
    if (cfg.cluster_tol_rel <= 0) fail(source_name, "cluster_tol_rel must be > 0");
    if (cfg.sym_tol <= 0) fail(source_name, "sym_tol must be > 0");
    if (!all_finite(cfg.initial_state)) fail(source_name, "initial state must be finite");
    return cfg;
}

RunConfig load_run_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_run_config(buf.str(), path);
}

}  // namespace mcg
