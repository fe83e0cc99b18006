#include "run_config.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "hexmc/errors.hpp"

namespace hexmc::cli {

namespace {

std::string trim(const std::string& s)
{
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::vector<int> parse_int_list(const std::string& value)
{
    std::vector<int> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ','))
        out.push_back(std::stoi(trim(item)));
    if (out.empty())
        throw std::invalid_argument("empty list");
    return out;
}

} // namespace

void RunConfig::apply_line(const std::string& line, int line_no)
{
    const std::string stripped = trim(line.substr(0, line.find('#')));
    if (stripped.empty()) return;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos)
        throw ConfigError("config line " + std::to_string(line_no)
                          + ": expected key = value");
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    try {
        if (key == "d_hex") d_hex = std::stod(value);
        else if (key == "d_hex_min") d_hex_min = std::stod(value);
        else if (key == "d_hex_max") d_hex_max = std::stod(value);
        else if (key == "n_points") n_points = std::stoi(value);
        else if (key == "a_rx") a_rx = std::stod(value);
        else if (key == "l_rx") l_rx = std::stod(value);
        else if (key == "d") d = std::stod(value);
        else if (key == "v") v = std::stod(value);
        else if (key == "D") diffusion = std::stod(value);
        else if (key == "n_mol") n_mol = parse_int_list(value);
        else if (key == "dt") dt = std::stod(value);
        else if (key == "t_sim") t_sim = std::stod(value);
        else if (key == "out_dt") out_dt = std::stod(value);
        else if (key == "n_rings") n_rings = std::stoi(value);
        else if (key == "k_max") k_max = std::stoi(value);
        else if (key == "theta_max") theta_max = std::stoi(value);
        else if (key == "enum_cap") enum_cap = std::stoull(value);
        else if (key == "state_samples") state_samples = std::stoi(value);
        else if (key == "pbs_realizations") pbs_realizations = std::stoi(value);
        else if (key == "pbs_particles") pbs_particles = std::stoi(value);
        else if (key == "mc_realizations") mc_realizations = std::stoi(value);
        else if (key == "mc_rings") mc_rings = std::stoi(value);
        else if (key == "seed") seed = std::stoull(value);
        else if (key == "threads") threads = std::stoi(value);
        else
            throw ConfigError("config line " + std::to_string(line_no)
                              + ": unknown key '" + key + "'");
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception&) {
        throw ConfigError("config line " + std::to_string(line_no)
                          + ": invalid value for '" + key + "'");
    }
}

RunConfig RunConfig::from_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return from_string(buf.str());
}

RunConfig RunConfig::from_string(const std::string& text)
{
    RunConfig cfg;
    std::stringstream ss(text);
    std::string line;
    int line_no = 0;
    while (std::getline(ss, line))
        cfg.apply_line(line, ++line_no);
    return cfg;
}

std::string format_double(double v)
{
    char buf[32];
    if (v == std::floor(v) && std::abs(v) < 1e15) {
        std::snprintf(buf, sizeof(buf), "%lld", static_cast<long long>(v));
        return buf;
    }
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    // prefer the shortest representation that round-trips; strtod instead of
    // stod because stod throws on subnormals
    for (int prec = 1; prec <= 16; ++prec) {
        char cand[32];
        std::snprintf(cand, sizeof(cand), "%.*g", prec, v);
        if (std::strtod(cand, nullptr) == v) return cand;
    }
    return buf;
}

std::string RunConfig::serialize() const
{
    std::ostringstream out;
    out << "d_hex = " << format_double(d_hex) << '\n'
        << "d_hex_min = " << format_double(d_hex_min) << '\n'
        << "d_hex_max = " << format_double(d_hex_max) << '\n'
        << "n_points = " << n_points << '\n'
        << "a_rx = " << format_double(a_rx) << '\n'
        << "l_rx = " << format_double(l_rx) << '\n'
        << "d = " << format_double(d) << '\n'
        << "v = " << format_double(v) << '\n'
        << "D = " << format_double(diffusion) << '\n';
    out << "n_mol = ";
    for (std::size_t i = 0; i < n_mol.size(); ++i)
        out << (i ? "," : "") << n_mol[i];
    out << '\n'
        << "dt = " << format_double(dt) << '\n'
        << "t_sim = " << format_double(t_sim) << '\n'
        << "out_dt = " << format_double(out_dt) << '\n'
        << "n_rings = " << n_rings << '\n'
        << "k_max = " << k_max << '\n'
        << "theta_max = " << theta_max << '\n'
        << "enum_cap = " << enum_cap << '\n'
        << "state_samples = " << state_samples << '\n'
        << "pbs_realizations = " << pbs_realizations << '\n'
        << "pbs_particles = " << pbs_particles << '\n'
        << "mc_realizations = " << mc_realizations << '\n'
        << "mc_rings = " << mc_rings << '\n'
        << "seed = " << seed << '\n'
        << "threads = " << threads << '\n';
    return out.str();
}

nlohmann::json RunConfig::to_json() const
{
    return nlohmann::json{
        {"d_hex", d_hex},
        {"d_hex_min", d_hex_min},
        {"d_hex_max", d_hex_max},
        {"n_points", n_points},
        {"a_rx", a_rx},
        {"l_rx", l_rx},
        {"d", d},
        {"v", v},
        {"D", diffusion},
        {"n_mol", n_mol},
        {"dt", dt},
        {"t_sim", t_sim},
        {"out_dt", out_dt},
        {"n_rings", n_rings},
        {"k_max", k_max},
        {"theta_max", theta_max},
        {"enum_cap", enum_cap},
        {"state_samples", state_samples},
        {"pbs_realizations", pbs_realizations},
        {"pbs_particles", pbs_particles},
        {"mc_realizations", mc_realizations},
        {"mc_rings", mc_rings},
        {"seed", seed},
        {"threads", threads},
    };
}

ChannelParams RunConfig::channel_params(double d_hex_value) const
{
    ChannelParams p;
    p.D = diffusion;
    p.v = v;
    p.z0 = 0.0;
    p.zR = d;
    p.L_rx = l_rx;
    p.a_rx = a_rx > 0.0 ? a_rx : d_hex_value / 2.0;
    p.zS = p.zR - p.L_rx / 2.0;
    p.zE = p.zR + p.L_rx / 2.0;
    p.n_mol = n_mol.front();
    try {
        p.validate();
    } catch (const std::exception& ex) {
        throw ConfigError(ex.what());
    }
    return p;
}

LinkOptions RunConfig::link_options() const
{
    LinkOptions o;
    o.n_rings = n_rings;
    o.k_max = k_max;
    o.theta_max = theta_max;
    o.enum_cap = enum_cap;
    o.state_samples = state_samples;
    o.seed = seed;
    o.t_sim = t_sim;
    return o;
}

void RunConfig::validate() const
{
    if (!(d_hex > 0.0)) throw ConfigError("d_hex must be > 0");
    if (!(d_hex_min > 0.0) || !(d_hex_max > d_hex_min))
        throw ConfigError("need 0 < d_hex_min < d_hex_max");
    if (n_points < 2) throw ConfigError("n_points must be >= 2");
    if (n_mol.empty()) throw ConfigError("n_mol list must not be empty");
    for (int n : n_mol)
        if (n < 1) throw ConfigError("n_mol entries must be >= 1");
    if (n_rings < 0) throw ConfigError("n_rings must be >= 0");
    if (k_max < 0) throw ConfigError("k_max must be >= 0");
    if (theta_max < 1) throw ConfigError("theta_max must be >= 1");
    if (!(dt > 0.0) || !(out_dt > 0.0) || !(t_sim >= dt))
        throw ConfigError("need dt > 0, out_dt > 0, t_sim >= dt");
}

CsvWriter::CsvWriter(std::string schema, std::vector<std::string> columns)
    : schema_(std::move(schema)), columns_(std::move(columns))
{
}

void CsvWriter::add_row(const std::vector<double>& values)
{
    if (values.size() != columns_.size())
        throw std::invalid_argument("CsvWriter: row width mismatch");
    rows_.push_back(values);
}

std::string CsvWriter::to_string() const
{
    std::ostringstream out;
    out << "# schema: " << schema_ << '\n';
    for (std::size_t i = 0; i < columns_.size(); ++i)
        out << (i ? "," : "") << columns_[i];
    out << '\n';
    for (const auto& row : rows_) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            out << (i ? "," : "");
            if (std::isnan(row[i]))
                out << "";
            else
                out << format_double(row[i]);
        }
        out << '\n';
    }
    return out.str();
}

nlohmann::json CsvWriter::to_json() const
{
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : rows_) {
        nlohmann::json obj;
        for (std::size_t i = 0; i < row.size(); ++i)
            obj[columns_[i]] = std::isnan(row[i])
                                   ? nlohmann::json(nullptr)
                                   : nlohmann::json(row[i]);
        rows.push_back(std::move(obj));
    }
    return nlohmann::json{{"schema", schema_}, {"rows", std::move(rows)}};
}

void CsvWriter::write(const std::string& path, const nlohmann::json& sidecar) const
{
    write_text_file(path, to_string());
    nlohmann::json meta = sidecar;
    meta["schema"] = schema_;
    write_text_file(path + ".meta.json", meta.dump(2) + "\n");
}

void write_text_file(const std::string& path, const std::string& content)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw ConfigError("cannot write output file: " + path);
    out << content;
}

} // namespace hexmc::cli
