#include "decaykit/runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "decaykit/autocorr.hpp"
#include "decaykit/moments.hpp"
#include "decaykit/regions.hpp"
#include "decaykit/survival.hpp"

namespace decaykit::cli {

namespace {

using nlohmann::json;

constexpr double kPi = 3.141592653589793238462643383279502884;

std::string fmt(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

json ini_to_json(const std::string& text)
{
    json root = json::object();
    json* section = &root;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find_first_of("#;");
        if (hash != std::string::npos) line.erase(hash);
        const auto b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos) continue;
        const auto e = line.find_last_not_of(" \t\r");
        line = line.substr(b, e - b + 1);
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("config line " + std::to_string(lineno) + ": bad section");
            const std::string name = line.substr(1, line.size() - 2);
            section = &root[name];
            if (section->is_null()) *section = json::object();
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
        std::string key = line.substr(0, eq);
        std::string val = line.substr(eq + 1);
        auto trim = [](std::string& s) {
            const auto b2 = s.find_first_not_of(" \t");
            const auto e2 = s.find_last_not_of(" \t");
            s = (b2 == std::string::npos) ? "" : s.substr(b2, e2 - b2 + 1);
        };
        trim(key);
        trim(val);
        if (key.empty() || val.empty())
            throw ConfigError("config line " + std::to_string(lineno) + ": empty key or value");
        char* end = nullptr;
        const double num = std::strtod(val.c_str(), &end);
        if (end && *end == '\0') (*section)[key] = num;
        else if (val == "true" || val == "false") (*section)[key] = (val == "true");
        else (*section)[key] = val;
    }
    return root;
}

Scenario scenario_from_json(const json& j)
{
    Scenario sc;
    if (j.contains("resonance")) {
        const json& r = j["resonance"];
        const bool dimless = r.contains("x_d");
        const bool physical = r.contains("re_kev") || r.contains("poles");
        if (dimless == physical)
            throw ConfigError("resonance needs exactly one of x_d or re_kev/poles");
        if (r.contains("nu")) sc.nu = r["nu"].get<double>();
        if (r.contains("b_s")) sc.b_s = r["b_s"].get<double>();
        if (r.contains("form_factor")) {
            const std::string ff = r["form_factor"].get<std::string>();
            if (ff == "constant") sc.constant_ff = true;
            else if (ff != "exponential") throw ConfigError("unknown form_factor " + ff);
        }
        if (dimless) {
            DimensionlessResonance res;
            res.x_d = r["x_d"].get<double>();
            res.nu = sc.nu;
            res.b_s = sc.b_s;
            sc.dimensionless = res;
        } else if (r.contains("poles")) {
            for (const json& p : r["poles"])
                sc.physical_poles.push_back(
                    {p["re_kev"].get<double>(), p["im_ev"].get<double>()});
        } else {
            sc.physical_poles.push_back(
                {r["re_kev"].get<double>(), r["im_ev"].get<double>()});
        }
    }
    if (j.contains("grid")) {
        const json& g = j["grid"];
        if (g.contains("n_max")) sc.grid.n_max = g["n_max"].get<double>();
        if (g.contains("tau_max")) {
            if (g.contains("n_max")) throw ConfigError("give n_max or tau_max, not both");
            sc.grid.n_max = -g["tau_max"].get<double>(); // resolved once x_d is known
        }
        if (g.contains("e_max")) sc.grid.e_max = g["e_max"].get<double>();
        if (g.contains("y_max")) sc.grid.y_max = g["y_max"].get<double>();
        if (g.contains("points")) sc.grid.points = g["points"].get<long>();
        if (g.contains("spacing")) {
            const std::string s = g["spacing"].get<std::string>();
            if (s == "log") sc.grid.log_spacing = true;
            else if (s != "linear") throw ConfigError("spacing must be linear or log");
        }
        if (sc.grid.points < 2 || sc.grid.points > 10'000'000)
            throw ConfigError("grid point count out of range [2, 1e7]");
    }
    if (j.contains("output")) {
        const json& o = j["output"];
        if (o.contains("path")) sc.out_path = o["path"].get<std::string>();
        if (o.contains("format")) sc.format = o["format"].get<std::string>();
    }
    return sc;
}

} // namespace

Scenario parse_scenario_text(const std::string& text)
{
    const auto first = text.find_first_not_of(" \t\r\n");
    try {
        if (first != std::string::npos && text[first] == '{')
            return scenario_from_json(json::parse(text));
        return scenario_from_json(ini_to_json(text));
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config parse: ") + e.what());
    }
}

Scenario parse_scenario_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_scenario_text(ss.str());
}

DensityOfStates scenario_dos(const Scenario& sc)
{
    if (sc.dimensionless && !sc.physical_poles.empty())
        throw ConfigError("give a dimensionless or a physical resonance, not both");
    PoleSet ps;
    double b = sc.b_s;
    if (sc.dimensionless) {
        ps.poles.push_back(Pole{1.0, 2.0 * sc.dimensionless->x_d});
    } else if (!sc.physical_poles.empty()) {
        // scale so the dominant pole sits at sigma = 1
        double sigma_d_kev = 0.0, width_kev = std::numeric_limits<double>::infinity();
        for (const auto& p : sc.physical_poles) {
            if (2.0 * p.im_ev / 1000.0 < width_kev) {
                width_kev = 2.0 * p.im_ev / 1000.0;
                sigma_d_kev = p.re_kev;
            }
        }
        for (const auto& p : sc.physical_poles)
            ps.poles.push_back(Pole{p.re_kev / sigma_d_kev, 2.0 * p.im_ev / 1000.0 / sigma_d_kev});
        b = sc.b_s; // b_s refers to the dominant pole
    } else {
        throw ConfigError("scenario has no resonance");
    }
    const FormFactor ff = sc.constant_ff ? FormFactor::constant() : FormFactor::exponential(b);
    return build_dos(ps, sc.nu, ff);
}

namespace {

std::vector<double> n_grid(const Scenario& sc, double x_d)
{
    double n_max = sc.grid.n_max;
    if (n_max < 0.0) n_max = -n_max / (4.0 * kPi * x_d); // came in as tau_max
    const long pts = sc.grid.points;
    std::vector<double> n(pts);
    if (sc.grid.log_spacing) {
        const double lo = std::log(n_max / double(pts) + 1e-12), hi = std::log(n_max);
        for (long i = 0; i < pts; ++i)
            n[i] = std::exp(lo + (hi - lo) * double(i) / double(pts - 1));
    } else {
        for (long i = 0; i < pts; ++i) n[i] = n_max * double(i) / double(pts - 1);
    }
    return n;
}

std::string csv_survival(const DensityOfStates& dos, const Scenario& sc)
{
    const DimensionlessResonance res = dos.dimensionless();
    std::vector<double> ns = n_grid(sc, res.x_d);
    std::vector<double> ts;
    for (double n : ns) ts.push_back(res.t_from_tau(res.tau_from_n(n)));
    if (!ts.empty() && ts.front() == 0.0) ts.front() = 0.0;
    SurvivalCurve curve = survival_probability(dos, ts, Route::decomposition);
    std::string out = "n,tau,P,P_e,P_ne,P_i,I\n";
    for (std::size_t i = 0; i < curve.grid.size(); ++i) {
        const double denom = curve.P_e[i] + curve.P_ne[i];
        const double I = (denom > 0.0) ? curve.P[i] / denom : 1.0;
        out += fmt(curve.grid[i].n) + "," + fmt(curve.grid[i].tau) + "," + fmt(curve.P[i]) + ","
               + fmt(curve.P_e[i]) + "," + fmt(curve.P_ne[i]) + "," + fmt(curve.P_i[i]) + ","
               + fmt(I) + "\n";
    }
    return out;
}

std::string csv_dos(const DensityOfStates& dos, const Scenario& sc)
{
    double e_max = sc.grid.e_max;
    if (e_max <= 0.0)
        e_max = (dos.form_factor().kind() == FormFactor::Kind::Exponential)
                    ? 20.0 / dos.form_factor().b()
                    : 50.0;
    std::string out = "E,rho\n";
    const long pts = sc.grid.points;
    for (long i = 0; i < pts; ++i) {
        double E;
        if (sc.grid.log_spacing) {
            const double lo = std::log(1e-6), hi = std::log(e_max);
            E = std::exp(lo + (hi - lo) * double(i) / double(pts - 1));
        } else {
            E = e_max * double(i) / double(pts - 1);
        }
        out += fmt(E) + "," + fmt(dos(E)) + "\n";
    }
    return out;
}

std::string csv_autocorr(const DensityOfStates& dos, const Scenario& sc)
{
    const double omega = dos.dominant_pole().omega;
    const double y_max = (sc.grid.y_max > 0.0) ? sc.grid.y_max : 10.0 * omega;
    std::string out = "y,R,lorentzian\n";
    const long pts = std::min<long>(sc.grid.points, 4000);
    for (long i = 0; i < pts; ++i) {
        const double y = y_max * double(i) / double(pts - 1);
        out += fmt(y) + "," + fmt(autocorrelation(dos, y)) + ","
               + fmt(autocorrelation_lorentzian(dos, y)) + "\n";
    }
    return out;
}

json moments_json(const DensityOfStates& dos)
{
    MomentTable table = moment_table(dos, 4);
    json j;
    j["values"] = table.values;
    j["variance"] = table.variance;
    return j;
}

json report_json(const RegionReport& rep)
{
    json j;
    j["tau_cs_oscillation"] = rep.tau_cs_oscillation;
    j["tau_cs_intersection"] = rep.tau_cs_intersection;
    j["tau_cs_ghirardi"] = rep.tau_cs_ghirardi;
    j["n_cs_ghirardi"] = rep.n_cs_ghirardi;
    j["alpha"] = rep.alpha;
    j["n_cl"] = rep.n_cl;
    j["n_small"] = rep.n_small;
    j["n_min_m"] = rep.n_min_m;
    j["intervals"] = json::array();
    for (const auto& [lo, hi] : rep.intervals) {
        j["intervals"].push_back(
            {{"lo", lo}, {"hi", std::isfinite(hi) ? json(hi) : json("inf")}});
    }
    return j;
}

std::string csv_table1(const std::vector<Table1Row>& rows)
{
    std::string out = "x_d,tau_G,tau_cs,four_pi_x_d,n_G,n_cs,root_missing\n";
    for (const Table1Row& r : rows) {
        out += fmt(r.x_d) + "," + fmt(r.tau_G) + ","
               + (r.root_missing ? "nan" : fmt(r.tau_cs)) + "," + fmt(r.tau_osc) + ","
               + fmt(r.n_G) + "," + (r.root_missing ? "nan" : fmt(r.n_cs)) + ","
               + (r.root_missing ? "1" : "0") + "\n";
    }
    return out;
}

json kv_json_from_csv_like(const std::vector<std::pair<std::string, double>>& kv)
{
    json j;
    for (const auto& [k, v] : kv) j[k] = v;
    return j;
}

} // namespace

RunResult run(const std::vector<std::string>& args, std::ostream& err)
{
    RunResult result;
    try {
        if (args.empty()) throw ConfigError("usage: decaykit <command> [--config <path>] ...");
        const std::string command = args[0];
        std::string config_path;
        std::string out_override, format_override;
        std::optional<double> bs_override, nu_override;
        for (std::size_t i = 1; i < args.size(); ++i) {
            const std::string& a = args[i];
            auto need = [&](const char* what) -> const std::string& {
                if (i + 1 >= args.size())
                    throw ConfigError(std::string(what) + " needs a value");
                return args[++i];
            };
            if (a == "--config") config_path = need("--config");
            else if (a == "--out") out_override = need("--out");
            else if (a == "--format") format_override = need("--format");
            else if (a == "--b-s") bs_override = std::stod(need("--b-s"));
            else if (a == "--nu") nu_override = std::stod(need("--nu"));
            else throw ConfigError("unknown option " + a);
        }

        Scenario sc;
        if (!config_path.empty()) sc = parse_scenario_file(config_path);
        else if (command != "table1" && command != "be8")
            throw ConfigError(command + " needs --config");
        if (bs_override) {
            sc.b_s = *bs_override;
            if (sc.dimensionless) sc.dimensionless->b_s = *bs_override;
        }
        if (nu_override) {
            sc.nu = *nu_override;
            if (sc.dimensionless) sc.dimensionless->nu = *nu_override;
        }
        if (!out_override.empty()) sc.out_path = out_override;
        if (!format_override.empty()) sc.format = format_override;
        if (sc.format != "csv" && sc.format != "json")
            throw ConfigError("format must be csv or json");

        std::string payload;
        if (command == "survival") {
            payload = csv_survival(scenario_dos(sc), sc);
        } else if (command == "dos") {
            payload = csv_dos(scenario_dos(sc), sc);
        } else if (command == "autocorr") {
            payload = csv_autocorr(scenario_dos(sc), sc);
        } else if (command == "moments") {
            const DensityOfStates dos = scenario_dos(sc);
            const json j = moments_json(dos);
            if (sc.format == "json") {
                payload = j.dump(2) + "\n";
            } else {
                payload = "n,value\n";
                for (std::size_t n = 0; n < j["values"].size(); ++n)
                    payload += std::to_string(n) + "," + fmt(j["values"][n].get<double>()) + "\n";
                payload += "variance," + fmt(j["variance"].get<double>()) + "\n";
            }
        } else if (command == "regions") {
            const DensityOfStates dos = scenario_dos(sc);
            const RegionModel model(dos.dimensionless());
            const RegionReport rep = model.report();
            if (sc.format == "json") {
                payload = report_json(rep).dump(2) + "\n";
            } else {
                payload = "n,P_piecewise,eta,m\n";
                for (double n : n_grid(sc, dos.dimensionless().x_d)) {
                    if (n <= 0.0) continue;
                    payload += fmt(n) + "," + fmt(model.piecewise_P(n)) + ","
                               + fmt(eta_ratio(n, model.constant(), dos.dimensionless().x_d,
                                               dos.dimensionless().nu))
                               + ","
                               + fmt(modulating_m(n, model.constant(), dos.dimensionless().x_d,
                                                  dos.dimensionless().nu))
                               + "\n";
                }
            }
        } else if (command == "table1") {
            double b_s = bs_override.value_or(config_path.empty() ? 2.0 : sc.b_s);
            double nu = nu_override.value_or(config_path.empty() ? 0.5 : sc.nu);
            std::vector<double> xs;
            for (int e = -12; e <= -1; ++e) xs.push_back(std::pow(10.0, e));
            const auto rows = table1(b_s, nu, xs);
            if (sc.format == "json") {
                json j = json::array();
                for (const auto& r : rows)
                    j.push_back({{"x_d", r.x_d},
                                 {"tau_G", r.tau_G},
                                 {"tau_cs", r.root_missing ? json() : json(r.tau_cs)},
                                 {"four_pi_x_d", r.tau_osc},
                                 {"n_G", r.n_G},
                                 {"n_cs", r.root_missing ? json() : json(r.n_cs)}});
                payload = j.dump(2) + "\n";
            } else {
                payload = csv_table1(rows);
            }
        } else if (command == "be8") {
            // 8Be(0+) -> 2 alpha: pole 92 keV - i 2.8 eV, nu = 1/2, b_s = 1
            Scenario be;
            be.physical_poles.push_back({92.0, 2.8});
            be.nu = nu_override.value_or(0.5);
            be.b_s = bs_override.value_or(1.0);
            const double x_s = (be.physical_poles[0].im_ev / 1000.0) / be.physical_poles[0].re_kev;
            const double b_mev = be.b_s / (be.physical_poles[0].re_kev / 1000.0);
            const DimensionlessResonance res{x_s, be.nu, be.b_s};
            const RegionModel model(res);
            const auto interval = negative_variance_interval(x_s, be.nu);
            std::vector<std::pair<std::string, double>> kv{
                {"x_s", x_s},
                {"b_per_mev", b_mev},
                {"oscillation_period_lifetimes", 4.0 * kPi * x_s},
                {"nu", be.nu},
                {"b_s", be.b_s},
                {"n_cl", model.report().n_cl},
                {"variance", model.variance()},
            };
            if (interval) {
                kv.push_back({"negative_variance_lower_b_s", interval->lower});
                kv.push_back({"negative_variance_upper_b_s", interval->upper});
            }
            if (sc.format == "json") {
                payload = kv_json_from_csv_like(kv).dump(2) + "\n";
            } else {
                payload = "key,value\n";
                for (const auto& [k, v] : kv) payload += k + "," + fmt(v) + "\n";
            }
        } else {
            throw ConfigError("unknown command " + command);
        }

        result.output = payload;
        if (!sc.out_path.empty()) {
            std::ofstream out(sc.out_path, std::ios::binary);
            if (!out) throw ConfigError("cannot write " + sc.out_path);
            out << payload;
        }
        return result;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        result.exit_code = 2;
        return result;
    } catch (const Error& e) {
        err << "compute error: " << e.what() << "\n";
        result.exit_code = 3;
        return result;
    }
}

int main_entry(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    const RunResult r = run(args, std::cerr);
    if (r.exit_code == 0) {
        bool to_stdout = true;
        for (std::size_t i = 0; i + 1 < args.size(); ++i)
            if (args[i] == "--out") to_stdout = false;
        if (to_stdout) std::cout << r.output;
    }
    return r.exit_code;
}

} // namespace decaykit::cli
