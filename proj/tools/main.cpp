// qhe — command-line driver for the interaction-driven quantum heat engine
// library. One subcommand per analysis; JSON or CSV output, deterministic
// byte-for-byte for a fixed configuration.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qhe/bethe.hpp"
#include "qhe/cycle.hpp"
#include "qhe/gibbs.hpp"
#include "qhe/luttinger.hpp"
#include "qhe/tba.hpp"

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr const char* kUnits = "hbar=2m=kB=1";

enum ExitCode {
    kOk = 0,
    kUsage = 2,
    kSolver = 3,
    kNotAnEngine = 4,
    kIo = 5,
};

// CSV cells use 12 significant digits; JSON relies on nlohmann's
// shortest-round-trip serialization (17 significant digits when needed).
std::string csv_num(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string full_num(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct OutputSpec {
    std::string path;    // empty = stdout
    std::string format;  // "json", "csv" or "" (per-command default)
    int threads = 1;
};

int env_threads()
{
    if (const char* v = std::getenv("QHE_THREADS")) {
        int n = std::atoi(v);
        if (n > 0) return n;
    }
    return 1;
}

void add_output_options(CLI::App* cmd, OutputSpec& out)
{
    cmd->add_option("-o,--output", out.path, "Output file (default: stdout)");
    cmd->add_option("--format", out.format, "Output format: json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--threads", out.threads,
                    "Worker threads for scans (default: $QHE_THREADS or 1)")
        ->check(CLI::PositiveNumber);
}

void write_text(const OutputSpec& out, const std::string& text)
{
    if (out.path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out.path, std::ios::binary);
    if (!f) throw std::ios_base::failure("cannot open output file: " + out.path);
    f << text;
    if (!f) throw std::ios_base::failure("write failed: " + out.path);
}

ordered_json meta_block(const std::string& command, const ordered_json& parameters,
                        const ordered_json& tolerances)
{
    ordered_json m;
    m["version"] = QHE_VERSION;
    m["command"] = command;
    m["units"] = kUnits;
    m["parameters"] = parameters;
    m["tolerances"] = tolerances;
    return m;
}

// CSV files carry the same metadata as '#' comment lines ahead of the header.
std::string csv_meta(const std::string& command, const ordered_json& parameters,
                     const ordered_json& tolerances)
{
    std::ostringstream os;
    os << "# version=" << QHE_VERSION << "\n";
    os << "# command=" << command << "\n";
    os << "# units=" << kUnits << "\n";
    for (const auto& [key, value] : parameters.items()) {
        os << "# " << key << "=";
        if (value.is_number_float())
            os << full_num(value.get<double>());
        else
            os << value.dump();
        os << "\n";
    }
    for (const auto& [key, value] : tolerances.items())
        os << "# tol." << key << "=" << value.dump() << "\n";
    return os.str();
}

void emit(const OutputSpec& out, const std::string& default_format,
          const ordered_json& doc, const std::string& csv_body)
{
    const std::string fmt = out.format.empty() ? default_format : out.format;
    if (fmt == "json")
        write_text(out, doc.dump(2) + "\n");
    else
        write_text(out, csv_body);
}

ordered_json grid_tolerances(const qhe::GridConfig& g)
{
    ordered_json t;
    t["grid_tolerance"] = g.tolerance;
    t["tail_sigma"] = g.tail_sigma;
    t["panel_order"] = g.panel_order;
    t["cutoff_scale"] = g.cutoff_scale;
    t["density_scale"] = g.density_scale;
    return t;
}

void add_grid_options(CLI::App* cmd, qhe::GridConfig& g)
{
    cmd->add_option("--grid-tolerance", g.tolerance, "Dressed-energy solver tolerance")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--grid-density-scale", g.density_scale,
                    "Momentum-grid density multiplier")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--grid-cutoff-scale", g.cutoff_scale,
                    "Momentum-cutoff multiplier")
        ->check(CLI::PositiveNumber);
}

// ---------------------------------------------------------------- spectrum

struct SpectrumArgs {
    int particles = 0;
    double length = 1.0;
    double coupling = 0.0;
    double temperature = 0.0;
    double weight_cutoff = 1e-8;
    OutputSpec out;
};

void run_spectrum(const SpectrumArgs& a)
{
    qhe::GasSpec gas{a.particles, a.length, a.coupling};
    auto states = qhe::enumerate_states(gas, a.temperature, a.weight_cutoff);
    auto ens = qhe::gibbs_ensemble(std::move(states), a.temperature);

    ordered_json params;
    params["particles"] = a.particles;
    params["length"] = a.length;
    params["coupling"] = a.coupling;
    params["temperature"] = a.temperature;
    params["weight_cutoff"] = a.weight_cutoff;
    ordered_json tol;
    tol["bethe_tolerance"] = 1e-12;
    tol["weight_cutoff"] = a.weight_cutoff;

    ordered_json doc;
    doc["meta"] = meta_block("spectrum", params, tol);
    ordered_json rows = ordered_json::array();
    std::ostringstream csv;
    csv << csv_meta("spectrum", params, tol);
    csv << "index,quantum_numbers,energy,weight\n";
    for (std::size_t i = 0; i < ens.states.size(); ++i) {
        const auto& st = ens.states[i];
        ordered_json r;
        r["index"] = i;
        r["quantum_numbers"] = st.quantum_numbers.values;
        r["energy"] = st.energy;
        r["weight"] = ens.probabilities[i];
        rows.push_back(std::move(r));

        csv << i << ",\"";
        for (std::size_t j = 0; j < st.quantum_numbers.values.size(); ++j) {
            if (j) csv << ' ';
            csv << st.quantum_numbers.values[j];
        }
        csv << "\"," << csv_num(st.energy) << "," << csv_num(ens.probabilities[i])
            << "\n";
    }
    doc["partition_function"] = ens.partition_function;
    doc["states"] = std::move(rows);
    emit(a.out, "csv", doc, csv.str());
}

// ------------------------------------------------------------ finite-cycle

struct FiniteCycleArgs {
    int particles = 0;
    double length = 1.0;
    double c_A = 0.0, c_B = 0.0, T_A = 0.0, T_C = 0.0;
    double weight_cutoff = 1e-8;
    OutputSpec out;
};

ordered_json cycle_result_json(const qhe::CycleResult& r)
{
    ordered_json j;
    j["Q2"] = r.Q2;
    j["Q4"] = r.Q4;
    j["W"] = r.work;
    j["eta"] = r.efficiency;
    if (r.T_B)
        j["T_B"] = *r.T_B;
    else
        j["T_B"] = nullptr;
    if (r.T_D)
        j["T_D"] = *r.T_D;
    else
        j["T_D"] = nullptr;
    return j;
}

std::string cycle_result_csv(const qhe::CycleResult& r)
{
    std::ostringstream csv;
    csv << "Q2,Q4,W,eta,T_B,T_D\n";
    csv << csv_num(r.Q2) << "," << csv_num(r.Q4) << "," << csv_num(r.work) << ","
        << csv_num(r.efficiency) << ",";
    if (r.T_B) csv << csv_num(*r.T_B);
    csv << ",";
    if (r.T_D) csv << csv_num(*r.T_D);
    csv << "\n";
    return csv.str();
}

void run_finite_cycle(const FiniteCycleArgs& a)
{
    qhe::CycleSpec spec{qhe::GasSpec{a.particles, a.length, a.c_A}, a.c_A, a.c_B,
                        a.T_A, a.T_C};
    auto r = qhe::run_finite_cycle(spec, a.weight_cutoff);

    ordered_json params;
    params["particles"] = a.particles;
    params["length"] = a.length;
    params["ca"] = a.c_A;
    params["cb"] = a.c_B;
    params["ta"] = a.T_A;
    params["tc"] = a.T_C;
    params["weight_cutoff"] = a.weight_cutoff;
    ordered_json tol;
    tol["bethe_tolerance"] = 1e-12;
    tol["weight_cutoff"] = a.weight_cutoff;

    ordered_json doc;
    doc["meta"] = meta_block("finite-cycle", params, tol);
    doc["result"] = cycle_result_json(r);
    emit(a.out, "json", doc, csv_meta("finite-cycle", params, tol) + cycle_result_csv(r));
}

// --------------------------------------------------------------------- tba

struct TbaArgs {
    double coupling = 0.0;
    double temperature = 0.0;
    std::optional<double> mu;
    std::optional<double> density;
    qhe::GridConfig grid;
    OutputSpec out;
};

void run_tba(const TbaArgs& a)
{
    if (a.mu.has_value() == a.density.has_value())
        throw CLI::ValidationError("tba", "exactly one of --mu and --density is required");
    const double mu =
        a.mu ? *a.mu : qhe::mu_from_density(a.coupling, *a.density, a.temperature, a.grid);
    auto ts = qhe::thermo_state(a.coupling, mu, a.temperature, a.grid);
    const double cv = qhe::specific_heat(a.coupling, mu, a.temperature, a.grid);

    ordered_json params;
    params["coupling"] = a.coupling;
    params["temperature"] = a.temperature;
    params["mu"] = mu;  // resolved value, also when --density was given
    if (a.density) params["density_target"] = *a.density;
    ordered_json tol = grid_tolerances(a.grid);
    tol["density_inversion"] = 1e-8;

    ordered_json doc;
    doc["meta"] = meta_block("tba", params, tol);
    ordered_json r;
    r["pressure"] = ts.pressure;
    r["density"] = ts.density;
    r["entropy_density"] = ts.entropy_density;
    r["energy_density"] = ts.energy_density;
    r["specific_heat"] = cv;
    doc["result"] = std::move(r);

    std::ostringstream csv;
    csv << csv_meta("tba", params, tol);
    csv << "pressure,density,entropy_density,energy_density,specific_heat\n";
    csv << csv_num(ts.pressure) << "," << csv_num(ts.density) << ","
        << csv_num(ts.entropy_density) << "," << csv_num(ts.energy_density) << ","
        << csv_num(cv) << "\n";
    emit(a.out, "json", doc, csv.str());
}

// --------------------------------------------------------------- tba-cycle

struct TbaCycleArgs {
    double c_A = 0.0, c_B = 0.0, T_A = 0.0, T_C = 0.0;
    double density = 0.0;
    double length = 1.0;
    qhe::GridConfig grid;
    OutputSpec out;
};

void run_tba_cycle_cmd(const TbaCycleArgs& a)
{
    qhe::TbaCycleSpec spec{a.c_A, a.c_B, a.T_A, a.T_C, a.density, a.length};
    auto r = qhe::run_tba_cycle(spec, a.grid);
    auto corners = qhe::cycle_trajectory(spec, a.grid);

    ordered_json params;
    params["ca"] = a.c_A;
    params["cb"] = a.c_B;
    params["ta"] = a.T_A;
    params["tc"] = a.T_C;
    params["density"] = a.density;
    params["length"] = a.length;
    ordered_json tol = grid_tolerances(a.grid);
    tol["entropy_matching"] = 1e-9;
    tol["density_inversion"] = 1e-8;

    ordered_json doc;
    doc["meta"] = meta_block("tba-cycle", params, tol);
    ordered_json res = cycle_result_json(r);
    res["work_per_particle"] = r.work / (a.density * a.length);
    ordered_json cj = ordered_json::array();
    for (const auto& c : corners) {
        ordered_json one;
        one["label"] = std::string(1, c.label);
        one["mu"] = c.chemical_potential;
        one["T"] = c.temperature;
        cj.push_back(std::move(one));
    }
    res["corners"] = std::move(cj);
    doc["result"] = std::move(res);

    std::ostringstream csv;
    csv << csv_meta("tba-cycle", params, tol);
    csv << cycle_result_csv(r);
    emit(a.out, "json", doc, csv.str());
}

// ------------------------------------------------------------ density-scan

struct DensityScanArgs {
    double c_A = 0.0, c_B = 0.0, T_A = 0.0, T_C = 0.0;
    double length = 1.0;
    double n_min = 0.0, n_max = 0.0;
    int n_steps = 0;
    std::string spacing = "geometric";
    qhe::GridConfig grid;
    OutputSpec out;
};

std::vector<double> spaced_values(double lo, double hi, int steps, const std::string& how)
{
    std::vector<double> v(steps);
    if (steps == 1) {
        v[0] = lo;
        return v;
    }
    for (int i = 0; i < steps; ++i) {
        const double t = static_cast<double>(i) / (steps - 1);
        v[i] = how == "geometric" ? lo * std::pow(hi / lo, t) : lo + (hi - lo) * t;
    }
    return v;
}

void run_density_scan(const DensityScanArgs& a)
{
    qhe::TbaCycleSpec base{a.c_A, a.c_B, a.T_A, a.T_C, a.n_min, a.length};
    auto ns = spaced_values(a.n_min, a.n_max, a.n_steps, a.spacing);
    auto rows = qhe::density_scan(base, ns, a.grid, a.out.threads);

    ordered_json params;
    params["ca"] = a.c_A;
    params["cb"] = a.c_B;
    params["ta"] = a.T_A;
    params["tc"] = a.T_C;
    params["length"] = a.length;
    params["n_min"] = a.n_min;
    params["n_max"] = a.n_max;
    params["n_steps"] = a.n_steps;
    params["spacing"] = a.spacing;
    ordered_json tol = grid_tolerances(a.grid);
    tol["entropy_matching"] = 1e-9;

    ordered_json doc;
    doc["meta"] = meta_block("density-scan", params, tol);
    ordered_json jrows = ordered_json::array();
    std::ostringstream csv;
    csv << csv_meta("density-scan", params, tol);
    csv << "n,eta,work_per_particle\n";
    for (const auto& row : rows) {
        ordered_json r;
        r["n"] = row.density;
        r["ok"] = row.ok;
        if (row.ok) {
            r["eta"] = row.efficiency;
            r["work_per_particle"] = row.work_per_particle;
            csv << csv_num(row.density) << "," << csv_num(row.efficiency) << ","
                << csv_num(row.work_per_particle) << "\n";
        } else {
            r["error"] = row.error;
            // missing-row marker: density with empty value cells
            csv << csv_num(row.density) << ",,\n";
        }
        jrows.push_back(std::move(r));
    }
    doc["rows"] = std::move(jrows);
    emit(a.out, "csv", doc, csv.str());
}

// --------------------------------------------------------------- phase-map

struct PhaseMapArgs {
    double coupling = 0.0;
    double mu_min = 0.0, mu_max = 0.0;
    double T_min = 0.0, T_max = 0.0;
    int mu_steps = 0, T_steps = 0;
    qhe::GridConfig grid;
    OutputSpec out;
};

void run_phase_map(const PhaseMapArgs& a)
{
    auto cells = qhe::phase_map(a.coupling, {a.mu_min, a.mu_max}, {a.T_min, a.T_max},
                                {a.mu_steps, a.T_steps}, a.grid, a.out.threads);

    ordered_json params;
    params["coupling"] = a.coupling;
    params["mu_min"] = a.mu_min;
    params["mu_max"] = a.mu_max;
    params["mu_steps"] = a.mu_steps;
    params["t_min"] = a.T_min;
    params["t_max"] = a.T_max;
    params["t_steps"] = a.T_steps;
    ordered_json tol = grid_tolerances(a.grid);

    ordered_json doc;
    doc["meta"] = meta_block("phase-map", params, tol);
    ordered_json jrows = ordered_json::array();
    std::ostringstream csv;
    csv << csv_meta("phase-map", params, tol);
    csv << "mu,T,specific_heat,density,entropy_density\n";
    for (const auto& cell : cells) {
        ordered_json r;
        r["mu"] = cell.chemical_potential;
        r["T"] = cell.temperature;
        r["ok"] = cell.ok;
        if (cell.ok) {
            r["specific_heat"] = cell.specific_heat;
            r["density"] = cell.density;
            r["entropy_density"] = cell.entropy_density;
            csv << csv_num(cell.chemical_potential) << "," << csv_num(cell.temperature)
                << "," << csv_num(cell.specific_heat) << "," << csv_num(cell.density)
                << "," << csv_num(cell.entropy_density) << "\n";
        } else {
            r["error"] = cell.error;
            csv << csv_num(cell.chemical_potential) << "," << csv_num(cell.temperature)
                << ",,,\n";
        }
        jrows.push_back(std::move(r));
    }
    doc["cells"] = std::move(jrows);
    emit(a.out, "csv", doc, csv.str());
}

// --------------------------------------------------------------------- tll

struct TllArgs {
    double kappa = 0.0;
    std::optional<double> density;
    std::optional<double> c_A, c_B;
    std::optional<double> v_s_A, v_s_B;
    double T_C = 1.0;
    double length = 1.0;
    qhe::GridConfig grid;
    OutputSpec out;
};

void run_tll(const TllArgs& a)
{
    ordered_json params;
    params["kappa"] = a.kappa;
    params["tc"] = a.T_C;
    params["length"] = a.length;
    if (a.density) params["density"] = *a.density;
    if (a.c_A) params["ca"] = *a.c_A;
    if (a.c_B) params["cb"] = *a.c_B;

    std::optional<double> vA = a.v_s_A;
    std::optional<double> vB = a.v_s_B;
    if (a.density && a.c_A && !vA) vA = qhe::sound_velocity_tba(*a.density, *a.c_A, a.grid);
    if (a.density && a.c_B && !vB) vB = qhe::sound_velocity_tba(*a.density, *a.c_B, a.grid);

    ordered_json tol = grid_tolerances(a.grid);

    ordered_json r;
    r["xi_c"] = qhe::optimal_xi(a.kappa);
    r["xi_c_small_kappa"] = qhe::optimal_xi_small_kappa(a.kappa);
    if (vA) r["v_s_A"] = *vA;
    if (vB) r["v_s_B"] = *vB;
    if (vA && vB) {
        auto p = qhe::TllParams::from_velocities(*vA, *vB, a.kappa);
        r["xi"] = p.xi;
        r["eta_tll"] = qhe::tll_efficiency(p);
        r["W_tll"] = qhe::tll_work(*vB, a.T_C, a.kappa, p.xi, a.length);
    }
    if (vB) r["W_tll_optimal"] = qhe::tll_work(*vB, a.T_C, a.kappa, qhe::optimal_xi(a.kappa), a.length);
    if (a.c_A && a.c_B) r["eta_sat_weak"] = qhe::weak_coupling_efficiency(*a.c_A, *a.c_B);

    ordered_json doc;
    doc["meta"] = meta_block("tll", params, tol);
    doc["result"] = r;

    std::ostringstream csv;
    csv << csv_meta("tll", params, tol);
    std::string header, line;
    for (const auto& [key, value] : r.items()) {
        if (!header.empty()) {
            header += ',';
            line += ',';
        }
        header += key;
        line += csv_num(value.get<double>());
    }
    csv << header << "\n" << line << "\n";
    emit(a.out, "json", doc, csv.str());
}

// ------------------------------------------------------------ coupling-map

struct CouplingMapArgs {
    std::string kind;
    std::optional<double> c_tilde, theta;
    std::optional<double> c_odd, c_even, spin_corr;
    OutputSpec out;
};

void run_coupling_map(const CouplingMapArgs& a)
{
    ordered_json params;
    params["kind"] = a.kind;
    double c = 0.0;
    if (a.kind == "anyon") {
        if (!a.c_tilde || !a.theta)
            throw CLI::ValidationError("coupling-map",
                                       "--c-tilde and --theta are required for kind=anyon");
        params["c_tilde"] = *a.c_tilde;
        params["theta"] = *a.theta;
        c = qhe::anyon_effective_coupling(*a.c_tilde, *a.theta);
    } else {
        if (!a.c_odd || !a.c_even || !a.spin_corr)
            throw CLI::ValidationError(
                "coupling-map", "--c-odd, --c-even and --spin-corr are required for kind=spinor");
        params["c_odd"] = *a.c_odd;
        params["c_even"] = *a.c_even;
        params["spin_corr"] = *a.spin_corr;
        c = qhe::spinor_effective_coupling(*a.c_odd, *a.c_even, *a.spin_corr);
    }

    ordered_json doc;
    doc["meta"] = meta_block("coupling-map", params, ordered_json::object());
    doc["result"]["effective_coupling"] = c;

    std::ostringstream csv;
    csv << csv_meta("coupling-map", params, ordered_json::object());
    csv << "effective_coupling\n" << csv_num(c) << "\n";
    emit(a.out, "json", doc, csv.str());
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Interaction-driven quantum heat engine for the 1D Bose gas"};
    app.require_subcommand(1);
    app.set_version_flag("--version", QHE_VERSION);
    app.set_config("--config", "", "Key-value config file; sections per subcommand");
    app.allow_config_extras(false);

    SpectrumArgs sp;
    sp.out.threads = env_threads();
    auto* spectrum = app.add_subcommand("spectrum", "Enumerate Bethe states with Gibbs weights");
    spectrum->add_option("-n,--particles", sp.particles, "Particle count N")
        ->required()
        ->check(CLI::PositiveNumber);
    spectrum->add_option("-l,--length", sp.length, "Box length L")->check(CLI::PositiveNumber);
    spectrum->add_option("-c,--coupling", sp.coupling, "Interaction strength c")
        ->required()
        ->check(CLI::PositiveNumber);
    spectrum->add_option("-t,--temperature", sp.temperature, "Temperature T")
        ->required()
        ->check(CLI::PositiveNumber);
    spectrum->add_option("--weight-cutoff", sp.weight_cutoff, "Relative Boltzmann-weight cutoff")
        ->check(CLI::PositiveNumber);
    add_output_options(spectrum, sp.out);

    FiniteCycleArgs fc;
    fc.out.threads = env_threads();
    auto* fcycle = app.add_subcommand("finite-cycle", "Exact finite-N four-stroke cycle");
    fcycle->add_option("-n,--particles", fc.particles, "Particle count N")
        ->required()
        ->check(CLI::PositiveNumber);
    fcycle->add_option("-l,--length", fc.length, "Box length L")->check(CLI::PositiveNumber);
    fcycle->add_option("--ca", fc.c_A, "Coupling at corner A")->required()->check(CLI::PositiveNumber);
    fcycle->add_option("--cb", fc.c_B, "Coupling at corner B")->required()->check(CLI::PositiveNumber);
    fcycle->add_option("--ta", fc.T_A, "Cold temperature T_A")->required()->check(CLI::PositiveNumber);
    fcycle->add_option("--tc", fc.T_C, "Hot temperature T_C")->required()->check(CLI::PositiveNumber);
    fcycle->add_option("--weight-cutoff", fc.weight_cutoff, "Relative Boltzmann-weight cutoff")
        ->check(CLI::PositiveNumber);
    add_output_options(fcycle, fc.out);

    TbaArgs tb;
    tb.out.threads = env_threads();
    auto* tba = app.add_subcommand("tba", "Yang-Yang thermodynamics at one (c, mu, T) point");
    tba->add_option("-c,--coupling", tb.coupling, "Interaction strength c")
        ->required()
        ->check(CLI::PositiveNumber);
    tba->add_option("-t,--temperature", tb.temperature, "Temperature T")
        ->required()
        ->check(CLI::PositiveNumber);
    tba->add_option("--mu", tb.mu, "Chemical potential");
    tba->add_option("--density", tb.density, "Particle density (mu is then inverted)")
        ->check(CLI::PositiveNumber);
    add_grid_options(tba, tb.grid);
    add_output_options(tba, tb.out);

    TbaCycleArgs tc;
    tc.out.threads = env_threads();
    auto* tcycle = app.add_subcommand("tba-cycle", "Thermodynamic-limit four-stroke cycle");
    tcycle->add_option("--ca", tc.c_A, "Coupling at corner A")->required()->check(CLI::PositiveNumber);
    tcycle->add_option("--cb", tc.c_B, "Coupling at corner B")->required()->check(CLI::PositiveNumber);
    tcycle->add_option("--ta", tc.T_A, "Cold temperature T_A")->required()->check(CLI::PositiveNumber);
    tcycle->add_option("--tc", tc.T_C, "Hot temperature T_C")->required()->check(CLI::PositiveNumber);
    tcycle->add_option("--density", tc.density, "Particle density n")
        ->required()
        ->check(CLI::PositiveNumber);
    tcycle->add_option("-l,--length", tc.length, "Box length L (extensive scale)")
        ->check(CLI::PositiveNumber);
    add_grid_options(tcycle, tc.grid);
    add_output_options(tcycle, tc.out);

    DensityScanArgs ds;
    ds.out.threads = env_threads();
    auto* dscan = app.add_subcommand("density-scan", "Cycle performance versus density");
    dscan->add_option("--ca", ds.c_A, "Coupling at corner A")->required()->check(CLI::PositiveNumber);
    dscan->add_option("--cb", ds.c_B, "Coupling at corner B")->required()->check(CLI::PositiveNumber);
    dscan->add_option("--ta", ds.T_A, "Cold temperature T_A")->required()->check(CLI::PositiveNumber);
    dscan->add_option("--tc", ds.T_C, "Hot temperature T_C")->required()->check(CLI::PositiveNumber);
    dscan->add_option("-l,--length", ds.length, "Box length L")->check(CLI::PositiveNumber);
    dscan->add_option("--n-min", ds.n_min, "Lowest density")->required()->check(CLI::PositiveNumber);
    dscan->add_option("--n-max", ds.n_max, "Highest density")->required()->check(CLI::PositiveNumber);
    dscan->add_option("--n-steps", ds.n_steps, "Number of scan points")
        ->required()
        ->check(CLI::PositiveNumber);
    dscan->add_option("--spacing", ds.spacing, "Point spacing: linear or geometric")
        ->check(CLI::IsMember({"linear", "geometric"}));
    add_grid_options(dscan, ds.grid);
    add_output_options(dscan, ds.out);

    PhaseMapArgs pm;
    pm.out.threads = env_threads();
    auto* pmap = app.add_subcommand("phase-map", "Specific-heat map over the (mu, T) plane");
    pmap->add_option("-c,--coupling", pm.coupling, "Interaction strength c")
        ->required()
        ->check(CLI::PositiveNumber);
    pmap->add_option("--mu-min", pm.mu_min, "Lowest chemical potential")->required();
    pmap->add_option("--mu-max", pm.mu_max, "Highest chemical potential")->required();
    pmap->add_option("--mu-steps", pm.mu_steps, "Grid points in mu")
        ->required()
        ->check(CLI::PositiveNumber);
    pmap->add_option("--t-min", pm.T_min, "Lowest temperature")->required()->check(CLI::PositiveNumber);
    pmap->add_option("--t-max", pm.T_max, "Highest temperature")->required()->check(CLI::PositiveNumber);
    pmap->add_option("--t-steps", pm.T_steps, "Grid points in T")
        ->required()
        ->check(CLI::PositiveNumber);
    add_grid_options(pmap, pm.grid);
    add_output_options(pmap, pm.out);

    TllArgs tl;
    tl.out.threads = env_threads();
    auto* tll = app.add_subcommand("tll", "Luttinger-liquid universal efficiency and work");
    tll->add_option("--kappa", tl.kappa, "Temperature ratio T_A/T_C")
        ->required()
        ->check(CLI::Range(0.0, 1.0));
    tll->add_option("--density", tl.density, "Particle density n")->check(CLI::PositiveNumber);
    tll->add_option("--ca", tl.c_A, "Coupling at corner A")->check(CLI::PositiveNumber);
    tll->add_option("--cb", tl.c_B, "Coupling at corner B")->check(CLI::PositiveNumber);
    tll->add_option("--vsa", tl.v_s_A, "Sound velocity at corner A (overrides TBA)");
    tll->add_option("--vsb", tl.v_s_B, "Sound velocity at corner B (overrides TBA)");
    tll->add_option("--tc", tl.T_C, "Hot temperature T_C (work scale)")->check(CLI::PositiveNumber);
    tll->add_option("-l,--length", tl.length, "Box length L")->check(CLI::PositiveNumber);
    add_grid_options(tll, tl.grid);
    add_output_options(tll, tl.out);

    CouplingMapArgs cm;
    cm.out.threads = env_threads();
    auto* cmap = app.add_subcommand("coupling-map", "Effective couplings of anyonic/spinor substances");
    cmap->add_option("--kind", cm.kind, "Working substance: anyon or spinor")
        ->required()
        ->check(CLI::IsMember({"anyon", "spinor"}));
    cmap->add_option("--c-tilde", cm.c_tilde, "Bare anyon coupling");
    cmap->add_option("--theta", cm.theta, "Anyonic statistical angle in [0, pi)");
    cmap->add_option("--c-odd", cm.c_odd, "Odd-wave spinor coupling");
    cmap->add_option("--c-even", cm.c_even, "Even-wave spinor coupling");
    cmap->add_option("--spin-corr", cm.spin_corr, "Spin-spin correlator in [-3/4, 1/4]");
    add_output_options(cmap, cm.out);

    // Let unmatched subcommand arguments (notably --config) reach the parent.
    for (auto* sub : app.get_subcommands([](const CLI::App*) { return true; }))
        sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*spectrum) run_spectrum(sp);
        if (*fcycle) run_finite_cycle(fc);
        if (*tba) run_tba(tb);
        if (*tcycle) run_tba_cycle_cmd(tc);
        if (*dscan) run_density_scan(ds);
        if (*pmap) run_phase_map(pm);
        if (*tll) run_tll(tl);
        if (*cmap) run_coupling_map(cm);
    } catch (const CLI::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const qhe::NotAnEngine& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kNotAnEngine;
    } catch (const qhe::InvalidInput& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const qhe::DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const qhe::UnsupportedLimit& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const qhe::Error& e) {
        // solver, grid, inversion, matching, resource-limit failures
        std::cerr << "error: " << e.what() << "\n";
        return kSolver;
    } catch (const std::ios_base::failure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kIo;
    }
    return kOk;
}
