#pragma once

// Command implementations behind the `rotent` tool. Each command writes to a
// stream and reports problems by throwing ValidationError or SynthesisError;
// argument parsing lives in tools/.

#include <algorithm>
#include <cmath>
#include <complex>
#include <fstream>
#include <iomanip>
#include <istream>
#include <map>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "rotent/detection.hpp"
#include "rotent/gatesynth.hpp"
#include "rotent/schemes.hpp"

namespace rotent::cli {

enum ExitCode : int { ok = 0, validation_error = 2, residual_error = 3 };

inline std::string num(double x) {
    std::ostringstream s;
    s << std::scientific << std::setprecision(16) << x;
    return s.str();
}

inline std::string num(cplx z) { return "(" + num(z.real()) + "," + num(z.imag()) + ")"; }

inline double parse_double(const std::string& key, const std::string& text) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != text.size()) throw ValidationError(key + ": not a number: '" + text + "'");
    return v;
}

inline int parse_int(const std::string& key, const std::string& text) {
    const double v = parse_double(key, text);
    if (v != std::floor(v) || std::abs(v) > 1e9) throw ValidationError(key + ": not an integer: '" + text + "'");
    return static_cast<int>(v);
}

inline Scheme parse_scheme(const std::string& text) {
    if (text == "double" || text == "double_loop" || text == "double-loop") return Scheme::double_loop;
    if (text == "single" || text == "single_loop" || text == "single-loop") return Scheme::single_loop;
    throw ValidationError("scheme must be 'double' or 'single', got '" + text + "'");
}

/// Flat key=value file; '#' starts a comment, blank lines are skipped.
inline std::map<std::string, std::string> parse_config(std::istream& in) {
    std::map<std::string, std::string> kv;
    std::string line;
    int lineno = 0;
    auto trim = [](std::string s) {
        const auto b = s.find_first_not_of(" \t\r");
        const auto e = s.find_last_not_of(" \t\r");
        return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
    };
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ValidationError("config line " + std::to_string(lineno) + ": expected key=value");
        const std::string key = trim(line.substr(0, eq));
        if (key.empty()) throw ValidationError("config line " + std::to_string(lineno) + ": empty key");
        kv[key] = trim(line.substr(eq + 1));
    }
    return kv;
}

/// Geometry as given on the command line. For the single-loop scheme `rb`
/// is the loop radius and `ra` is ignored.
struct GeometryOptions {
    Scheme scheme = Scheme::double_loop;
    double ra = 0.25;
    double rb = 0.5;
    int windings = 10;
    double wavelength = 800e-9;
    double refractive_index = 1.46;

    void set(const std::string& key, const std::string& value) {
        if (key == "scheme") scheme = parse_scheme(value);
        else if (key == "ra") ra = parse_double(key, value);
        else if (key == "rb") rb = parse_double(key, value);
        else if (key == "windings") windings = parse_int(key, value);
        else if (key == "lambda") wavelength = parse_double(key, value);
        else if (key == "n") refractive_index = parse_double(key, value);
        else throw ValidationError("unknown configuration key '" + key + "'");
    }

    void apply(const std::map<std::string, std::string>& kv) {
        for (const auto& [k, v] : kv) set(k, v);
    }

    Geometry geometry() const {
        return scheme == Scheme::double_loop ? Geometry::double_loop(ra, rb, windings, wavelength, refractive_index)
                                             : Geometry::single_loop(rb, windings, wavelength, refractive_index);
    }
};

inline const std::vector<std::string>& sweep_columns() {
    static const std::vector<std::string> cols{"omega_rad_s", "omega_over_bell", "phi_a", "phi_b",
                                               "overlap_S",   "concurrence",     "p_B1",  "p_B2",
                                               "p_B3",        "p_B4",            "w1",    "w2"};
    return cols;
}

struct SweepRequest {
    double omega_min = 0.0;
    double omega_max = 1.0;
    int points = 2;
    Geometry geometry = Geometry::double_loop();
    bool bell_units = false;           // omega_min/max given in units of Omega_Bell
    std::vector<std::string> columns;  // empty selects every column

    void validate() const {
        geometry.validate();
        if (!(std::isfinite(omega_min) && std::isfinite(omega_max) && omega_min < omega_max))
            throw ValidationError("sweep: need finite omega_min < omega_max");
        if (points < 2) throw ValidationError("sweep: need at least 2 points");
        for (const auto& c : columns)
            if (std::find(sweep_columns().begin(), sweep_columns().end(), c) == sweep_columns().end())
                throw ValidationError("sweep: unknown column '" + c + "'");
    }
};

inline void cmd_sweep(const SweepRequest& req, std::ostream& out) {
    req.validate();
    const std::vector<std::string>& cols = req.columns.empty() ? sweep_columns() : req.columns;
    const Geometry& g = req.geometry;
    const double base = bell_frequency(g);
    const BellBasis basis = bell_basis(g);
    const Op4 w1 = witness({g.kind, 1});
    const Op4 w2 = witness({g.kind, 2});

    for (std::size_t k = 0; k < cols.size(); ++k) out << (k ? "," : "") << cols[k];
    out << "\n";
    for (int i = 0; i < req.points; ++i) {
        const double t = static_cast<double>(i) / (req.points - 1);
        double x = i + 1 == req.points ? req.omega_max : req.omega_min + (req.omega_max - req.omega_min) * t;
        const double omega = req.bell_units ? x * base : x;
        const double ratio = req.bell_units ? x : omega / base;
        const StateVec psi = final_state(omega, g);
        const PathPhases ph = path_phases(omega, g);

        std::map<std::string, double> row{{"omega_rad_s", omega},
                                          {"omega_over_bell", ratio},
                                          {"phi_a", ph.a},
                                          {"phi_b", ph.b},
                                          {"overlap_S", polarization_overlap(omega, g)},
                                          {"concurrence", concurrence_pure(psi)},
                                          {"w1", expectation(w1, psi)},
                                          {"w2", expectation(w2, psi)}};
        for (std::size_t j = 0; j < 4; ++j)
            row["p_B" + std::to_string(j + 1)] = std::norm(overlap(basis[j], psi));
        for (std::size_t k = 0; k < cols.size(); ++k) out << (k ? "," : "") << num(row.at(cols[k]));
        out << "\n";
    }
}

/// (2k + 1) Omega_Bell for k = 0..k_max with the state reached there.
inline void cmd_bellfreq(const Geometry& g, int k_max, std::ostream& out) {
    if (k_max < 0) throw ValidationError("bellfreq: k_max must be non-negative");
    out << "k,multiple,omega_rad_s,frequency_hz,state\n";
    const auto freqs = bell_frequencies(g, 0, k_max);
    for (int k = 0; k <= k_max; ++k) {
        const double w = freqs[static_cast<std::size_t>(k)];
        out << k << "," << 2 * k + 1 << "," << num(w) << "," << num(w / (2.0 * std::numbers::pi)) << ","
            << to_string(which_bell_state(w, g)) << "\n";
    }
}

/// "sx_sy", "si_sz", ... : sigma on the path, then on the polarization.
inline Op4 parse_observable_name(const std::string& name) {
    auto axis = [&](char c) {
        switch (c) {
            case 'i': return Axis::identity;
            case 'x': return Axis::x;
            case 'y': return Axis::y;
            case 'z': return Axis::z;
        }
        throw ValidationError("unknown observable '" + name + "'");
    };
    if (name == "identity") return Op4::identity();
    if (name.size() != 5 || name[0] != 's' || name[2] != '_' || name[3] != 's')
        throw ValidationError("unknown observable '" + name + "' (expected e.g. sx_sy)");
    return pauli_pair(axis(name[1]), axis(name[4]));
}

/// 16 whitespace-separated entries, row-major; each is "re" or "(re,im)".
inline Op4 read_matrix(std::istream& in) {
    Op4 m;
    std::string token;
    std::size_t count = 0;
    while (in >> token) {
        if (count == 16) throw ValidationError("matrix: more than 16 entries");
        std::istringstream ts(token);
        std::complex<double> z;
        if (!(ts >> z) || ts.peek() != std::char_traits<char>::eof())
            throw ValidationError("matrix: cannot parse entry '" + token + "'");
        m(count / 4, count % 4) = z;
        ++count;
    }
    if (count != 16) throw ValidationError("matrix: expected 16 entries, got " + std::to_string(count));
    return m;
}

inline Op4 read_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open matrix file '" + path + "'");
    return read_matrix(in);
}

namespace detail {

template <std::size_t N>
void print_matrix(std::ostream& out, const std::string& name, const Matrix<N>& m) {
    out << name << "\n";
    for (std::size_t r = 0; r < N; ++r) {
        out << " ";
        for (std::size_t c = 0; c < N; ++c) out << " " << num(m(r, c));
        out << "\n";
    }
}

inline std::string angle(double rad) { return num(rad) + " rad (" + num(rad / std::numbers::pi) + " pi)"; }

}  // namespace detail

inline void print_plan(const GatePlan& plan, std::ostream& out) {
    detail::print_matrix(out, "observable", plan.observable);

    out << "routing\n";
    for (std::size_t j = 0; j < 4; ++j) {
        const auto p = port_probabilities(plan.network, plan.eigenstates[j]);
        out << "  port " << j << " (" << (j < 2 ? "a" : "b") << (j % 2 == 0 ? "H" : "V") << ") eigenvalue "
            << num(plan.eigenvalues[j]) << " probability " << num(p[j]) << " eigenvector";
        for (std::size_t k = 0; k < 4; ++k) out << " " << num(plan.eigenstates[j][k]);
        out << "\n";
    }

    detail::print_matrix(out, "S_RR", plan.s_rr());
    detail::print_matrix(out, "S_LL", plan.s_ll());
    detail::print_matrix(out, "S_RL", plan.s_rl());
    detail::print_matrix(out, "S_LR", plan.s_lr());
    out << "theta_1 " << detail::angle(plan.cs.theta[0]) << "\n";
    out << "theta_2 " << detail::angle(plan.cs.theta[1]) << "\n";

    const std::array<std::pair<const char*, const Op2*>, 4> els{{{"V1", &plan.elements.v1},
                                                                  {"VR", &plan.elements.vr},
                                                                  {"VL", &plan.elements.vl},
                                                                  {"V2", &plan.elements.v2}}};
    for (std::size_t k = 0; k < 4; ++k) {
        detail::print_matrix(out, els[k].first, *els[k].second);
        const WaveplateSetting& w = plan.settings[k];
        out << "  alpha " << detail::angle(w.alpha) << "\n";
        out << "  beta  " << detail::angle(w.beta) << "\n";
        out << "  gamma " << detail::angle(w.gamma) << "\n";
        out << "  delta " << detail::angle(w.delta) << "\n";
    }

    const PlanResiduals& r = plan.residuals;
    out << "residuals\n";
    out << "  conj_A " << num(r.conj_a) << "\n";
    out << "  conj_B " << num(r.conj_b) << "\n";
    out << "  unitarity " << num(r.unitarity) << "\n";
    out << "  cs_reassembly " << num(r.cs_reassembly) << "\n";
    out << "  network " << num(r.network) << "\n";
    out << "  waveplates " << num(r.waveplates) << "\n";
    out << "  routing " << num(r.routing) << "\n";
}

/// Throws SynthesisError if any residual exceeds the synthesis tolerance.
inline void cmd_synth(const Op4& observable, std::ostream& out) { print_plan(synthesize(observable), out); }

inline void cmd_earth(double wavelength, double omega_earth, std::ostream& out) {
    const double area = earth_area(wavelength, omega_earth);
    out << "wavelength_m,omega_earth_rad_s,area_m2,area_km2,square_side_m\n";
    out << num(wavelength) << "," << num(omega_earth) << "," << num(area) << "," << num(area * 1e-6) << ","
        << num(std::sqrt(area)) << "\n";
}

/// Werner mixtures of the first Bell state of the geometry on an even p grid.
inline void cmd_werner(const Geometry& g, int points, std::ostream& out) {
    if (points < 2) throw ValidationError("werner: need at least 2 points");
    const StateVec bell = bell_basis(g)[0];
    out << "p,min_ppt_eigenvalue,witness_value,entangled\n";
    for (int i = 0; i < points; ++i) {
        const double p = static_cast<double>(i) / (points - 1);
        const WernerResult r = werner_analysis(p, bell);
        out << num(p) << "," << num(r.min_ppt_eigenvalue) << "," << num(r.witness_value) << ","
            << (r.entangled ? 1 : 0) << "\n";
    }
}

}  // namespace rotent::cli
