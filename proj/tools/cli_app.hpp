#pragma once

#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rotent/cli.hpp"

namespace rotent::cli {

/// Parses argv and runs one subcommand. Returns the process exit code.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Rotation-induced path-polarization entanglement in fiber Sagnac interferometers", "rotent"};
    app.require_subcommand(1);
    app.fallthrough();  // global geometry flags may follow the subcommand

    std::string scheme, config;
    double ra = 0, rb = 0, lambda = 0, n = 0;
    int windings = 0;
    auto* o_scheme = app.add_option("--scheme", scheme, "double or single (default double)");
    auto* o_ra = app.add_option("--ra", ra, "inner loop radius in m (default 0.25)");
    auto* o_rb = app.add_option("--rb", rb, "outer loop radius, or the single loop radius, in m (default 0.5)");
    auto* o_windings = app.add_option("--windings", windings, "number of windings N (default 10)");
    auto* o_lambda = app.add_option("--lambda", lambda, "wavelength in m (default 800e-9)");
    auto* o_n = app.add_option("--n", n, "fiber refractive index (default 1.46)");
    app.add_option("--config", config, "key=value file; flags given on the command line take precedence")
        ->check(CLI::ExistingFile);

    auto* sweep = app.add_subcommand("sweep", "CSV of the output state versus rotation rate");
    double omega_min = 0.0, omega_max = 4.0;
    int points = 401;
    bool bell_units = false;
    std::vector<std::string> columns;
    std::string output;
    sweep->add_option("--omega-min", omega_min, "lower rotation rate (rad/s)")->capture_default_str();
    sweep->add_option("--omega-max", omega_max, "upper rotation rate (rad/s)")->capture_default_str();
    sweep->add_option("--points", points, "number of rows")->capture_default_str();
    sweep->add_flag("--bell-units", bell_units, "read --omega-min/--omega-max in units of Omega_Bell");
    sweep->add_option("--columns", columns, "subset of columns, comma separated")->delimiter(',');
    sweep->add_option("-o,--output", output, "write the CSV to this file instead of stdout");

    auto* bellfreq = app.add_subcommand("bellfreq", "rotation rates producing Bell states");
    int k_max = 4;
    bellfreq->add_option("--kmax", k_max, "largest k in (2k+1) Omega_Bell")->capture_default_str();

    auto* synth = app.add_subcommand("synth", "gate plan measuring a two-qubit observable");
    std::string observable, matrix_file;
    auto* o_obs = synth->add_option("observable", observable, "Pauli pair such as sx_sy (path first)");
    auto* o_mat = synth->add_option("--matrix", matrix_file, "file with 16 row-major entries, re or (re,im)");
    o_obs->excludes(o_mat);
    o_mat->excludes(o_obs);

    auto* earth = app.add_subcommand("earth", "area needed for Earth's rotation to reach the first Bell state");
    double omega_earth = PhysConstants::omega_earth;
    earth->add_option("--omega-earth", omega_earth, "platform rotation rate (rad/s)")->capture_default_str();

    auto* werner = app.add_subcommand("werner", "PPT and witness test of Werner mixtures");
    int werner_points = 11;
    werner->add_option("--points", werner_points, "number of p values in [0, 1]")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? ok : validation_error;
    }

    try {
        GeometryOptions geo;
        if (!config.empty()) {
            std::ifstream in(config);
            geo.apply(parse_config(in));
        }
        if (o_scheme->count()) geo.scheme = parse_scheme(scheme);
        if (o_ra->count()) geo.ra = ra;
        if (o_rb->count()) geo.rb = rb;
        if (o_windings->count()) geo.windings = windings;
        if (o_lambda->count()) geo.wavelength = lambda;
        if (o_n->count()) geo.refractive_index = n;

        if (sweep->parsed()) {
            SweepRequest req;
            req.omega_min = omega_min;
            req.omega_max = omega_max;
            req.points = points;
            req.geometry = geo.geometry();
            req.bell_units = bell_units;
            req.columns = columns;
            req.validate();
            if (output.empty()) {
                cmd_sweep(req, out);
            } else {
                std::ofstream file(output);
                if (!file) throw ValidationError("cannot write '" + output + "'");
                cmd_sweep(req, file);
            }
        } else if (bellfreq->parsed()) {
            cmd_bellfreq(geo.geometry(), k_max, out);
        } else if (synth->parsed()) {
            if (observable.empty() && matrix_file.empty())
                throw ValidationError("synth: give an observable name or --matrix");
            cmd_synth(matrix_file.empty() ? parse_observable_name(observable) : read_matrix_file(matrix_file), out);
        } else if (earth->parsed()) {
            cmd_earth(geo.wavelength, omega_earth, out);
        } else if (werner->parsed()) {
            cmd_werner(geo.geometry(), werner_points, out);
        }
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << "\n";
        return validation_error;
    } catch (const SynthesisError& e) {
        err << "error: " << e.what() << "\n";
        return residual_error;
    }
    return ok;
}

}  // namespace rotent::cli
