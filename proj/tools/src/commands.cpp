#include "onewave_cli/commands.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include "onewave/error.hpp"
#include "onewave/io.hpp"

namespace onewave::cli {

namespace {

// Output goes to a file, or to `out` when the path is "-".
template <class Writer>
void emit(const std::string& path, std::ostream& out, Writer&& write) {
    if (path == "-") {
        write(out);
        return;
    }
    std::ostringstream buf;
    write(buf);
    std::ofstream file(path, std::ios::binary);
    if (!file) throw ValidationError("cannot open output file '" + path + "'");
    file << buf.str();
    if (!file) throw ValidationError("failed writing '" + path + "'");
}

void require_path(const std::string& path, const char* flag) {
    if (path.empty()) throw ValidationError(std::string("missing required option ") + flag);
}

FarFieldPattern load_far_field(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open data file '" + path + "'");
    try {
        return read_far_field(in);
    } catch (const ValidationError& e) {
        throw ValidationError(path + ": " + e.what());
    }
}

ComplexMatrix load_multistatic(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open multistatic file '" + path + "'");
    try {
        return read_multistatic(in);
    } catch (const ValidationError& e) {
        throw ValidationError(path + ": " + e.what());
    }
}

// Fills in k from the data when it was not given, otherwise checks it.
ImagingConfig config_for(const RunConfig& cfg, double data_k) {
    ImagingConfig ic = cfg.imaging;
    if (ic.k == 0.0) {
        ic.k = data_k;
    } else if (std::abs(ic.k - data_k) > 1e-12 * data_k) {
        throw ValidationError("--k " + format_number(ic.k) + " does not match data k=" + format_number(data_k));
    }
    ic.validate();
    return ic;
}

std::function<bool(Vec2)> region_of(const Scene& scene) {
    if (const auto* s = std::get_if<PolygonSource>(&scene)) {
        return [v = s->vertices](Vec2 p) { return point_in_convex_polygon(v, p); };
    }
    if (const auto* o = std::get_if<PolygonObstacle>(&scene)) {
        return [v = o->vertices](Vec2 p) { return point_in_convex_polygon(v, p); };
    }
    if (const auto* d = std::get_if<DiskObstacle>(&scene)) {
        return [c = d->center, r = d->radius](Vec2 p) { return norm(p - c) <= r; };
    }
    throw ValidationError("sweep needs a polygon or disk scene to define the target region");
}

void print_field_summary(std::ostream& out, const IndicatorField& f) {
    double lo = kIndicatorSentinel, hi = 0.0;
    for (double v : f.values) {
        if (v == kIndicatorSentinel) continue;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    out << "field " << f.grid.nx << 'x' << f.grid.ny << " min=" << format_number(lo) << " max=" << format_number(hi)
        << " flagged=" << f.flagged << '\n';
}

void write_field_outputs(const RunConfig& cfg, std::ostream& out, const IndicatorField& f, double k) {
    emit(cfg.out_path + ".csv", out, [&](std::ostream& o) { write_field_csv(o, f, k); });
    emit(cfg.out_path + ".pgm", out, [&](std::ostream& o) { write_field_pgm(o, f); });
    print_field_summary(out, f);
}

}  // namespace

int cmd_synthesize(const RunConfig& cfg, std::ostream& out) {
    require_path(cfg.scene_path, "--scene");
    require_path(cfg.out_path, "--out");
    const double k = cfg.imaging.k;
    if (!(k > 0.0)) throw ValidationError("synthesize needs --k > 0");
    const Scene scene = load_scene(cfg.scene_path);
    FarFieldPattern u = scene_far_field(scene, k, Direction(cfg.incident_angle), cfg.n_theta);
    u = add_noise(u, cfg.noise, cfg.seed);
    emit(cfg.out_path, out, [&](std::ostream& o) { write_far_field(o, u); });
    if (!cfg.multistatic_path.empty()) {
        ComplexMatrix f = multistatic_matrix(scene, k, cfg.n_theta);
        if (cfg.noise > 0.0) {
            for (std::size_t q = 0; q < f.cols(); ++q) {
                FarFieldPattern col{k, f.column(q)};
                col = add_noise(col, cfg.noise, cfg.seed + 1 + q);
                for (std::size_t p = 0; p < f.rows(); ++p) f(p, q) = col.values[p];
            }
        }
        emit(cfg.multistatic_path, out, [&](std::ostream& o) { write_multistatic(o, f); });
    }
    if (cfg.out_path != "-") out << "wrote " << u.n_theta() << " far-field samples to " << cfg.out_path << '\n';
    return 0;
}

int cmd_invert(const RunConfig& cfg, std::ostream& out) {
    require_path(cfg.data_path, "--data");
    require_path(cfg.out_path, "--out");

    if (cfg.method == Method::Classical) {
        const ComplexMatrix f = load_multistatic(cfg.data_path);
        ImagingConfig ic = cfg.imaging;
        if (!(ic.k > 0.0)) throw ValidationError("classical inversion needs --k");
        ic.validate();
        const ClassicalFactorization fm(f, ic.k, cfg.classical);
        write_field_outputs(cfg, out, classical_field(fm, ic.grid), ic.k);
        return 0;
    }

    const FarFieldPattern u = load_far_field(cfg.data_path);
    const ImagingConfig ic = config_for(cfg, u.k);
    if (cfg.method == Method::Scheme1) {
        const SchemeOneResult r = scheme_one(u, ic);
        emit(cfg.out_path + ".csv", out, [&](std::ostream& o) { write_scheme_one_csv(o, r); });
        emit(cfg.out_path + "_mask.pgm", out, [&](std::ostream& o) { write_mask_pgm(o, r); });
        out << "n,zx,zy,h,flag\n";
        for (std::size_t n = 0; n < r.centers.size(); ++n) {
            const auto& t = r.thresholds[n];
            out << n << ',' << format_number(r.centers[n].x) << ',' << format_number(r.centers[n].y) << ','
                << format_number(r.radii[n]) << ','
                << (t.degenerate_signal ? "degenerate" : t.out_of_range ? "out-of-range" : "ok") << '\n';
        }
        return 0;
    }
    const IndicatorField f = cfg.method == Method::Esm ? esm_field(u, ic) : scheme_two(u, ic);
    write_field_outputs(cfg, out, f, ic.k);
    return 0;
}

int cmd_spectrum(const RunConfig& cfg, std::ostream& out) {
    const double k = cfg.imaging.k;
    if (!(k > 0.0)) throw ValidationError("spectrum needs --k > 0");
    const DiskSpectrum s = spectral_system({{0.0, 0.0}, cfg.disk_radius, cfg.imaging.bc}, k, cfg.imaging.truncation);
    const std::string path = cfg.out_path.empty() ? "-" : cfg.out_path;
    emit(path, out, [&](std::ostream& o) {
        o << "n,re,im,abs\n";
        for (int n = -s.truncation; n <= s.truncation; ++n) {
            const cplx l = s.eigenvalue(n);
            o << n << ',' << format_number(l.real()) << ',' << format_number(l.imag()) << ','
              << format_number(std::abs(l)) << '\n';
        }
    });
    if (s.dirichlet_hit) out << "# warning: sound-soft eigenvalue vanishes (Dirichlet eigenvalue)\n";
    return 0;
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out) {
    require_path(cfg.data_path, "--data");
    require_path(cfg.scene_path, "--scene");
    if (cfg.alphas.empty()) throw ValidationError("sweep needs at least one --alphas value");
    if (cfg.method != Method::Scheme2 && cfg.method != Method::Esm) {
        throw ValidationError("sweep supports --method scheme2 or esm");
    }
    const FarFieldPattern u = load_far_field(cfg.data_path);
    const auto inside = region_of(load_scene(cfg.scene_path));
    std::ostringstream table;
    table << "alpha,contrast\n";
    for (double a : cfg.alphas) {
        RunConfig c = cfg;
        c.imaging.alpha = a;
        const ImagingConfig ic = config_for(c, u.k);
        const IndicatorField f = cfg.method == Method::Esm ? esm_field(u, ic) : scheme_two(u, ic);
        table << format_number(a) << ',' << format_number(region_contrast(normalize_field(f), inside)) << '\n';
    }
    const std::string path = cfg.out_path.empty() ? "-" : cfg.out_path;
    emit(path, out, [&](std::ostream& o) { o << table.str(); });
    return 0;
}

namespace {

struct Raw {
    std::string bc = "soundsoft";
    std::string eta = "1i";
    std::string method = "scheme2";
    std::string classical = "quarter";
    std::vector<double> grid;
    std::string alphas;
};

void add_imaging_flags(CLI::App* sub, RunConfig& cfg, Raw& raw) {
    sub->add_option("--R", cfg.imaging.R, "sampling circle radius");
    sub->add_option("--nz", cfg.imaging.n_centers, "number of sampling centres N_z");
    sub->add_option("--M", cfg.imaging.n_radii, "number of trial radii");
    sub->add_option("--N", cfg.imaging.truncation, "spectral truncation");
    sub->add_option("--alpha", cfg.imaging.alpha, "Tikhonov parameter");
    sub->add_option("--delta", cfg.imaging.delta, "Scheme I threshold");
    sub->add_option("--bc", raw.bc, "test-disk boundary condition (soundsoft|impedance)");
    sub->add_option("--eta", raw.eta, "impedance coefficient a+bi");
    sub->add_option("--grid", raw.grid, "xmin xmax ymin ymax (default [-R,R]^2)")->expected(4);
    sub->add_option("--nx", cfg.imaging.grid.nx, "grid points along x");
    sub->add_option("--ny", cfg.imaging.grid.ny, "grid points along y");
}

bool has_flag(const std::vector<std::string>& args, const std::string& flag) {
    return std::any_of(args.begin(), args.end(), [&](const std::string& a) {
        return a == flag || a.rfind(flag + "=", 0) == 0;
    });
}

// Appends config-file values for flags not given on the command line.
std::vector<std::string> merge_config(std::vector<std::string> args, CLI::App& app) {
    std::string path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
        if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
    }
    if (path.empty() || args.empty()) return args;
    CLI::App* sub = nullptr;
    for (CLI::App* s : app.get_subcommands({})) {
        if (s->get_name() == args[0]) sub = s;
    }
    if (!sub) return args;
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open config file '" + path + "'");
    std::map<std::string, std::string> kv;
    try {
        kv = read_key_values(in);
    } catch (const ValidationError& e) {
        throw ValidationError(path + ": " + e.what());
    }
    for (const auto& [key, value] : kv) {
        const std::string flag = "--" + key;
        if (key == "config" || !sub->get_option_no_throw(flag)) {
            throw ValidationError(path + ": unknown key '" + key + "' for command " + args[0]);
        }
        if (has_flag(args, flag)) continue;
        args.push_back(flag);
        std::istringstream words(value);
        for (std::string w; words >> w;) args.push_back(w);
    }
    return args;
}

void finish(RunConfig& cfg, const Raw& raw, bool grid_given) {
    if (raw.bc == "impedance") {
        cfg.imaging.bc = BoundaryCondition::impedance(parse_complex(raw.eta));
    } else if (raw.bc != "soundsoft") {
        throw ValidationError("--bc must be soundsoft or impedance");
    }
    if (raw.method == "scheme1") {
        cfg.method = Method::Scheme1;
    } else if (raw.method == "scheme2") {
        cfg.method = Method::Scheme2;
    } else if (raw.method == "classical") {
        cfg.method = Method::Classical;
    } else if (raw.method == "esm") {
        cfg.method = Method::Esm;
    } else {
        throw ValidationError("--method must be scheme1, scheme2, classical or esm");
    }
    if (raw.classical == "quarter") {
        cfg.classical = ClassicalMethod::QuarterPower;
    } else if (raw.classical == "fsharp") {
        cfg.classical = ClassicalMethod::FSharp;
    } else {
        throw ValidationError("--classical must be quarter or fsharp");
    }
    if (grid_given) {
        cfg.imaging.grid.x_min = raw.grid[0];
        cfg.imaging.grid.x_max = raw.grid[1];
        cfg.imaging.grid.y_min = raw.grid[2];
        cfg.imaging.grid.y_max = raw.grid[3];
    } else {
        const double r = cfg.imaging.R;
        cfg.imaging.grid.x_min = cfg.imaging.grid.y_min = -r;
        cfg.imaging.grid.x_max = cfg.imaging.grid.y_max = r;
    }
    if (!raw.alphas.empty()) {
        std::string list = raw.alphas;
        std::replace(list.begin(), list.end(), ',', ' ');
        std::istringstream ss(list);
        for (std::string w; ss >> w;) cfg.alphas.push_back(parse_number(w));
    }
}

}  // namespace

int run(const std::vector<std::string>& input, std::ostream& out, std::ostream& err) {
    CLI::App app{"One-wave factorization method: far-field synthesis and inverse scattering imaging", "onewave"};
    app.require_subcommand(1);

    RunConfig cfg;
    cfg.imaging.k = 0.0;
    Raw raw;
    std::string config_path;

    auto* syn = app.add_subcommand("synthesize", "synthesize far-field data for a scene");
    syn->add_option("--scene", cfg.scene_path, "scene description file")->required();
    syn->add_option("--k", cfg.imaging.k, "wavenumber")->required();
    syn->add_option("--ntheta", cfg.n_theta, "number of observation directions");
    syn->add_option("--theta", cfg.incident_angle, "incident direction angle (radians)");
    syn->add_option("--noise", cfg.noise, "relative noise level delta");
    syn->add_option("--seed", cfg.seed, "noise seed");
    syn->add_option("--out", cfg.out_path, "far-field output file ('-' for stdout)")->required();
    syn->add_option("--multistatic", cfg.multistatic_path, "also write the multistatic matrix CSV");

    auto* inv = app.add_subcommand("invert", "reconstruct from far-field data");
    inv->add_option("--data", cfg.data_path, "far-field file (multistatic CSV for classical)")->required();
    inv->add_option("--method", raw.method, "scheme1|scheme2|classical|esm");
    inv->add_option("--classical", raw.classical, "classical variant: quarter|fsharp");
    inv->add_option("--k", cfg.imaging.k, "wavenumber (checked against the data)");
    inv->add_option("--out", cfg.out_path, "output prefix")->required();
    add_imaging_flags(inv, cfg, raw);

    auto* spec = app.add_subcommand("spectrum", "print the eigenvalues of a test disk");
    spec->add_option("--k", cfg.imaging.k, "wavenumber")->required();
    spec->add_option("--radius", cfg.disk_radius, "test-disk radius h");
    spec->add_option("--N", cfg.imaging.truncation, "largest order");
    spec->add_option("--bc", raw.bc, "soundsoft|impedance");
    spec->add_option("--eta", raw.eta, "impedance coefficient a+bi");
    spec->add_option("--out", cfg.out_path, "CSV output file (default stdout)");

    auto* sweep = app.add_subcommand("sweep", "interior/exterior contrast for a list of alphas");
    sweep->add_option("--data", cfg.data_path, "far-field file")->required();
    sweep->add_option("--scene", cfg.scene_path, "scene whose shape defines the interior")->required();
    sweep->add_option("--alphas", raw.alphas, "comma-separated Tikhonov parameters")->required();
    sweep->add_option("--method", raw.method, "scheme2|esm");
    sweep->add_option("--k", cfg.imaging.k, "wavenumber (checked against the data)");
    sweep->add_option("--out", cfg.out_path, "CSV output file (default stdout)");
    add_imaging_flags(sweep, cfg, raw);

    for (CLI::App* s : {syn, inv, spec, sweep}) s->add_option("--config", config_path, "key=value defaults file");

    try {
        std::vector<std::string> args = merge_config(input, app);
        std::reverse(args.begin(), args.end());
        app.parse(args);
        const bool grid_given = !raw.grid.empty();
        finish(cfg, raw, grid_given);
        if (syn->parsed()) return cmd_synthesize(cfg, out);
        if (inv->parsed()) return cmd_invert(cfg, out);
        if (spec->parsed()) return cmd_spectrum(cfg, out);
        return cmd_sweep(cfg, out);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const Error& e) {
        err << "numerical failure: " << e.what() << '\n';
        return 2;
    }
}

}  // namespace onewave::cli
