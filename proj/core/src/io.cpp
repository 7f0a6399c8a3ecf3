#include "onewave/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <vector>

#include "onewave/error.hpp"

namespace onewave {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

std::string at_line(std::size_t line, const std::string& msg) { return "line " + std::to_string(line) + ": " + msg; }

Vec2 parse_point(std::string_view s) {
    const auto parts = split(s, ',');
    if (parts.size() != 2) throw ValidationError("expected a point 'x,y' but got '" + std::string(s) + "'");
    return {parse_number(parts[0]), parse_number(parts[1])};
}

std::vector<Vec2> parse_points(std::string_view s) {
    std::vector<Vec2> out;
    for (std::string_view item : split(s, ';')) {
        if (item.empty()) continue;
        out.push_back(parse_point(item));
    }
    return out;
}

// Reads "key=value" pairs from a "# tag key=value ..." header line.
std::map<std::string, std::string> header_fields(const std::string& line, const std::string& tag) {
    std::istringstream ss(line);
    std::string hash, word;
    ss >> hash >> word;
    if (hash != "#" || word != tag) throw ValidationError("line 1: expected header '# " + tag + " ...'");
    std::map<std::string, std::string> out;
    while (ss >> word) {
        const auto eq = word.find('=');
        if (eq == std::string::npos) throw ValidationError("line 1: malformed header field '" + word + "'");
        out[word.substr(0, eq)] = word.substr(eq + 1);
    }
    return out;
}

const std::string& require_field(const std::map<std::string, std::string>& m, const std::string& key,
                                 const std::string& where) {
    const auto it = m.find(key);
    if (it == m.end()) throw ValidationError(where + ": missing '" + key + "'");
    return it->second;
}

std::size_t parse_count(std::string_view text) {
    std::size_t v = 0;
    const auto t = trim(text);
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || ptr != t.data() + t.size()) {
        throw ValidationError("invalid integer '" + std::string(text) + "'");
    }
    return v;
}

}  // namespace

std::string format_number(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 15);
    return std::string(buf, res.ptr);
}

double parse_number(std::string_view text) {
    std::string_view t = trim(text);
    if (!t.empty() && t.front() == '+') t.remove_prefix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) {
        throw ValidationError("invalid number '" + std::string(text) + "'");
    }
    return v;
}

cplx parse_complex(std::string_view text) {
    std::string s;
    for (char c : text)
        if (c != ' ' && c != '\t') s.push_back(c);
    if (s.empty()) throw ValidationError("empty complex number");
    if (s.back() != 'i') return {parse_number(s), 0.0};
    s.pop_back();
    // Split at the last sign that is not part of an exponent.
    std::size_t split_at = std::string::npos;
    for (std::size_t i = s.size(); i-- > 1;) {
        if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
            split_at = i;
            break;
        }
    }
    auto imag_of = [](const std::string& t) {
        if (t.empty() || t == "+") return 1.0;
        if (t == "-") return -1.0;
        return parse_number(t);
    };
    if (split_at == std::string::npos) return {0.0, imag_of(s)};
    return {parse_number(s.substr(0, split_at)), imag_of(s.substr(split_at))};
}

std::string format_complex(cplx v) {
    std::string im = format_number(std::abs(v.imag()));
    return format_number(v.real()) + (std::signbit(v.imag()) ? "-" : "+") + im + "i";
}

std::map<std::string, std::string> read_key_values(std::istream& in) {
    std::map<std::string, std::string> out;
    std::string line;
    std::size_t n = 0;
    while (std::getline(in, line)) {
        ++n;
        std::string_view body = line;
        if (const auto hash = body.find('#'); hash != std::string_view::npos) body = body.substr(0, hash);
        body = trim(body);
        if (body.empty()) continue;
        const auto eq = body.find('=');
        if (eq == std::string_view::npos) throw ValidationError(at_line(n, "expected key=value"));
        const std::string key(trim(body.substr(0, eq)));
        if (key.empty()) throw ValidationError(at_line(n, "empty key"));
        if (out.count(key)) throw ValidationError(at_line(n, "duplicate key '" + key + "'"));
        out[key] = std::string(trim(body.substr(eq + 1)));
    }
    return out;
}

Scene parse_scene(std::istream& in) {
    // Keep line numbers for value errors.
    std::map<std::string, std::pair<std::string, std::size_t>> kv;
    std::string line;
    std::size_t n = 0;
    while (std::getline(in, line)) {
        ++n;
        std::string_view body = line;
        if (const auto hash = body.find('#'); hash != std::string_view::npos) body = body.substr(0, hash);
        body = trim(body);
        if (body.empty()) continue;
        const auto eq = body.find('=');
        if (eq == std::string_view::npos) throw ValidationError(at_line(n, "expected key=value"));
        const std::string key(trim(body.substr(0, eq)));
        static const std::vector<std::string> known{"type", "points", "vertices", "center", "radius",
                                                    "bc", "eta", "density", "normalization"};
        if (std::find(known.begin(), known.end(), key) == known.end()) {
            throw ValidationError(at_line(n, "unknown key '" + key + "'"));
        }
        if (kv.count(key)) throw ValidationError(at_line(n, "duplicate key '" + key + "'"));
        kv[key] = {std::string(trim(body.substr(eq + 1))), n};
    }

    auto get = [&](const std::string& key) -> const std::pair<std::string, std::size_t>* {
        const auto it = kv.find(key);
        return it == kv.end() ? nullptr : &it->second;
    };
    auto with_line = [&](const std::string& key, auto&& fn) {
        const auto* e = get(key);
        try {
            return fn(e->first);
        } catch (const ValidationError& err) {
            throw ValidationError(at_line(e->second, err.what()));
        }
    };

    const auto* type = get("type");
    if (!type) throw ValidationError("scene: missing 'type'");

    Scene scene;
    const std::string& t = type->first;
    if (t == "point") {
        if (!get("points")) throw ValidationError("scene: point type needs 'points'");
        scene = PointScatterers{with_line("points", [](const std::string& s) { return parse_points(s); })};
    } else if (t == "disk") {
        DiskObstacle d;
        if (get("center")) d.center = with_line("center", [](const std::string& s) { return parse_point(s); });
        if (!get("radius")) throw ValidationError("scene: disk type needs 'radius'");
        d.radius = with_line("radius", [](const std::string& s) { return parse_number(s); });
        const std::string bc = get("bc") ? get("bc")->first : "soundsoft";
        if (bc == "impedance") {
            if (!get("eta")) throw ValidationError("scene: impedance disk needs 'eta'");
            d.bc = with_line("eta", [](const std::string& s) { return BoundaryCondition::impedance(parse_complex(s)); });
        } else if (bc != "soundsoft") {
            throw ValidationError(at_line(get("bc")->second, "bc must be soundsoft or impedance"));
        }
        scene = d;
    } else if (t == "polygon-source" || t == "polygon-obstacle") {
        if (!get("vertices")) throw ValidationError("scene: polygon needs 'vertices'");
        auto v = with_line("vertices", [](const std::string& s) { return parse_points(s); });
        if (t == "polygon-source") {
            PolygonSource s{std::move(v), {1.0, 0.0}, SourceNormalization::Standard};
            if (get("density")) s.density = with_line("density", [](const std::string& x) { return parse_complex(x); });
            if (const auto* norm_e = get("normalization")) {
                if (norm_e->first == "standard") {
                    s.normalization = SourceNormalization::Standard;
                } else if (norm_e->first == "paper-literal") {
                    s.normalization = SourceNormalization::PaperLiteral;
                } else {
                    throw ValidationError(at_line(norm_e->second, "normalization must be standard or paper-literal"));
                }
            }
            scene = std::move(s);
        } else {
            if (get("bc") && get("bc")->first != "soundsoft") {
                throw ValidationError(at_line(get("bc")->second, "polygon obstacles are sound-soft only"));
            }
            scene = PolygonObstacle{std::move(v)};
        }
    } else {
        throw ValidationError(at_line(type->second, "unknown scene type '" + t + "'"));
    }
    try {
        validate_scene(scene);
    } catch (const ValidationError& err) {
        const char* key = std::holds_alternative<PointScatterers>(scene) ? "points"
                          : std::holds_alternative<DiskObstacle>(scene)  ? "radius"
                                                                         : "vertices";
        if (const auto* e = get(key)) throw ValidationError(at_line(e->second, err.what()));
        throw;
    }
    return scene;
}

Scene load_scene(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open scene file '" + path + "'");
    try {
        return parse_scene(in);
    } catch (const ValidationError& err) {
        throw ValidationError(path + ": " + err.what());
    }
}

void write_far_field(std::ostream& out, const FarFieldPattern& u) {
    out << "# farfield k=" << format_number(u.k) << " ntheta=" << u.n_theta() << '\n';
    for (std::size_t j = 0; j < u.n_theta(); ++j) {
        out << format_number(u.theta(j)) << ',' << format_number(u.values[j].real()) << ','
            << format_number(u.values[j].imag()) << '\n';
    }
}

FarFieldPattern read_far_field(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw ValidationError("far-field file is empty");
    const auto h = header_fields(line, "farfield");
    FarFieldPattern u;
    u.k = parse_number(require_field(h, "k", "line 1"));
    const std::size_t nt = parse_count(require_field(h, "ntheta", "line 1"));
    u.values.reserve(nt);
    std::size_t n = 1;
    while (std::getline(in, line)) {
        ++n;
        if (trim(line).empty()) continue;
        const auto parts = split(line, ',');
        if (parts.size() != 3) throw ValidationError(at_line(n, "expected theta,re,im"));
        try {
            const double th = parse_number(parts[0]);
            const double expected = 2.0 * std::numbers::pi * static_cast<double>(u.values.size()) / nt;
            if (std::abs(th - expected) > 1e-9 * (1.0 + expected)) {
                throw ValidationError("angle does not match the uniform grid");
            }
            u.values.emplace_back(parse_number(parts[1]), parse_number(parts[2]));
        } catch (const ValidationError& err) {
            throw ValidationError(at_line(n, err.what()));
        }
        if (u.values.size() > nt) throw ValidationError(at_line(n, "more rows than ntheta"));
    }
    if (u.values.size() != nt) throw ValidationError("far-field file has fewer rows than ntheta");
    u.validate();
    return u;
}

void write_multistatic(std::ostream& out, const ComplexMatrix& f) {
    out << "# multistatic n=" << f.rows() << '\n';
    for (std::size_t p = 0; p < f.rows(); ++p)
        for (std::size_t q = 0; q < f.cols(); ++q)
            out << p << ',' << q << ',' << format_number(f(p, q).real()) << ',' << format_number(f(p, q).imag())
                << '\n';
}

ComplexMatrix read_multistatic(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw ValidationError("multistatic file is empty");
    const auto h = header_fields(line, "multistatic");
    const std::size_t n = parse_count(require_field(h, "n", "line 1"));
    if (n == 0) throw ValidationError("line 1: n must be positive");
    ComplexMatrix f(n, n);
    std::vector<bool> seen(n * n, false);
    std::size_t ln = 1;
    while (std::getline(in, line)) {
        ++ln;
        if (trim(line).empty()) continue;
        const auto parts = split(line, ',');
        if (parts.size() != 4) throw ValidationError(at_line(ln, "expected p,q,re,im"));
        try {
            const std::size_t p = parse_count(parts[0]);
            const std::size_t q = parse_count(parts[1]);
            if (p >= n || q >= n) throw ValidationError("index out of range");
            f(p, q) = {parse_number(parts[2]), parse_number(parts[3])};
            seen[p * n + q] = true;
        } catch (const ValidationError& err) {
            throw ValidationError(at_line(ln, err.what()));
        }
    }
    if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
        throw ValidationError("multistatic file is missing entries");
    }
    return f;
}

void write_field_csv(std::ostream& out, const IndicatorField& f, double k) {
    out << "# field k=" << format_number(k) << " nx=" << f.grid.nx << " ny=" << f.grid.ny << '\n';
    for (std::size_t iy = 0; iy < f.grid.ny; ++iy) {
        for (std::size_t ix = 0; ix < f.grid.nx; ++ix) {
            const Vec2 p = f.grid.point(ix, iy);
            out << format_number(p.x) << ',' << format_number(p.y) << ',' << format_number(f.at(ix, iy)) << '\n';
        }
    }
}

void write_field_pgm(std::ostream& out, const IndicatorField& f) {
    const IndicatorField g = normalize_field(f);
    out << "P2\n" << g.grid.nx << ' ' << g.grid.ny << "\n255\n";
    for (std::size_t r = 0; r < g.grid.ny; ++r) {
        const std::size_t iy = g.grid.ny - 1 - r;
        for (std::size_t ix = 0; ix < g.grid.nx; ++ix) {
            out << static_cast<int>(std::lround(255.0 * g.at(ix, iy))) << (ix + 1 == g.grid.nx ? '\n' : ' ');
        }
    }
}

void write_scheme_one_csv(std::ostream& out, const SchemeOneResult& r) {
    out << "n,zx,zy,h\n";
    for (std::size_t n = 0; n < r.centers.size(); ++n) {
        out << n << ',' << format_number(r.centers[n].x) << ',' << format_number(r.centers[n].y) << ','
            << format_number(r.radii[n]) << '\n';
    }
}

void write_mask_pgm(std::ostream& out, const SchemeOneResult& r) {
    out << "P2\n" << r.grid.nx << ' ' << r.grid.ny << "\n255\n";
    for (std::size_t row = 0; row < r.grid.ny; ++row) {
        const std::size_t iy = r.grid.ny - 1 - row;
        for (std::size_t ix = 0; ix < r.grid.nx; ++ix) {
            out << (r.mask[iy * r.grid.nx + ix] ? 255 : 0) << (ix + 1 == r.grid.nx ? '\n' : ' ');
        }
    }
}

}  // namespace onewave
