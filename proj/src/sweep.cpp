#include "mimosim/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <map>
#include <sstream>

#include "mimosim/scheduler.hpp"

namespace mimosim {

namespace {

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

void check_grid(const SweepSpec& spec) {
    if (spec.grid.empty()) throw ValidationError("sweep: grid must be non-empty");
    if (!std::is_sorted(spec.grid.begin(), spec.grid.end()) ||
        std::adjacent_find(spec.grid.begin(), spec.grid.end()) != spec.grid.end()) {
        throw ValidationError("sweep: grid must be strictly increasing");
    }
    if (spec.trials < 1) throw ValidationError("sweep: trials must be >= 1");
}

MetricsRow closed_form_row(const SystemConfig& c, int num_antennas, int class_n) {
    const int k_prime = (c.num_users + class_n - 1) / class_n;
    const auto stats =
        contamination_stats(k_prime, c.num_pilots, c.num_cells, c.intercell_factor);
    MetricsRow row;
    row.num_antennas = num_antennas;
    row.class_n = class_n;
    row.k_prime = k_prime;
    row.l_prime = stats.l_prime;
    row.sinr = sinr_closed_form(num_antennas, c.num_users, c.pilot_len, c.intercell_factor,
                                stats.l_prime, c.uplink_power);
    row.se = spectral_efficiency(c.frame_len, c.pilot_len, c.num_users, row.sinr);
    row.ee = energy_efficiency(class_n, c.frame_len, c.pilot_len, c.num_users, row.sinr,
                               c.uplink_power);
    return row;
}

ResultTable finish(const SweepSpec& spec, std::vector<MetricsRow> rows) {
    ResultTable table;
    table.rows = std::move(rows);
    table.config_hash = fnv1a(emit_config(spec.fixed));
    table.seed = spec.fixed.rng_seed;
    table.created_unix = static_cast<std::int64_t>(std::time(nullptr));
    return table;
}

std::string fmt12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

}  // namespace

ResultTable sweep_antennas(const SweepSpec& spec, const std::vector<int>& classes) {
    check_grid(spec);
    const SystemConfig c = validate(spec.fixed);
    if (classes.empty()) throw ValidationError("sweep: class list must be non-empty");
    std::vector<MetricsRow> rows;
    rows.reserve(classes.size() * spec.grid.size());
    if (spec.grid.front() < 2 || spec.grid.back() > 10000) {
        throw ValidationError("sweep: antenna grid must lie within [2, 10000]");
    }
    for (int n : classes) {
        if (n < 1 || n > c.max_class) {
            throw ValidationError("sweep: class index outside [1, max_class]");
        }
        for (int m : spec.grid) {
            rows.push_back(closed_form_row(c, m, n));
        }
    }
    return finish(spec, std::move(rows));
}

ResultTable sweep_class(const SweepSpec& spec) {
    check_grid(spec);
    const SystemConfig c = validate(spec.fixed);
    std::vector<MetricsRow> rows;
    rows.reserve(spec.grid.size());
    for (int n : spec.grid) {
        if (n < 1 || n > c.max_class) {
            throw ValidationError("sweep: class index outside [1, max_class]");
        }
        rows.push_back(closed_form_row(c, c.num_antennas, n));
    }
    return finish(spec, std::move(rows));
}

std::string table_to_csv(const ResultTable& table) {
    std::ostringstream out;
    out << "M,class_n,K_prime,L_prime,sinr_linear,sinr_db,se_bits_per_s_per_hz,ee_normalized\n";
    for (const auto& r : table.rows) {
        out << r.num_antennas << ',' << r.class_n << ',' << r.k_prime << ',' << r.l_prime << ','
            << fmt12(r.sinr) << ',' << fmt12(10.0 * std::log10(r.sinr)) << ',' << fmt12(r.se)
            << ',' << fmt12(r.ee) << '\n';
    }
    return out.str();
}

void emit_csv(const ResultTable& table, const std::string& path) {
    if (table.rows.empty()) throw IoError("emit_csv: empty table");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("emit_csv: cannot open '" + path + "'");
    out << table_to_csv(table);
    if (!out) throw IoError("emit_csv: write failure on '" + path + "'");
}

namespace {

struct Series {
    int class_n;
    std::vector<double> x, y;
};

// Maps rows to one series per class for the chosen y extractor.
template <typename F>
std::vector<Series> split_series(const ResultTable& table, SweepVariable variable, F&& get_y) {
    std::map<int, Series> by_class;
    for (const auto& r : table.rows) {
        auto& s = by_class.try_emplace(r.class_n, Series{r.class_n, {}, {}}).first->second;
        s.x.push_back(variable == SweepVariable::antennas ? r.num_antennas : r.class_n);
        s.y.push_back(get_y(r));
    }
    std::vector<Series> out;
    for (auto& [n, s] : by_class) out.push_back(std::move(s));
    return out;
}

// Palette shared by both panels; cycles for many classes.
const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

void render_panel(std::ostringstream& svg, const std::vector<Series>& series, double px,
                  double py, double pw, double ph, const std::string& x_label,
                  const std::string& y_label, bool legend) {
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const auto& s : series) {
        for (double v : s.x) xmin = std::min(xmin, v), xmax = std::max(xmax, v);
        for (double v : s.y) ymin = std::min(ymin, v), ymax = std::max(ymax, v);
    }
    if (xmax == xmin) xmax = xmin + 1.0;
    if (ymax == ymin) ymax = ymin + 1.0;
    ymin = std::min(0.0, ymin);
    auto sx = [&](double v) { return px + (v - xmin) / (xmax - xmin) * pw; };
    auto sy = [&](double v) { return py + ph - (v - ymin) / (ymax - ymin) * ph; };

    svg << "<rect x=\"" << px << "\" y=\"" << py << "\" width=\"" << pw << "\" height=\"" << ph
        << "\" fill=\"none\" stroke=\"#333\"/>\n";
    for (int i = 0; i <= 4; ++i) {
        const double xv = xmin + (xmax - xmin) * i / 4.0;
        const double yv = ymin + (ymax - ymin) * i / 4.0;
        svg << "<text x=\"" << sx(xv) << "\" y=\"" << py + ph + 16
            << "\" font-size=\"10\" text-anchor=\"middle\">" << fmt12(std::round(xv * 100) / 100)
            << "</text>\n";
        svg << "<text x=\"" << px - 6 << "\" y=\"" << sy(yv) + 3
            << "\" font-size=\"10\" text-anchor=\"end\">" << fmt12(std::round(yv * 100) / 100)
            << "</text>\n";
    }
    svg << "<text x=\"" << px + pw / 2 << "\" y=\"" << py + ph + 34
        << "\" font-size=\"12\" text-anchor=\"middle\">" << x_label << "</text>\n";
    svg << "<text x=\"" << px - 46 << "\" y=\"" << py + ph / 2
        << "\" font-size=\"12\" text-anchor=\"middle\" transform=\"rotate(-90 " << px - 46 << ' '
        << py + ph / 2 << ")\">" << y_label << "</text>\n";

    for (std::size_t i = 0; i < series.size(); ++i) {
        const auto& s = series[i];
        const char* color = kColors[i % (sizeof(kColors) / sizeof(kColors[0]))];
        svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t p = 0; p < s.x.size(); ++p) {
            svg << sx(s.x[p]) << ',' << sy(s.y[p]) << ' ';
        }
        svg << "\"/>\n";
        if (legend) {
            const double ly = py + 14 + 16 * static_cast<double>(i);
            svg << "<line x1=\"" << px + pw - 90 << "\" y1=\"" << ly << "\" x2=\"" << px + pw - 70
                << "\" y2=\"" << ly << "\" stroke=\"" << color << "\" stroke-width=\"1.5\"/>\n";
            svg << "<text x=\"" << px + pw - 64 << "\" y=\"" << ly + 4
                << "\" font-size=\"11\">Class " << s.class_n << "</text>\n";
        }
    }
}

}  // namespace

std::string table_to_svg(const ResultTable& table, SweepVariable variable) {
    if (table.rows.empty()) throw IoError("emit_plot: empty table");
    const std::string x_label =
        variable == SweepVariable::antennas ? "M (antennas)" : "class index";
    auto se_series = split_series(table, variable, [](const MetricsRow& r) { return r.se; });
    auto ee_series = split_series(table, variable, [](const MetricsRow& r) { return r.ee; });
    // Class sweeps collapse to one curve per class with a single point each;
    // merge them into a single series so the polyline is drawn over classes.
    if (variable == SweepVariable::class_index) {
        auto merge = [](std::vector<Series>& v) {
            Series all{0, {}, {}};
            for (auto& s : v) {
                all.x.insert(all.x.end(), s.x.begin(), s.x.end());
                all.y.insert(all.y.end(), s.y.begin(), s.y.end());
            }
            v = {std::move(all)};
        };
        merge(se_series);
        merge(ee_series);
    }

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"760\" height=\"640\" "
           "viewBox=\"0 0 760 640\">\n";
    svg << "<rect width=\"760\" height=\"640\" fill=\"white\"/>\n";
    const bool legend = variable == SweepVariable::antennas;
    render_panel(svg, se_series, 70, 20, 640, 250, x_label, "SE (bits/s/Hz)", legend);
    render_panel(svg, ee_series, 70, 340, 640, 250, x_label, "EE (normalized)", legend);
    svg << "</svg>\n";
    return svg.str();
}

void emit_plot(const ResultTable& table, SweepVariable variable, const std::string& path) {
    const std::string svg = table_to_svg(table, variable);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("emit_plot: cannot open '" + path + "'");
    out << svg;
    if (!out) throw IoError("emit_plot: write failure on '" + path + "'");
}

}  // namespace mimosim
