#include "fraclap/field_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace fraclap {

void write_field_csv(const Field& f, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    const Grid& g = *f.grid();
    const int d = g.dim();
    for (int a = 1; a <= d; ++a) out << "j" << a << ",";
    for (int a = 1; a <= d; ++a) out << "x" << a << ",";
    out << "value\n";
    char buf[32];
    std::size_t k = 0;
    for (std::int64_t flat : g.active_flat()) {
        const auto idx = g.unflatten(flat);
        const auto x = g.point(std::span<const int>(idx.data(), static_cast<std::size_t>(d)));
        for (int a = 0; a < d; ++a) out << (idx[static_cast<std::size_t>(a)] + 1) << ",";
        for (int a = 0; a < d; ++a) {
            std::snprintf(buf, sizeof buf, "%.17g", x[static_cast<std::size_t>(a)]);
            out << buf << ",";
        }
        std::snprintf(buf, sizeof buf, "%.17g", f[static_cast<std::int64_t>(k++)]);
        out << buf << "\n";
    }
}

void write_field_binary(const Field& f, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    const Grid& g = *f.grid();
    std::ostringstream header;
    header << "fraclap-field v1 " << g.dim() << " " << g.points_per_axis();
    header.precision(17);
    for (int a = 0; a < g.dim(); ++a)
        header << " " << g.box().lo[static_cast<std::size_t>(a)] << " " << g.box().hi[static_cast<std::size_t>(a)];
    header << " " << g.n_active() << "\n";
    const std::string h = header.str();
    out.write(h.data(), static_cast<std::streamsize>(h.size()));
    out.write(reinterpret_cast<const char*>(f.values().data()),
              static_cast<std::streamsize>(sizeof(double) * f.values().size()));
    if (!out) throw std::runtime_error("write failed: " + path);
}

Field read_field_binary(const std::string& path, GridPtr grid) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::string header;
    std::getline(in, header);
    std::istringstream hs(header);
    std::string magic, version;
    int d = 0, m = 0;
    hs >> magic >> version >> d >> m;
    if (magic != "fraclap-field" || version != "v1")
        throw std::runtime_error(path + ": not a fraclap-field v1 file");
    if (d != grid->dim() || m != grid->points_per_axis())
        throw std::invalid_argument(path + ": grid shape does not match header");
    for (int a = 0; a < d; ++a) {
        double lo = 0.0, hi = 0.0;
        hs >> lo >> hi;
        if (std::abs(lo - grid->box().lo[static_cast<std::size_t>(a)]) > 1e-15 ||
            std::abs(hi - grid->box().hi[static_cast<std::size_t>(a)]) > 1e-15)
            throw std::invalid_argument(path + ": box does not match header");
    }
    std::int64_t n = 0;
    hs >> n;
    if (n != grid->n_active()) throw std::invalid_argument(path + ": active count does not match header");
    std::vector<double> vals(static_cast<std::size_t>(n));
    in.read(reinterpret_cast<char*>(vals.data()), static_cast<std::streamsize>(sizeof(double) * vals.size()));
    if (!in) throw std::runtime_error(path + ": truncated data section");
    return Field::from_values(std::move(grid), std::move(vals));
}

}  // namespace fraclap
