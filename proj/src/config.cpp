#include "sr/config.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

namespace sr {

void PointConfiguration::validate(double tol) const {
    if (box.dim() != dim) throw DomainError("config: box/dim mismatch");
    if (coords.size() != size() * static_cast<size_t>(dim))
        throw DomainError("config: coords size mismatch");
    for (size_t i = 0; i < size(); ++i) {
        if (!box.contains(point(i), tol)) throw DomainError("config: point outside box");
        if (multiplicity[i] < 1) throw DomainError("config: multiplicity < 1");
    }
}

namespace {

uint64_t pack_cell(const std::vector<long>& c) {
    // 20 bits per axis, offset to keep coordinates positive; grids produced
    // here are bounded by the point cap long before this overflows
    uint64_t key = 0;
    for (long v : c) key = (key << 20) | static_cast<uint64_t>((v + (1L << 19)) & 0xFFFFF);
    return key;
}

}  // namespace

std::vector<std::pair<int, int>> neighbor_pairs(const PointConfiguration& config,
                                                double range) {
    if (!(range > 0.0)) throw DomainError("neighbor_pairs: range must be positive");
    const int d = config.dim;
    const size_t n = config.size();
    std::vector<std::pair<int, int>> out;
    if (n < 2) return out;

    std::unordered_map<uint64_t, std::vector<int>> cells;
    cells.reserve(n * 2);
    std::vector<long> cc(d);
    auto cell_of = [&](const double* p, std::vector<long>& c) {
        for (int k = 0; k < d; ++k)
            c[k] = static_cast<long>(std::floor((p[k] - config.box.lo[k]) / range));
    };
    for (size_t i = 0; i < n; ++i) {
        cell_of(config.point(i), cc);
        cells[pack_cell(cc)].push_back(static_cast<int>(i));
    }

    std::vector<long> nb(d);
    std::vector<long> off(d, -1);
    for (size_t i = 0; i < n; ++i) {
        cell_of(config.point(i), cc);
        std::fill(off.begin(), off.end(), -1);
        while (true) {
            for (int k = 0; k < d; ++k) nb[k] = cc[k] + off[k];
            auto it = cells.find(pack_cell(nb));
            if (it != cells.end()) {
                for (int j : it->second) {
                    if (j <= static_cast<int>(i)) continue;
                    if (config.distance(i, static_cast<size_t>(j)) < range)
                        out.emplace_back(static_cast<int>(i), j);
                }
            }
            int k = 0;
            while (k < d && off[k] == 1) off[k++] = -1;
            if (k == d) break;
            ++off[k];
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

double interaction_energy(const PointConfiguration& config, const CostFunction& cost,
                          double eps) {
    if (!(eps > 0.0)) throw DomainError("interaction_energy: eps must be positive");
    const size_t n = config.size();
    double total = 0.0;

    // cluster self-pairs: m(m-1) ordered pairs at distance zero
    for (size_t i = 0; i < n; ++i) {
        long m = config.multiplicity[i];
        if (m > 1) {
            double v = cost(0.0);
            if (v == kInf) return kInf;
            total += static_cast<double>(m * (m - 1)) * v;
        }
    }

    const bool use_cells = cost.finite_range() && n > 256;
    if (use_cells) {
        double cutoff = *cost.finite_range() * eps;
        for (auto [i, j] : neighbor_pairs(config, cutoff)) {
            double v = cost(config.distance(static_cast<size_t>(i), static_cast<size_t>(j)) / eps);
            if (v == kInf) return kInf;
            total += 2.0 * config.multiplicity[static_cast<size_t>(i)] *
                     config.multiplicity[static_cast<size_t>(j)] * v;
        }
    } else {
        for (size_t i = 0; i < n; ++i) {
            for (size_t j = i + 1; j < n; ++j) {
                double v = cost(config.distance(i, j) / eps);
                if (v == kInf) return kInf;
                if (v != 0.0)
                    total += 2.0 * config.multiplicity[i] * config.multiplicity[j] * v;
            }
        }
    }
    return total;
}

double scaled_energy(const ScaledMeasure& measure, const CostFunction& cost) {
    if (measure.config.size() == 0) return 0.0;
    double xi = interaction_energy(measure.config, cost, measure.eps);
    return mul0(std::pow(measure.eps, measure.config.dim), xi);
}

DensityField bin_density(const ScaledMeasure& measure,
                         const std::vector<int>& cells_per_dim) {
    const auto& cfg = measure.config;
    const int d = cfg.dim;
    if (static_cast<int>(cells_per_dim.size()) != d)
        throw DomainError("bin_density: grid dim mismatch");
    DensityField field;
    field.box = cfg.box;
    field.cells_per_dim = cells_per_dim;
    size_t ncells = 1;
    for (int c : cells_per_dim) {
        if (c < 1) throw DomainError("bin_density: cells must be >= 1");
        ncells *= static_cast<size_t>(c);
    }
    field.values.assign(ncells, 0.0);
    const double point_mass = std::pow(measure.eps, d);
    const double cellvol = field.cell_volume();

    for (size_t i = 0; i < cfg.size(); ++i) {
        const double* p = cfg.point(i);
        size_t idx = 0;
        bool inside = true;
        for (int k = 0; k < d; ++k) {
            double u = (p[k] - cfg.box.lo[k]) / cfg.box.edge[k];
            long c = static_cast<long>(std::floor(u * cells_per_dim[k]));
            if (c == cells_per_dim[k] && u <= 1.0 + 1e-12) c = cells_per_dim[k] - 1;
            if (c < 0 || c >= cells_per_dim[k]) {
                inside = false;
                break;
            }
            idx = idx * static_cast<size_t>(cells_per_dim[k]) + static_cast<size_t>(c);
        }
        double mass = point_mass * cfg.multiplicity[i];
        if (inside)
            field.values[idx] += mass / cellvol;
        else
            field.clipped_mass += mass;
    }
    return field;
}

}  // namespace sr
