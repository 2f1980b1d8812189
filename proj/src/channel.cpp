#include "wrl/channel.hpp"

#include "wrl/common.hpp"

namespace wrl {

WiretapChannel::WiretapChannel(std::size_t nx, std::size_t ny, std::size_t nz,
                               std::vector<double> kernel, std::string name)
    : nx_(nx), ny_(ny), nz_(nz), name_(std::move(name)) {
    require(nx_ >= 1 && ny_ >= 1 && nz_ >= 1, "alphabet sizes must be >= 1");
    require(kernel.size() == nx_ * ny_ * nz_, "kernel size mismatch");
    rows_.resize(nx_);
    wy_.resize(nx_);
    wz_.resize(nx_);
    for (std::size_t x = 0; x < nx_; ++x) {
        std::vector<double> row(kernel.begin() + x * ny_ * nz_,
                                kernel.begin() + (x + 1) * ny_ * nz_);
        normalize_exact(row);
        std::vector<double> my(ny_, 0.0), mz(nz_, 0.0);
        for (std::size_t y = 0; y < ny_; ++y) {
            for (std::size_t z = 0; z < nz_; ++z) {
                my[y] += row[y * nz_ + z];
                mz[z] += row[y * nz_ + z];
            }
        }
        normalize_exact(my);
        normalize_exact(mz);
        rows_[x] = std::move(row);
        wy_[x] = std::move(my);
        wz_[x] = std::move(mz);
    }
}

WiretapChannel WiretapChannel::from_marginals(
    const std::vector<std::vector<double>>& w_y,
    const std::vector<std::vector<double>>& w_z, std::string name) {
    require(!w_y.empty() && w_y.size() == w_z.size(), "marginal row counts differ");
    const std::size_t nx = w_y.size();
    const std::size_t ny = w_y[0].size();
    const std::size_t nz = w_z[0].size();
    std::vector<double> kernel(nx * ny * nz);
    for (std::size_t x = 0; x < nx; ++x) {
        require(w_y[x].size() == ny && w_z[x].size() == nz, "ragged marginal rows");
        for (std::size_t y = 0; y < ny; ++y) {
            for (std::size_t z = 0; z < nz; ++z) {
                kernel[(x * ny + y) * nz + z] = w_y[x][y] * w_z[x][z];
            }
        }
    }
    return WiretapChannel(nx, ny, nz, std::move(kernel), std::move(name));
}

WiretapChannel WiretapChannel::bsc_pair(double py, double pz) {
    require(py >= 0.0 && py <= 1.0 && pz >= 0.0 && pz <= 1.0,
            "crossover probabilities must lie in [0,1]");
    const std::vector<std::vector<double>> wy = {{1.0 - py, py}, {py, 1.0 - py}};
    const std::vector<std::vector<double>> wz = {{1.0 - pz, pz}, {pz, 1.0 - pz}};
    return from_marginals(wy, wz, "bsc_pair");
}

}  // namespace wrl
