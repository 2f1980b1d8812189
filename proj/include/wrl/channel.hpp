#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "wrl/distribution.hpp"

namespace wrl {

// Discrete memoryless wiretap channel W(y,z|x) over finite alphabets.
// Joint kernel rows are indexed y-major, z-minor. Marginal kernels toward
// the legitimate receiver (Y) and the eavesdropper (Z) are precomputed.
class WiretapChannel {
public:
    // kernel has nx rows of ny*nz entries each.
    WiretapChannel(std::size_t nx, std::size_t ny, std::size_t nz,
                   std::vector<double> kernel, std::string name = "");

    // Conditionally independent coupling with the given marginals.
    static WiretapChannel from_marginals(const std::vector<std::vector<double>>& w_y,
                                         const std::vector<std::vector<double>>& w_z,
                                         std::string name = "");

    // Main channel BSC(py), eavesdropper channel BSC(pz).
    static WiretapChannel bsc_pair(double py, double pz);

    std::size_t nx() const { return nx_; }
    std::size_t ny() const { return ny_; }
    std::size_t nz() const { return nz_; }
    const std::string& name() const { return name_; }

    double joint(std::size_t x, std::size_t y, std::size_t z) const {
        return rows_[x][y * nz_ + z];
    }
    const std::vector<double>& joint_row(std::size_t x) const { return rows_[x]; }
    const std::vector<double>& y_given_x(std::size_t x) const { return wy_[x]; }
    const std::vector<double>& z_given_x(std::size_t x) const { return wz_[x]; }
    const std::vector<std::vector<double>>& y_kernel() const { return wy_; }
    const std::vector<std::vector<double>>& z_kernel() const { return wz_; }

private:
    std::size_t nx_, ny_, nz_;
    std::string name_;
    std::vector<std::vector<double>> rows_;  // joint, normalized per row
    std::vector<std::vector<double>> wy_;    // marginal toward Y, normalized
    std::vector<std::vector<double>> wz_;    // marginal toward Z, normalized
};

}  // namespace wrl
