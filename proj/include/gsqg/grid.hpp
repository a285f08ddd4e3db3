#pragma once

#include <cmath>
#include <cstddef>
#include <memory>

namespace gsqg {

namespace detail {
struct GridState;
}

/// Square periodic collocation grid with n modes per axis.
///
/// Stored spectral layout is Hermitian-reduced, row-major n x (n/2+1):
/// row i carries the integer frequency k1 = i for i <= n/2, i-n otherwise;
/// column j carries k2 = j in {0,...,n/2}. Physical wavenumbers are
/// (2*pi/length) times the integer frequencies.
class Grid {
public:
    Grid() = default;
    Grid(int n, double length, double shift);

    int n() const { return n_; }
    double length() const { return length_; }
    double shift() const { return shift_; }

    int rows() const { return n_; }
    int cols() const { return n_ / 2 + 1; }
    std::size_t spectral_size() const { return static_cast<std::size_t>(n_) * (n_ / 2 + 1); }
    std::size_t real_size() const { return static_cast<std::size_t>(n_) * n_; }

    /// Integer frequency along axis 1 for stored row i.
    int k1(int row) const { return row <= n_ / 2 ? row : row - n_; }
    /// Integer frequency along axis 2 for stored column j.
    int k2(int col) const { return col; }
    /// Stored row holding integer frequency k1.
    int row_of_k1(int k1v) const { return k1v >= 0 ? k1v : k1v + n_; }

    double freq_scale() const { return 2.0 * pi() / length_; }
    /// Physical |k| of the stored mode (row, col).
    double kmag(int row, int col) const {
        const double a = k1(row), b = k2(col);
        return freq_scale() * std::sqrt(a * a + b * b);
    }
    /// Multiplicity of a stored mode in sums over the full mode set.
    double mode_weight(int col) const { return (col == 0 || col == n_ / 2) ? 1.0 : 2.0; }

    /// Collocation coordinate along either axis.
    double coord(int idx) const { return length_ * idx / n_; }

    bool valid() const { return n_ > 0; }
    bool same_as(const Grid& other) const {
        return n_ == other.n_ && length_ == other.length_ && shift_ == other.shift_;
    }

    detail::GridState& state() const { return *state_; }

    static double pi() { return 3.14159265358979323846; }

private:
    int n_ = 0;
    double length_ = 0.0;
    double shift_ = 0.0;
    std::shared_ptr<detail::GridState> state_;
};

/// Builds a grid; rejects odd or tiny n, nonpositive length, shift < 1.
Grid make_grid(int n, double length = 2.0 * Grid::pi(), double shift = 10.0);

}  // namespace gsqg
