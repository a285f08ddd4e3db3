#pragma once

#include <complex>
#include <span>
#include <utility>
#include <vector>

#include "gsqg/grid.hpp"

namespace gsqg {

using Complex = std::complex<double>;

enum class DealiasRule { two_thirds, none };

/// Real scalar samples on the n x n collocation lattice, row-major in (x1, x2).
class RealField {
public:
    RealField() = default;
    explicit RealField(Grid grid) : grid_(std::move(grid)), values_(grid_.real_size(), 0.0) {}

    const Grid& grid() const { return grid_; }
    double& operator()(int i, int j) { return values_[static_cast<std::size_t>(i) * grid_.n() + j]; }
    double operator()(int i, int j) const { return values_[static_cast<std::size_t>(i) * grid_.n() + j]; }
    std::span<double> values() { return values_; }
    std::span<const double> values() const { return values_; }

    double max_abs() const;
    bool finite() const;

private:
    Grid grid_;
    std::vector<double> values_;
};

/// Hermitian-reduced Fourier coefficients of a real scalar field.
class SpectralField {
public:
    SpectralField() = default;
    explicit SpectralField(Grid grid) : grid_(std::move(grid)), coeffs_(grid_.spectral_size(), Complex{}) {}

    const Grid& grid() const { return grid_; }
    Complex& operator()(int row, int col) { return coeffs_[static_cast<std::size_t>(row) * grid_.cols() + col]; }
    Complex operator()(int row, int col) const { return coeffs_[static_cast<std::size_t>(row) * grid_.cols() + col]; }
    std::span<Complex> coeffs() { return coeffs_; }
    std::span<const Complex> coeffs() const { return coeffs_; }

    /// Coefficient at any integer frequency pair in {-n/2+1,...,n/2}^2,
    /// resolving conjugate mirrors for k2 < 0.
    Complex at(int k1, int k2) const;

    /// Sets theta_hat(k) = c and theta_hat(-k) = conj(c). Self-conjugate
    /// modes (k = -k mod n) take the real part of c.
    void set_pair(int k1, int k2, Complex c);

    double max_abs() const;
    bool finite() const;

    SpectralField& operator+=(const SpectralField& o);
    SpectralField& operator-=(const SpectralField& o);
    SpectralField& operator*=(double a);

private:
    Grid grid_;
    std::vector<Complex> coeffs_;
};

SpectralField operator+(SpectralField a, const SpectralField& b);
SpectralField operator-(SpectralField a, const SpectralField& b);
SpectralField operator*(double a, SpectralField f);

/// Two spectral velocity components, divergence-free mode-wise.
struct VelocityField {
    SpectralField u1;
    SpectralField u2;
};

/// theta_hat(k) = n^{-2} sum_x f(x) e^{-ik.x}; Hermitian symmetry enforced
/// exactly by conjugate-folding the self-conjugate columns.
SpectralField forward_transform(const RealField& f);

/// Exact inverse of forward_transform. Throws if the stored self-conjugate
/// columns violate Hermitian symmetry beyond 1e-10 relative.
RealField inverse_transform(const SpectralField& f);

/// Zeroes modes with max(|k1|,|k2|) > n/3 under two_thirds; identity under none.
SpectralField dealias(const SpectralField& f, DealiasRule rule);
void dealias_in_place(SpectralField& f, DealiasRule rule);

/// Spectral partial derivatives (i k_j multipliers, physical wavenumbers).
/// The Nyquist mode is zeroed along the differentiated axis so the output
/// stays Hermitian.
std::pair<SpectralField, SpectralField> gradient(const SpectralField& f);

/// (-d2 f, d1 f); divergence-free mode-wise by construction.
VelocityField perp_gradient(const SpectralField& f);

/// Multiplies each stored coefficient by table[idx] (a real radial symbol
/// sampled on the stored layout).
SpectralField apply_symbol_table(const SpectralField& f, std::span<const double> table);
void apply_symbol_table_in_place(SpectralField& f, std::span<const double> table);

/// Plancherel pairing: length^2 * sum_k conj(a_hat) b_hat over the full mode
/// set, consistent with the physical-space integral of a*b.
double l2_inner(const SpectralField& a, const SpectralField& b);

/// Conjugate-folds the self-conjugate columns (k2 = 0 and k2 = n/2) so the
/// represented field is exactly real.
void enforce_hermitian(SpectralField& f);

/// Max symmetry mismatch on the self-conjugate columns relative to the
/// largest coefficient magnitude (0 for the zero field).
double hermitian_violation(const SpectralField& f);

/// sum over the full mode set of |theta_hat|^2 (spectral L^2 sum).
double spectral_l2sq(const SpectralField& f);

}  // namespace gsqg
