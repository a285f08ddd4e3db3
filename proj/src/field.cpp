#include "gsqg/field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fftw3.h>

#include "grid_state.hpp"

namespace gsqg {

namespace {

void require_grid(const Grid& g) {
    if (!g.valid()) throw std::invalid_argument("field has no grid");
}

void require_same_grid(const Grid& a, const Grid& b) {
    if (!a.same_as(b)) throw std::invalid_argument("grid mismatch");
}

}  // namespace

double RealField::max_abs() const {
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::abs(v));
    return m;
}

bool RealField::finite() const {
    for (double v : values_)
        if (!std::isfinite(v)) return false;
    return true;
}

namespace {

void require_mode_range(int k1, int k2, int n) {
    if (k1 < -n / 2 + 1 || k1 > n / 2 || k2 < -n / 2 + 1 || k2 > n / 2)
        throw std::out_of_range("mode outside the grid's frequency range");
}

}  // namespace

Complex SpectralField::at(int k1, int k2) const {
    const int n = grid_.n();
    require_mode_range(k1, k2, n);
    if (k2 >= 0) return (*this)(grid_.row_of_k1(k1), k2);
    // stored mirror: theta_hat(k) = conj(theta_hat(-k))
    int mk1 = -k1;
    if (mk1 == -n / 2) mk1 = n / 2;  // Nyquist self-alias
    return std::conj((*this)(grid_.row_of_k1(mk1), -k2));
}

void SpectralField::set_pair(int k1, int k2, Complex c) {
    const int n = grid_.n();
    require_mode_range(k1, k2, n);
    if (k2 < 0) {
        k1 = (k1 == n / 2) ? n / 2 : -k1;
        k2 = -k2;
        c = std::conj(c);
    }
    const int row = grid_.row_of_k1(k1);
    if (k2 == 0 || k2 == n / 2) {
        int mrow = grid_.row_of_k1(k1 == n / 2 ? n / 2 : -k1);
        if (mrow == row) {
            (*this)(row, k2) = Complex(c.real(), 0.0);
        } else {
            (*this)(row, k2) = c;
            (*this)(mrow, k2) = std::conj(c);
        }
    } else {
        (*this)(row, k2) = c;
    }
}

double SpectralField::max_abs() const {
    double m = 0.0;
    for (const Complex& v : coeffs_) m = std::max(m, std::abs(v));
    return m;
}

bool SpectralField::finite() const {
    for (const Complex& v : coeffs_)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    return true;
}

SpectralField& SpectralField::operator+=(const SpectralField& o) {
    require_same_grid(grid_, o.grid_);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& o) {
    require_same_grid(grid_, o.grid_);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    return *this;
}

SpectralField& SpectralField::operator*=(double a) {
    for (Complex& v : coeffs_) v *= a;
    return *this;
}

SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
SpectralField operator*(double a, SpectralField f) { return f *= a; }

void enforce_hermitian(SpectralField& f) {
    const Grid& g = f.grid();
    const int n = g.n();
    const int half = n / 2;
    for (int j : {0, half}) {
        for (int i = 1; i < half; ++i) {
            const Complex v = 0.5 * (f(i, j) + std::conj(f(n - i, j)));
            f(i, j) = v;
            f(n - i, j) = std::conj(v);
        }
        f(0, j) = Complex(f(0, j).real(), 0.0);
        f(half, j) = Complex(f(half, j).real(), 0.0);
    }
}

double hermitian_violation(const SpectralField& f) {
    const Grid& g = f.grid();
    const int n = g.n();
    const int half = n / 2;
    const double scale = f.max_abs();
    if (scale == 0.0) return 0.0;
    double worst = 0.0;
    for (int j : {0, half}) {
        for (int i = 1; i < half; ++i)
            worst = std::max(worst, std::abs(f(i, j) - std::conj(f(n - i, j))));
        worst = std::max(worst, std::abs(f(0, j).imag()));
        worst = std::max(worst, std::abs(f(half, j).imag()));
    }
    return worst / scale;
}

SpectralField forward_transform(const RealField& f) {
    require_grid(f.grid());
    if (!f.finite()) throw std::invalid_argument("forward_transform: non-finite input");
    const Grid& g = f.grid();
    SpectralField out(g);
    std::vector<double> scratch(f.values().begin(), f.values().end());
    fftw_execute_dft_r2c(g.state().plan_r2c, scratch.data(),
                         reinterpret_cast<fftw_complex*>(out.coeffs().data()));
    const double norm = 1.0 / (static_cast<double>(g.n()) * g.n());
    for (Complex& c : out.coeffs()) c *= norm;
    enforce_hermitian(out);
    return out;
}

RealField inverse_transform(const SpectralField& f) {
    require_grid(f.grid());
    const Grid& g = f.grid();
    if (!f.finite()) throw std::invalid_argument("inverse_transform: non-finite input");
    if (hermitian_violation(f) > 1.0e-10)
        throw std::runtime_error("inverse_transform: Hermitian symmetry violated (corrupted state)");
    RealField out(g);
    // c2r destroys its input, so transform a copy.
    std::vector<Complex> scratch(f.coeffs().begin(), f.coeffs().end());
    fftw_execute_dft_c2r(g.state().plan_c2r, reinterpret_cast<fftw_complex*>(scratch.data()),
                         out.values().data());
    return out;
}

void dealias_in_place(SpectralField& f, DealiasRule rule) {
    if (rule == DealiasRule::none) return;
    const Grid& g = f.grid();
    const int n = g.n();
    for (int i = 0; i < g.rows(); ++i) {
        const int a1 = std::abs(g.k1(i));
        for (int j = 0; j < g.cols(); ++j) {
            if (3 * std::max(a1, j) > n) f(i, j) = Complex{};
        }
    }
}

SpectralField dealias(const SpectralField& f, DealiasRule rule) {
    SpectralField out = f;
    dealias_in_place(out, rule);
    return out;
}

namespace {

// One spectral derivative: factor i * kf * k_axis per mode, Nyquist zeroed
// along the differentiated axis (its odd derivative has no Hermitian
// representative).
SpectralField derivative(const SpectralField& f, int axis) {
    const Grid& g = f.grid();
    const int half = g.n() / 2;
    const double kf = g.freq_scale();
    SpectralField out(g);
    for (int i = 0; i < g.rows(); ++i) {
        const int kk1 = g.k1(i);
        for (int j = 0; j < g.cols(); ++j) {
            const int ka = (axis == 0) ? kk1 : j;
            if (ka == half) continue;
            const double w = kf * ka;
            const Complex v = f(i, j);
            out(i, j) = Complex(-w * v.imag(), w * v.real());
        }
    }
    return out;
}

}  // namespace

std::pair<SpectralField, SpectralField> gradient(const SpectralField& f) {
    require_grid(f.grid());
    return {derivative(f, 0), derivative(f, 1)};
}

VelocityField perp_gradient(const SpectralField& f) {
    require_grid(f.grid());
    VelocityField v;
    v.u1 = derivative(f, 1);
    v.u1 *= -1.0;
    v.u2 = derivative(f, 0);
    // Zero both components on the whole Nyquist plane: a mode with one
    // differentiable axis and one Nyquist axis would otherwise carry an
    // unpaired contribution and break k . u_hat = 0.
    const Grid& g = f.grid();
    const int half = g.n() / 2;
    for (int j = 0; j < g.cols(); ++j) v.u1(half, j) = v.u2(half, j) = Complex{};
    for (int i = 0; i < g.rows(); ++i) v.u1(i, half) = v.u2(i, half) = Complex{};
    return v;
}

SpectralField apply_symbol_table(const SpectralField& f, std::span<const double> table) {
    SpectralField out = f;
    apply_symbol_table_in_place(out, table);
    return out;
}

void apply_symbol_table_in_place(SpectralField& f, std::span<const double> table) {
    if (table.size() != f.coeffs().size())
        throw std::invalid_argument("apply_symbol_table: table/grid size mismatch");
    auto c = f.coeffs();
    for (std::size_t i = 0; i < c.size(); ++i) c[i] *= table[i];
}

double l2_inner(const SpectralField& a, const SpectralField& b) {
    require_same_grid(a.grid(), b.grid());
    const Grid& g = a.grid();
    double sum = 0.0;
    for (int i = 0; i < g.rows(); ++i)
        for (int j = 0; j < g.cols(); ++j) {
            const Complex p = std::conj(a(i, j)) * b(i, j);
            sum += g.mode_weight(j) * p.real();
        }
    return g.length() * g.length() * sum;
}

double spectral_l2sq(const SpectralField& f) {
    const Grid& g = f.grid();
    double sum = 0.0;
    for (int i = 0; i < g.rows(); ++i)
        for (int j = 0; j < g.cols(); ++j) sum += g.mode_weight(j) * std::norm(f(i, j));
    return sum;
}

}  // namespace gsqg
