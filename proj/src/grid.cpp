#include "gsqg/grid.hpp"

#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

#include <fftw3.h>

#include "grid_state.hpp"

namespace gsqg {

namespace detail {

std::mutex& fftw_planner_mutex() {
    static std::mutex m;
    return m;
}

GridState::GridState(int n) : n(n) {
    // Plans are created once on throwaway buffers and executed new-array
    // style afterwards. FFTW_UNALIGNED keeps them valid for any buffer;
    // FFTW_ESTIMATE keeps plan selection deterministic across runs.
    std::lock_guard<std::mutex> lock(fftw_planner_mutex());
    const std::size_t nreal = static_cast<std::size_t>(n) * n;
    const std::size_t nspec = static_cast<std::size_t>(n) * (n / 2 + 1);
    std::vector<double> rbuf(nreal, 0.0);
    std::vector<fftw_complex> cbuf(nspec);
    plan_r2c = fftw_plan_dft_r2c_2d(n, n, rbuf.data(), cbuf.data(), FFTW_ESTIMATE | FFTW_UNALIGNED);
    plan_c2r = fftw_plan_dft_c2r_2d(n, n, cbuf.data(), rbuf.data(), FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (!plan_r2c || !plan_c2r) throw std::runtime_error("fftw plan creation failed");
}

GridState::~GridState() {
    std::lock_guard<std::mutex> lock(fftw_planner_mutex());
    if (plan_r2c) fftw_destroy_plan(plan_r2c);
    if (plan_c2r) fftw_destroy_plan(plan_c2r);
}

std::shared_ptr<const std::vector<double>> GridState::cached_table(
    const std::string& key, const std::function<std::vector<double>()>& fill) {
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto it = symbol_cache.find(key);
    if (it != symbol_cache.end()) return it->second;
    auto table = std::make_shared<const std::vector<double>>(fill());
    symbol_cache.emplace(key, table);
    return table;
}

}  // namespace detail

Grid::Grid(int n, double length, double shift)
    : n_(n), length_(length), shift_(shift), state_(std::make_shared<detail::GridState>(n)) {}

Grid make_grid(int n, double length, double shift) {
    if (n % 2 != 0) throw std::invalid_argument("n must be even");
    if (n < 8) throw std::invalid_argument("n must be >= 8");
    if (!(length > 0.0)) throw std::invalid_argument("length must be positive");
    if (!(shift >= 1.0)) throw std::invalid_argument("shift must be >= 1");
    return Grid(n, length, shift);
}

}  // namespace gsqg
