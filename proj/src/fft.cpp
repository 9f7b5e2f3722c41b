#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <vector>

namespace asdflow::detail {
namespace {

struct PlanPair {
    fftw_plan r2c = nullptr;
    fftw_plan c2r = nullptr;
};

// Plans live for the whole process; FFTW's planner is not thread-safe, execution is.
const PlanPair& plans_for(std::size_t n) {
    static std::mutex mtx;
    static std::map<std::size_t, PlanPair> cache;
    std::lock_guard lock(mtx);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    std::vector<double> re(n);
    std::vector<std::complex<double>> co(n / 2 + 1);
    auto* cp = reinterpret_cast<fftw_complex*>(co.data());
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    PlanPair p;
    p.r2c = fftw_plan_dft_r2c_1d(static_cast<int>(n), re.data(), cp, flags);
    p.c2r = fftw_plan_dft_c2r_1d(static_cast<int>(n), cp, re.data(), flags);
    return cache.emplace(n, p).first->second;
}

}  // namespace

void forward_fft(std::span<const double> in, std::span<std::complex<double>> out) {
    const auto& p = plans_for(in.size());
    // r2c does not modify its input.
    fftw_execute_dft_r2c(p.r2c, const_cast<double*>(in.data()),
                         reinterpret_cast<fftw_complex*>(out.data()));
}

void inverse_fft(std::span<std::complex<double>> in, std::span<double> out) {
    const auto& p = plans_for(out.size());
    fftw_execute_dft_c2r(p.c2r, reinterpret_cast<fftw_complex*>(in.data()), out.data());
}

}  // namespace asdflow::detail
