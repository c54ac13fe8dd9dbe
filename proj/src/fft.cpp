#include "kdv2/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>

#include "kdv2/errors.hpp"

namespace kdv2::fft {

namespace {

// Plan creation is not thread-safe; execution via fftw_execute_dft is.
// Plans are cached per (size, sign) and created UNALIGNED so they can run
// on any caller buffer.
std::mutex plan_mutex;
std::map<std::pair<std::size_t, int>, fftw_plan> plan_cache;

fftw_plan plan_for(std::size_t n, int sign) {
    std::lock_guard<std::mutex> lock(plan_mutex);
    auto key = std::make_pair(n, sign);
    auto it = plan_cache.find(key);
    if (it != plan_cache.end()) return it->second;
    std::vector<cplx> dummy(n);
    fftw_plan p = fftw_plan_dft_1d(
        int(n), reinterpret_cast<fftw_complex*>(dummy.data()),
        reinterpret_cast<fftw_complex*>(dummy.data()), sign,
        FFTW_ESTIMATE | FFTW_UNALIGNED);
    plan_cache.emplace(key, p);
    return p;
}

void transform(std::vector<cplx>& data, int sign) {
    if (data.empty()) return;
    fftw_plan p = plan_for(data.size(), sign);
    auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
    fftw_execute_dft(p, ptr, ptr);
}

} // namespace

void forward(std::vector<cplx>& data) { transform(data, FFTW_FORWARD); }

void inverse(std::vector<cplx>& data) {
    transform(data, FFTW_BACKWARD);
    const double scale = 1.0 / double(data.size());
    for (auto& v : data) v *= scale;
}

namespace {

void transform2d(std::vector<cplx>& data, std::size_t nr, std::size_t nc, int sign) {
    require(data.size() == nr * nc, ErrorCode::GridMismatch, "2d fft: size mismatch");
    fftw_plan prow = plan_for(nc, sign);
    for (std::size_t r = 0; r < nr; ++r) {
        auto* ptr = reinterpret_cast<fftw_complex*>(data.data() + r * nc);
        fftw_execute_dft(prow, ptr, ptr);
    }
    fftw_plan pcol = plan_for(nr, sign);
    std::vector<cplx> col(nr);
    for (std::size_t c = 0; c < nc; ++c) {
        for (std::size_t r = 0; r < nr; ++r) col[r] = data[r * nc + c];
        auto* ptr = reinterpret_cast<fftw_complex*>(col.data());
        fftw_execute_dft(pcol, ptr, ptr);
        for (std::size_t r = 0; r < nr; ++r) data[r * nc + c] = col[r];
    }
}

} // namespace

void forward2d(std::vector<cplx>& data, std::size_t nr, std::size_t nc) {
    transform2d(data, nr, nc, FFTW_FORWARD);
}

void inverse2d(std::vector<cplx>& data, std::size_t nr, std::size_t nc) {
    transform2d(data, nr, nc, FFTW_BACKWARD);
    const double scale = 1.0 / double(nr * nc);
    for (auto& v : data) v *= scale;
}

} // namespace kdv2::fft
