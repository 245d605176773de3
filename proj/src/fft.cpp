#include "nsalpha/fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace nsalpha::fft {
namespace {

std::mutex plan_mutex;  // fftw plan creation is not thread-safe

struct Workspace {
    int n = 0;
    fftw_complex* buf = nullptr;
    fftw_plan fwd = nullptr;
    fftw_plan inv = nullptr;

    explicit Workspace(int size) : n(size) {
        std::lock_guard<std::mutex> lock(plan_mutex);
        buf = fftw_alloc_complex(static_cast<size_t>(n) * n);
        if (!buf) throw std::bad_alloc();
        fwd = fftw_plan_dft_2d(n, n, buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
        inv = fftw_plan_dft_2d(n, n, buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    ~Workspace() {
        std::lock_guard<std::mutex> lock(plan_mutex);
        if (fwd) fftw_destroy_plan(fwd);
        if (inv) fftw_destroy_plan(inv);
        if (buf) fftw_free(buf);
    }
    Workspace(const Workspace&) = delete;
    Workspace& operator=(const Workspace&) = delete;
};

Workspace& workspace_for(int n) {
    thread_local std::map<int, std::unique_ptr<Workspace>> cache;
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, std::make_unique<Workspace>(n)).first;
    return *it->second;
}

void run(std::vector<std::complex<double>>& data, int n, bool forward) {
    if (data.size() != static_cast<size_t>(n) * n)
        throw std::invalid_argument("fft: buffer size does not match grid");
    Workspace& ws = workspace_for(n);
    std::memcpy(ws.buf, data.data(), sizeof(fftw_complex) * data.size());
    fftw_execute(forward ? ws.fwd : ws.inv);
    std::memcpy(data.data(), ws.buf, sizeof(fftw_complex) * data.size());
}

}  // namespace

void forward2d(std::vector<std::complex<double>>& data, int n) { run(data, n, true); }
void inverse2d(std::vector<std::complex<double>>& data, int n) { run(data, n, false); }

}  // namespace nsalpha::fft
