#include "sumset/caps.hpp"
#include "sumset/errors.hpp"

#include <atomic>

namespace sumset {

namespace {
std::atomic<std::uint64_t> g_cells{Caps{}.cells};
std::atomic<std::uint64_t> g_work{Caps{}.work};
std::atomic<unsigned> g_threads{1};
} // namespace

Caps caps() noexcept { return Caps{g_cells.load(), g_work.load()}; }

void set_caps(const Caps& c) noexcept {
    g_cells.store(c.cells);
    g_work.store(c.work);
}

void require_cells(std::uint64_t requested, const char* what) {
    const auto cap = g_cells.load();
    if (requested > cap) throw ResourceCapError(std::string(what) + ": enumeration cap exceeded", cap, requested);
}

void require_work(std::uint64_t requested, const char* what) {
    const auto cap = g_work.load();
    if (requested > cap) throw ResourceCapError(std::string(what) + ": work cap exceeded", cap, requested);
}

unsigned worker_threads() noexcept { return g_threads.load(); }

void set_worker_threads(unsigned n) noexcept { g_threads.store(n == 0 ? 1 : n); }

} // namespace sumset
