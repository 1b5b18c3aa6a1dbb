#pragma once

#include <cstdint>

namespace sumset {

struct Caps {
    std::uint64_t cells = 100'000'000;      // cells in a single enumerated window
    std::uint64_t work = 20'000'000'000ULL; // elementary steps in a product / search
};

Caps caps() noexcept;
void set_caps(const Caps& c) noexcept;

// Throws ResourceCapError when `requested` exceeds the cell cap.
void require_cells(std::uint64_t requested, const char* what);
void require_work(std::uint64_t requested, const char* what);

// Worker threads used by parallel searches (default 1).
unsigned worker_threads() noexcept;
void set_worker_threads(unsigned n) noexcept;

} // namespace sumset
