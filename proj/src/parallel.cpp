#include "unipred/parallel.hpp"

namespace unipred {

namespace {
std::atomic<unsigned> g_default_threads{1};
}

unsigned default_threads() noexcept { return g_default_threads.load(); }

void set_default_threads(unsigned n) noexcept { g_default_threads.store(n == 0 ? 1 : n); }

}  // namespace unipred
