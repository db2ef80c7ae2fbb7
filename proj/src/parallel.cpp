#include "dlab/parallel.hpp"

#include <cstdlib>
#include <string>

namespace dlab {

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("DEDEKIND_LAB_THREADS")) {
        try {
            int n = std::stoi(env);
            if (n > 0) return n;
        } catch (...) {
            // fall through to hardware default
        }
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

} // namespace dlab
