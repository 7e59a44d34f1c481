// Placeholder acceptance runner; replaced by the full suite once the
// simulator is calibrated.
#include <cstdio>
int main() {
    std::puts("acceptance: not yet implemented");
    return 1;
}
