// Command-line front end; filled in alongside the library.
#include <cstdio>

int main() {
    std::puts("xmjacobi: not yet wired");
    return 2;
}
