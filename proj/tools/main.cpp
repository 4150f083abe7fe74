#include <cstdio>

int main() {
    std::fprintf(stderr, "qweyl: command interface not wired up yet\n");
    return 2;
}
