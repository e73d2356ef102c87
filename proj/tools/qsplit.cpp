#include <cstdio>
int main() { std::puts("qsplit placeholder"); return 0; }
