#include <cstdio>
int main() { std::puts("ellsum cli placeholder"); return 0; }
