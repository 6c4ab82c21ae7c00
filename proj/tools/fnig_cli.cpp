#include <cstdio>
int main() { std::puts("fnig cli placeholder"); return 0; }
