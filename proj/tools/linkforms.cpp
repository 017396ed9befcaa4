#include <cstdio>

int main()
{
    std::puts("linkforms: placeholder");
    return 0;
}
