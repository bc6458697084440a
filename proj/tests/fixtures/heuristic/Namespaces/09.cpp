#include <iostream>
#include <chrono>

⟦using namespace std::chrono;⟧

⟦namespace timing {
long ms_between(steady_clock::time_point a, steady_clock::time_point b) {
    return duration_cast<milliseconds>(b - a).count();
}
}⟧

int main() {
    auto t0 = steady_clock::now();
    auto t1 = steady_clock::now();
    std::cout << timing::ms_between(t0, t1) << '\n';
}
