#include <iostream>

⟦template <typename T>
constexpr T pi = T(3.1415926535897932385L);⟧

⟦template <class T>
T area(T r) { return pi<T> * r * r; }⟧

int main() {
    std::cout << area(2.0) << ' ' << area<float>(1.0f) << '\n';
}
