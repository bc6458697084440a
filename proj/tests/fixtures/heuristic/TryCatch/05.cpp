#include <functional>
#include <iostream>
#include <string>

int main() {
    auto safe = [](const std::function<int()>& f) {
        ⟦try {
            return f();
        } catch (...) {
            return -1;
        }⟧
    };
    std::cout << safe([] { return std::stoi("7"); }) << ' '
              << safe([] { return std::stoi("seven"); }) << '\n';
}
