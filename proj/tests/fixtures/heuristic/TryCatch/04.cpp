#include <iostream>
#include <stdexcept>

void risky(int level) {
    if (level > 2) throw std::runtime_error("too deep");
}

int main() {
    ⟦try {
        risky(1);
        ⟦try {
            risky(3);
        } catch (const std::runtime_error& inner) {
            std::cout << "inner: " << inner.what() << '\n';
            throw;
        }⟧
    } catch (const std::exception& outer) {
        std::cout << "outer: " << outer.what() << '\n';
    }⟧
    return 0;
}
