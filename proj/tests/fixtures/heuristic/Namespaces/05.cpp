#include <filesystem>
#include <iostream>

⟦namespace fs = std::filesystem;⟧

int main(int argc, char** argv) {
    fs::path p = argc > 1 ? argv[1] : ".";
    std::cout << p.filename().string() << '\n';
    return 0;
}
