#include <string>
#include <iostream>

struct Token {
    std::string text;
    int line = 0;

    ⟦friend bool operator==(const Token& a, const Token& b) {
        return a.text == b.text && a.line == b.line;
    }⟧
    ⟦friend bool operator!=(const Token& a, const Token& b) { return !(a == b); }⟧
};

int main() {
    Token a{"x", 1}, b{"x", 2};
    std::cout << (a == b) << (a != b) << '\n';
}
