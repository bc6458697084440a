#include <algorithm>
#include <iostream>
#include <vector>

int main() {
    ⟦struct ByLength {
        bool operator()(const std::string& a, const std::string& b) const {
            return a.size() < b.size();
        }
    };⟧

    std::vector<std::string> words = {"pear", "fig", "banana"};
    std::sort(words.begin(), words.end(), ByLength{});
    for (const auto& w : words) std::cout << w << ' ';
    std::cout << '\n';
    return 0;
}
