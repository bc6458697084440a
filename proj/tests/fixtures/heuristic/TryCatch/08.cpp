#include <iostream>
#include <map>
#include <string>

// try { not real code } catch in a comment
int lookup(const std::map<std::string, int>& m, const std::string& key) {
    ⟦try {
        return m.at(key);
    } catch (const std::out_of_range&) {
        std::cerr << "missing key \"try\" or other: " << key << '\n';
    }⟧
    return 0;
}

int main() {
    std::map<std::string, int> m{{"a", 1}};
    std::cout << lookup(m, "a") + lookup(m, "b") << '\n';
}
