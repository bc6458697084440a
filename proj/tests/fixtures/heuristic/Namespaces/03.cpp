#include <string>
#include <iostream>

⟦namespace app::config {

struct Options {
    std::string name = "demo";
    int level = 1;
};

Options defaults() { return {}; }

}⟧  // namespace app::config

int main() {
    auto o = app::config::defaults();
    std::cout << o.name << ' ' << o.level << '\n';
}
