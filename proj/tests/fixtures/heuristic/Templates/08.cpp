#include <iostream>
#include <vector>
#include <list>

⟦template <template <typename, typename> class Container, typename T>
std::size_t count_items(const Container<T, std::allocator<T>>& c) {
    return c.size();
}⟧

int main() {
    std::vector<int> v = {1, 2, 3};
    std::list<int> l = {4};
    std::cout << count_items(v) + count_items(l) << '\n';
}
