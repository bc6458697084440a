#include <iostream>
#include <string>

struct Named {
    std::string name;
};

struct Aged {
    int age = 0;
};

⟦struct Person : Named, Aged {
    void print() const { std::cout << name << " is " << age << '\n'; }
};⟧

int main() {
    Person p;
    p.name = "Lee";
    p.age = 30;
    p.print();
    return 0;
}
