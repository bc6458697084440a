#include <iostream>

class Shape {
public:
    virtual ~Shape() = default;
    virtual double area() const = 0;
};

⟦class Square : public Shape {
public:
    explicit Square(double s) : side_(s) {}
    double area() const override { return side_ * side_; }

private:
    double side_;
};⟧

int main() {
    Square sq(3);
    const Shape& s = sq;
    std::cout << s.area() << '\n';
}
